#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "skewrad/derivation.hpp"
#include "skewrad/finring.hpp"
#include "skewrad/identities.hpp"
#include "skewrad/skewpoly.hpp"

// Text formats: ring files, element literals, polynomials and identities.
//
// Ring file (line oriented, '#' starts a comment, blank lines ignored):
//
//   ring.kind = zn | matrix | triangular | truncpoly | product | structure
//   ring.params = 2, 2
//   ring.factor = zn:2            # product only, two or more
//   ring.unit = g1                # structure only
//   ring.labels = e, t            # optional generator aliases
//   [structure]
//   g2*g2 = 2g1 + g3
//   [derivation]
//   zero | inner = E12 | D(g2) = g1
//
// An optional "[ring]" header may precede the ring.* keys.

namespace skewrad {

/// Unresolved element text: a signed sum of "<int><generator>" terms.
struct ElementLiteral {
  struct Term {
    Int coefficient = 1;
    std::string name;  // empty for a bare integer (only 0 is accepted)
    int column = 0;
  };
  std::vector<Term> terms;
  int line = 0;
  int column = 0;
};

struct FactorSpec {
  std::string kind;
  std::vector<Int> params;
  int line = 0;
};

struct StructureEntry {
  std::string left;
  std::string right;
  ElementLiteral value;
  int line = 0;
  int column = 0;
};

struct RingSpec {
  std::string kind;
  std::vector<Int> params;
  std::vector<FactorSpec> factors;
  std::vector<StructureEntry> structure;
  std::optional<ElementLiteral> unit;
  std::vector<std::string> labels;
  int line = 0;
};

struct DerivationSpec {
  enum class Kind { Zero, Inner, Images };
  Kind kind = Kind::Zero;
  std::optional<ElementLiteral> inner;
  std::vector<std::pair<std::string, ElementLiteral>> images;
  int line = 0;
};

struct RingFile {
  RingSpec ring;
  std::optional<DerivationSpec> derivation;
};

/// Syntax only; generator names are resolved by load_ringfile. Every failure
/// is a ParseError carrying line and column.
RingFile parse_ringfile(std::string_view text);

struct LoadedRing {
  RingPtr ring;
  DerivationPtr derivation;  // the zero derivation when the file has none
};

/// Builds the ring and derivation. Unknown generators become ParseErrors at
/// the literal's position; structural problems surface as the builder's Error.
LoadedRing load_ringfile(const RingFile& file, const Caps& caps = {});

ElementLiteral parse_element_literal(std::string_view text);
Element resolve_element(const FiniteRing& ring, const ElementLiteral& literal);
/// Accepts canonical names g1..gk and the ring's labels.
Element parse_element(const FiniteRing& ring, std::string_view text);

/// "x^2*(g2) + x*(g1) + (2g1)"; repeated degrees are summed. "0" is the zero
/// polynomial. format_poly is the inverse on canonical strings.
SkewPoly parse_poly(std::string_view text, const DerivationPtr& context);

/// "x1*x2 - x2*x1", "2*x1*x2*x3 + x3*x2*x1". Every term must be a permutation
/// of x1..xd.
MultilinearIdentity parse_identity(std::string_view text);

}  // namespace skewrad
