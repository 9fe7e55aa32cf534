#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "skewrad/modular.hpp"

namespace skewrad {

/// Enumeration limits. Every operation that walks element sets checks one of
/// these before allocating.
struct Caps {
  std::uint64_t enumeration = 4096;  // element-wise scans (centre, radicals, ...)
  std::uint64_t ideal = 256;         // enumerate_ideals and quotient construction
  std::uint64_t derivation_candidates = std::uint64_t{1} << 24;  // search nodes
  std::uint64_t linear_entries = std::uint64_t{1} << 22;  // rows * cols of a solve
};

/// A ring element as residues over the cyclic additive components of its ring.
struct Element {
  std::vector<Int> residues;

  Element() = default;
  explicit Element(std::vector<Int> r) : residues(std::move(r)) {}

  std::size_t size() const { return residues.size(); }
  bool is_zero() const;

  auto operator<=>(const Element&) const = default;
  bool operator==(const Element&) const = default;
};

/// Finite, possibly non-unital, associative ring given by structure constants:
/// additive group Z_{m_1} x ... x Z_{m_k} with generators g_1..g_k and a table
/// of the products g_i g_j, extended bilinearly.
class FiniteRing {
 public:
  /// Validates shape, order compatibility, associativity on generator triples
  /// and (when given) the unit. Throws Error on failure.
  static FiniteRing from_structure(std::vector<Int> moduli, std::vector<std::vector<Element>> table,
                                   std::optional<Element> unit = std::nullopt,
                                   std::vector<std::string> labels = {});

  std::size_t rank() const { return moduli_.size(); }
  const std::vector<Int>& moduli() const { return moduli_; }
  const Element& generator_product(std::size_t i, std::size_t j) const { return table_[i][j]; }
  const std::optional<Element>& unit() const { return unit_; }

  /// Optional aliases for the generators (e.g. E11, E12 for matrix units).
  /// Empty when the ring only answers to the canonical names g1..gk.
  const std::vector<std::string>& labels() const { return labels_; }

  /// Number of elements, saturating at UINT64_MAX.
  std::uint64_t order() const { return order_; }
  /// lcm of the moduli: n * a = 0 for every a iff exponent() divides n.
  Int exponent() const { return exponent_; }

  Element zero() const;
  Element generator(std::size_t i) const;
  Element from_residues(std::vector<Int> residues) const;  // reduces

  bool is_member(const Element& a) const;
  void require_member(const Element& a) const;  // DimensionMismatch

  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element neg(const Element& a) const;
  Element mul(const Element& a, const Element& b) const;
  Element scale(Int n, const Element& a) const;
  Element power(const Element& a, std::uint64_t n) const;  // n >= 1

  bool is_commutative() const;

  /// Lexicographic rank of a residue vector (first component most
  /// significant); equals the element's position in canonical order.
  std::uint64_t index_of(const Element& a) const;
  Element element_at(std::uint64_t index) const;

  /// All elements in canonical order; SizeCapExceeded above cap.
  std::vector<Element> elements(std::uint64_t cap) const;
  void require_order_at_most(std::uint64_t cap, const char* what) const;

  /// Exhaustive check of associativity and distributivity on all element
  /// triples. Test-mode companion of the generator-triple validation.
  bool verify_axioms_exhaustive(std::uint64_t cap) const;

 private:
  FiniteRing() = default;

  std::vector<Int> moduli_;
  std::vector<std::vector<Element>> table_;
  std::optional<Element> unit_;
  std::vector<std::string> labels_;
  std::uint64_t order_ = 1;
  Int exponent_ = 1;
};

using RingPtr = std::shared_ptr<const FiniteRing>;

/// Canonically sorted, duplicate-free set of ring elements.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::vector<Element> elements);  // sorts and dedups

  const std::vector<Element>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool contains(const Element& a) const;
  bool is_zero_set() const;  // exactly {0}
  bool subset_of(const ElementSet& other) const;

  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

  bool operator==(const ElementSet&) const = default;

 private:
  std::vector<Element> elements_;
};

/// Explicit two-sided ideal: its elements plus a generating list.
struct IdealSet {
  ElementSet elements;
  std::vector<Element> generators;

  std::size_t size() const { return elements.size(); }
  bool contains(const Element& a) const { return elements.contains(a); }
  bool is_zero() const { return elements.is_zero_set(); }
};

inline bool operator==(const IdealSet& a, const IdealSet& b) { return a.elements == b.elements; }

// Builders. Generators are in canonical order: matrix units E_ij row-major,
// powers 1, t, ..., t^{e-1}; products list the first factor's generators first.
FiniteRing build_structure(std::vector<Int> moduli, std::vector<std::vector<Element>> table,
                           std::optional<Element> unit = std::nullopt);
FiniteRing build_zn(Int n, const Caps& caps = {});
FiniteRing build_matrix_ring(int n, Int m, const Caps& caps = {});
FiniteRing build_triangular_ring(int n, Int m, const Caps& caps = {});
FiniteRing build_truncated_poly(Int m, int e, const Caps& caps = {});
FiniteRing build_product(const FiniteRing& left, const FiniteRing& right, const Caps& caps = {});

/// Embeddings of the factors of build_product(left, right).
Element embed_left(const FiniteRing& product, const FiniteRing& left, const Element& a);
Element embed_right(const FiniteRing& product, const FiniteRing& left, const Element& b);

/// {z : za = az for all a}; commutation checked against generators only.
ElementSet centre(const FiniteRing& ring, const Caps& caps = {});

/// Smallest ideal containing gens. Integer multiples are included, so this is
/// the non-unital ideal aZ + aR + Ra + RaR for a single generator.
IdealSet ideal_closure(const FiniteRing& ring, const std::vector<Element>& gens,
                       const Caps& caps = {});

/// Closed under +, negation and two-sided multiplication by the generators.
bool is_ideal(const FiniteRing& ring, const ElementSet& set);

/// Re-attach a small generating list to an already known ideal.
IdealSet as_ideal(const FiniteRing& ring, const ElementSet& set, const Caps& caps = {});

/// Additive subgroup generated by gens (no multiplicative closure).
ElementSet additive_span(const FiniteRing& ring, const std::vector<Element>& gens,
                         const Caps& caps = {});

/// Smallest ideal containing all products x*y with x in a, y in b.
IdealSet ideal_product(const FiniteRing& ring, const IdealSet& a, const IdealSet& b,
                       const Caps& caps = {});

/// R/I on a fresh cyclic decomposition of the additive quotient, with the
/// projection and a section back into R.
struct Quotient {
  RingPtr ring;
  IntMatrix projection;  // rank(R) x rank(R/I): image of each generator of R
  std::vector<Element> lifts;  // preimage of each generator of R/I

  Element project(const FiniteRing& source, const Element& a) const;
  Element lift(const FiniteRing& source, const Element& a) const;
};

Quotient quotient_ring(const FiniteRing& ring, const IdealSet& ideal, const Caps& caps = {});

/// Every two-sided ideal, sorted by size then by elements.
std::vector<IdealSet> enumerate_ideals(const FiniteRing& ring, const Caps& caps = {});

/// "g1 + 2g3"; the zero element prints as "0".
std::string format_element(const FiniteRing& ring, const Element& a);

}  // namespace skewrad
