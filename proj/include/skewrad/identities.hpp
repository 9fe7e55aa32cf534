#pragma once

#include <optional>
#include <string>
#include <vector>

#include "skewrad/finring.hpp"

namespace skewrad {

/// sum over terms of coefficient * x_{perm[0]} x_{perm[1]} ... x_{perm[d-1]}
/// (0-based variable indices).
struct MultilinearIdentity {
  struct Term {
    std::vector<std::size_t> permutation;
    Int coefficient = 0;
  };

  std::size_t arity = 0;
  std::vector<Term> terms;

  /// Coefficient of x_1 x_2 ... x_d.
  Int identity_coefficient() const;
};

/// Throws ShapeError on a term that is not a permutation of 0..d-1.
void validate(const MultilinearIdentity& f);

/// S_d = sum_sigma sgn(sigma) x_{sigma(1)} ... x_{sigma(d)}, d >= 2.
MultilinearIdentity standard_identity(std::size_t d);

Element eval_identity(const FiniteRing& ring, const MultilinearIdentity& f,
                      const std::vector<Element>& args);

struct IdentityCheck {
  bool holds = false;
  std::optional<std::vector<std::size_t>> witness;  // generator indices, 0-based
};

/// Vanishing on every tuple of generators, which suffices for multilinear f.
/// The witness is the first failing tuple in lexicographic order.
IdentityCheck holds_on(const FiniteRing& ring, const MultilinearIdentity& f);

struct CentreIntersectionReport {
  std::size_t checked = 0;  // nonzero elements a whose principal ideal was tested
  std::vector<Element> violations;
  bool passed() const { return violations.empty(); }
};

/// For N(R) = 0, every nonzero ideal meets the centre nontrivially; tested
/// on every nonzero principal ideal. PreconditionFailed when N(R) != 0.
CentreIntersectionReport centre_intersection_check(const FiniteRing& ring, const Caps& caps = {});

/// "x1*x2 - x2*x1"
std::string format_identity(const MultilinearIdentity& f);

}  // namespace skewrad
