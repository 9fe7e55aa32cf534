#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "skewrad/derivation.hpp"

namespace skewrad {

/// Element sum_i x^i a_i of R[x;D], coefficients on the right of the powers of
/// x. Multiplication follows xa = ax + D(a).
class SkewPoly {
 public:
  /// Trailing zero coefficients are dropped; the zero polynomial has no
  /// coefficients.
  SkewPoly(DerivationPtr context, std::vector<Element> coeffs);

  static SkewPoly zero(DerivationPtr context);
  /// x^i a
  static SkewPoly monomial(DerivationPtr context, std::size_t i, Element a);

  const DerivationPtr& context() const { return context_; }
  const Derivation& derivation() const { return *context_; }
  const FiniteRing& ring() const { return context_->ring(); }
  const std::vector<Element>& coeffs() const { return coeffs_; }

  bool is_zero() const { return coeffs_.empty(); }
  /// nullopt stands for the degree of the zero polynomial (-infinity).
  std::optional<std::size_t> degree() const;
  /// Coefficient of x^i; the zero element past the degree.
  Element coefficient(std::size_t i) const;

  bool operator==(const SkewPoly& other) const;

 private:
  DerivationPtr context_;
  std::vector<Element> coeffs_;
};

SkewPoly operator+(const SkewPoly& p, const SkewPoly& q);
SkewPoly operator-(const SkewPoly& p);
SkewPoly operator-(const SkewPoly& p, const SkewPoly& q);
SkewPoly operator*(const SkewPoly& p, const SkewPoly& q);

/// Throws ContextMismatch unless both live in the same R[x;D].
void require_same_context(const SkewPoly& p, const SkewPoly& q);

inline Element extract_coefficient(const SkewPoly& p, std::size_t i) { return p.coefficient(i); }

/// a x^r rewritten with coefficients on the right:
/// sum_{l=0}^{r} (-1)^l C(r,l) x^{r-l} D^l(a).
SkewPoly move_coeff(const DerivationPtr& context, const Element& a, unsigned r);

/// Canonical text: "x^2*(g2) + x^1*(g1) + (2g1)", highest degree first, zero
/// coefficients omitted, the zero polynomial as "0".
std::string format_poly(const SkewPoly& p);

/// p o q = p + q - pq.
SkewPoly circle(const SkewPoly& p, const SkewPoly& q);

SkewPoly power(const SkewPoly& p, unsigned n);  // n >= 1

/// -(p + p^2 + ... + p^{k-1}) after checking p^k = 0 (NotNilpotent otherwise).
SkewPoly quasi_inverse_nilpotent(const SkewPoly& p, unsigned k);

/// Outcome of a degree-bounded quasi-inverse search. A missing inverse is only
/// evidence up to `bound`, not a proof that p is not quasi-regular.
struct QuasiInverseSearch {
  std::optional<SkewPoly> inverse;
  std::size_t bound = 0;

  bool found() const { return inverse.has_value(); }
};

/// Looks for f with deg f <= max_degree and f o p = p o f = 0 by solving the
/// two (additive) circle equations as one linear system over the coefficient
/// group. Two-sided quasi-inverses are unique, so any solution is the answer.
QuasiInverseSearch quasi_inverse_search(const SkewPoly& p, std::size_t max_degree,
                                        const Caps& caps = {});

}  // namespace skewrad
