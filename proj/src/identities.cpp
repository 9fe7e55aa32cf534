#include "skewrad/identities.hpp"

#include <algorithm>
#include <numeric>

#include "skewrad/error.hpp"
#include "skewrad/radical.hpp"

namespace skewrad {

namespace {

int permutation_sign(const std::vector<std::size_t>& perm) {
  int sign = 1;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    for (std::size_t j = i + 1; j < perm.size(); ++j) {
      if (perm[i] > perm[j]) sign = -sign;
    }
  }
  return sign;
}

}  // namespace

Int MultilinearIdentity::identity_coefficient() const {
  Int total = 0;
  for (const Term& t : terms) {
    bool id = true;
    for (std::size_t i = 0; i < t.permutation.size(); ++i) id = id && t.permutation[i] == i;
    if (id) total += t.coefficient;
  }
  return total;
}

void validate(const MultilinearIdentity& f) {
  for (const auto& t : f.terms) {
    if (t.permutation.size() != f.arity) throw Error(ErrorCode::ShapeError, "term has wrong arity");
    std::vector<std::size_t> sorted = t.permutation;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (sorted[i] != i) throw Error(ErrorCode::ShapeError, "term is not a permutation");
    }
  }
}

MultilinearIdentity standard_identity(std::size_t d) {
  if (d < 2) throw Error(ErrorCode::ShapeError, "standard identity needs d >= 2");
  MultilinearIdentity f;
  f.arity = d;
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    f.terms.push_back({perm, permutation_sign(perm)});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return f;
}

Element eval_identity(const FiniteRing& ring, const MultilinearIdentity& f,
                      const std::vector<Element>& args) {
  if (args.size() != f.arity) {
    throw Error(ErrorCode::ArityMismatch, "identity takes " + std::to_string(f.arity) +
                                              " arguments, got " + std::to_string(args.size()));
  }
  validate(f);
  for (const Element& a : args) ring.require_member(a);
  Element total = ring.zero();
  for (const auto& t : f.terms) {
    if (f.arity == 0) break;
    Element product = args[t.permutation[0]];
    for (std::size_t i = 1; i < f.arity; ++i) product = ring.mul(product, args[t.permutation[i]]);
    total = ring.add(total, ring.scale(t.coefficient, product));
  }
  return total;
}

IdentityCheck holds_on(const FiniteRing& ring, const MultilinearIdentity& f) {
  validate(f);
  const std::size_t k = ring.rank();
  if (k == 0 || f.arity == 0) {
    if (f.arity == 0 || eval_identity(ring, f, std::vector<Element>(f.arity, ring.zero())).is_zero()) {
      return IdentityCheck{true, std::nullopt};
    }
  }
  std::vector<Element> gens;
  for (std::size_t i = 0; i < k; ++i) gens.push_back(ring.generator(i));
  std::vector<std::size_t> tuple(f.arity, 0);
  std::vector<Element> args(f.arity);
  while (true) {
    for (std::size_t i = 0; i < f.arity; ++i) args[i] = gens[tuple[i]];
    if (!eval_identity(ring, f, args).is_zero()) return IdentityCheck{false, tuple};
    std::size_t pos = f.arity;
    while (pos > 0 && ++tuple[pos - 1] == k) tuple[--pos] = 0;
    if (pos == 0) break;
  }
  return IdentityCheck{true, std::nullopt};
}

CentreIntersectionReport centre_intersection_check(const FiniteRing& ring, const Caps& caps) {
  const IdealSet n = nilradical(ring, caps);
  if (!n.is_zero()) {
    throw Error(ErrorCode::PreconditionFailed,
                "nilradical has " + std::to_string(n.size()) + " elements, expected {0}");
  }
  const ElementSet z = centre(ring, caps);
  CentreIntersectionReport report;
  for (const Element& a : ring.elements(caps.enumeration)) {
    if (a.is_zero()) continue;
    ++report.checked;
    const IdealSet principal = ideal_closure(ring, {a}, caps);
    const bool meets = std::any_of(principal.elements.begin(), principal.elements.end(),
                                   [&](const Element& x) { return !x.is_zero() && z.contains(x); });
    if (!meets) report.violations.push_back(a);
  }
  return report;
}

std::string format_identity(const MultilinearIdentity& f) {
  std::string out;
  for (const auto& t : f.terms) {
    if (t.coefficient == 0) continue;
    const Int mag = t.coefficient < 0 ? -t.coefficient : t.coefficient;
    if (out.empty()) {
      if (t.coefficient < 0) out += "-";
    } else {
      out += t.coefficient < 0 ? " - " : " + ";
    }
    if (mag != 1) out += std::to_string(mag) + "*";
    for (std::size_t i = 0; i < t.permutation.size(); ++i) {
      if (i != 0) out += "*";
      out += "x" + std::to_string(t.permutation[i] + 1);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace skewrad
