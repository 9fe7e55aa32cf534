#pragma once

#include <map>
#include <optional>
#include <string>

#include "skewrad/derivation.hpp"
#include "skewrad/finring.hpp"

namespace skewrad {

/// b with a + b - ab = 0 and a + b - ba = 0, if one exists. Both equations are
/// additive in b, so this is a linear solve over the additive group.
std::optional<Element> quasi_inverse_in_ring(const FiniteRing& ring, const Element& a);

struct QuasiRegularity {
  bool regular = false;
  std::optional<Element> witness;  // the quasi-inverse when regular
};

QuasiRegularity is_quasi_regular(const FiniteRing& ring, const Element& a);

/// Least k >= 1 with a^k = 0, or nullopt when a is not nilpotent.
std::optional<std::uint64_t> element_nilpotency(const FiniteRing& ring, const Element& a);

/// {a : every element of ideal_closure({a}) is quasi-regular}. Verified to be a
/// nilpotent ideal before it is returned.
IdealSet jacobson_radical(const FiniteRing& ring, const Caps& caps = {});

/// Largest nil ideal: the Jacobson radical after a per-element nilpotency pass.
/// Any element that fails the pass raises InternalInconsistency.
IdealSet nilradical(const FiniteRing& ring, const Caps& caps = {});

struct NilCheck {
  bool nil = false;
  std::optional<Element> witness;  // a non-nilpotent member when not nil
};

/// NotAnIdeal unless `ideal` is a two-sided ideal.
NilCheck is_nil_ideal(const FiniteRing& ring, const IdealSet& ideal);

/// Least k with I^k = {0} (I^1 = I), or nullopt when the powers stabilise at a
/// nonzero ideal.
std::optional<unsigned> nilpotence_index(const FiniteRing& ring, const IdealSet& ideal,
                                         const Caps& caps = {});

bool is_d_stable(const Derivation& d, const ElementSet& set);

/// Largest D-stable ideal inside `ideal`: the limit of K_0 = I,
/// K_{j+1} = {a in K_j : D(a) in K_j}.
IdealSet d_stable_core(const FiniteRing& ring, const Derivation& d, const IdealSet& ideal,
                       const Caps& caps = {});

struct RadicalReport {
  IdealSet jacobson;
  IdealSet nilradical;
  unsigned nilpotence_index = 0;
  /// Elements outside J with the reason they were excluded.
  std::map<Element, std::string> witnesses;
};

RadicalReport radical_report(const FiniteRing& ring, const Caps& caps = {});

}  // namespace skewrad
