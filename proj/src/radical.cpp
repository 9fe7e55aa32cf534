#include "skewrad/radical.hpp"

#include <vector>

#include "skewrad/error.hpp"

namespace skewrad {

namespace {

enum class Membership { Unknown, Inside, Outside };

// Shared scan behind jacobson_radical and radical_report.
IdealSet scan_jacobson(const FiniteRing& ring, const Caps& caps,
                       std::map<Element, std::string>* witnesses) {
  const auto all = ring.elements(caps.enumeration);
  std::vector<std::optional<bool>> regular(all.size());
  auto is_regular = [&](const Element& a) {
    auto& slot = regular[ring.index_of(a)];
    if (!slot) slot = quasi_inverse_in_ring(ring, a).has_value();
    return *slot;
  };

  std::vector<Membership> status(all.size(), Membership::Unknown);
  for (const Element& a : all) {
    const auto idx = ring.index_of(a);
    if (status[idx] != Membership::Unknown) continue;
    const IdealSet principal = ideal_closure(ring, {a}, caps);
    const Element* bad = nullptr;
    for (const Element& x : principal.elements) {
      if (!is_regular(x)) {
        bad = &x;
        break;
      }
    }
    if (bad == nullptr) {
      for (const Element& x : principal.elements) status[ring.index_of(x)] = Membership::Inside;
    } else {
      status[idx] = Membership::Outside;
      if (witnesses != nullptr) {
        (*witnesses)[a] = *bad == a ? std::string("not quasi-regular")
                                    : "ideal generated contains non-quasi-regular " +
                                          format_element(ring, *bad);
      }
    }
  }

  std::vector<Element> members;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (status[i] == Membership::Inside) members.push_back(all[i]);
  }
  ElementSet set(std::move(members));
  if (!is_ideal(ring, set)) {
    throw Error(ErrorCode::InternalInconsistency, "computed Jacobson radical is not an ideal");
  }
  IdealSet out = as_ideal(ring, set, caps);
  if (!nilpotence_index(ring, out, caps)) {
    throw Error(ErrorCode::InternalInconsistency, "Jacobson radical of a finite ring is not nilpotent");
  }
  return out;
}

}  // namespace

std::optional<Element> quasi_inverse_in_ring(const FiniteRing& ring, const Element& a) {
  ring.require_member(a);
  const std::size_t k = ring.rank();
  ModularSystem system;
  system.coeffs.assign(2 * k, std::vector<Int>(k, 0));
  for (std::size_t e = 0; e < 2; ++e) {
    for (std::size_t c = 0; c < k; ++c) {
      system.row_moduli.push_back(ring.moduli()[c]);
      system.rhs.push_back(mod(-a.residues[c], ring.moduli()[c]));
    }
  }
  for (std::size_t c = 0; c < k; ++c) {
    system.col_moduli.push_back(ring.moduli()[c]);
    const Element g = ring.generator(c);
    const Element images[2] = {ring.sub(g, ring.mul(a, g)), ring.sub(g, ring.mul(g, a))};
    for (std::size_t e = 0; e < 2; ++e) {
      for (std::size_t c2 = 0; c2 < k; ++c2) system.coeffs[e * k + c2][c] = images[e].residues[c2];
    }
  }
  auto solution = solve(system);
  if (!solution) return std::nullopt;
  return Element(std::move(*solution));
}

QuasiRegularity is_quasi_regular(const FiniteRing& ring, const Element& a) {
  auto b = quasi_inverse_in_ring(ring, a);
  return QuasiRegularity{b.has_value(), std::move(b)};
}

std::optional<std::uint64_t> element_nilpotency(const FiniteRing& ring, const Element& a) {
  ring.require_member(a);
  Element p = a;
  // powers of an element of a finite ring reach 0 within |R| steps if ever
  const std::uint64_t bound = ring.order() == UINT64_MAX ? UINT64_MAX : ring.order() + 1;
  for (std::uint64_t k = 1; k <= bound; ++k) {
    if (p.is_zero()) return k;
    p = ring.mul(p, a);
  }
  return std::nullopt;
}

IdealSet jacobson_radical(const FiniteRing& ring, const Caps& caps) {
  return scan_jacobson(ring, caps, nullptr);
}

IdealSet nilradical(const FiniteRing& ring, const Caps& caps) {
  IdealSet j = jacobson_radical(ring, caps);
  for (const Element& a : j.elements) {
    if (!element_nilpotency(ring, a)) {
      throw Error(ErrorCode::InternalInconsistency,
                  "Jacobson radical member " + format_element(ring, a) + " is not nilpotent");
    }
  }
  return j;
}

NilCheck is_nil_ideal(const FiniteRing& ring, const IdealSet& ideal) {
  if (!is_ideal(ring, ideal.elements)) throw Error(ErrorCode::NotAnIdeal, "nil test needs an ideal");
  for (const Element& a : ideal.elements) {
    if (!element_nilpotency(ring, a)) return NilCheck{false, a};
  }
  return NilCheck{true, std::nullopt};
}

std::optional<unsigned> nilpotence_index(const FiniteRing& ring, const IdealSet& ideal, const Caps& caps) {
  IdealSet current = ideal;
  unsigned k = 1;
  while (!current.is_zero()) {
    IdealSet next = ideal_product(ring, current, ideal, caps);
    if (next.elements == current.elements) return std::nullopt;
    current = std::move(next);
    ++k;
  }
  return k;
}

bool is_d_stable(const Derivation& d, const ElementSet& set) {
  for (const Element& a : set) {
    if (!set.contains(d.apply(a))) return false;
  }
  return true;
}

IdealSet d_stable_core(const FiniteRing& ring, const Derivation& d, const IdealSet& ideal, const Caps& caps) {
  if (&d.ring() != &ring && !(d.ring().moduli() == ring.moduli())) {
    throw Error(ErrorCode::ContextMismatch, "derivation belongs to a different ring");
  }
  if (!is_ideal(ring, ideal.elements)) throw Error(ErrorCode::NotAnIdeal, "D-stable core needs an ideal");
  ElementSet current = ideal.elements;
  while (true) {
    std::vector<Element> kept;
    for (const Element& a : current) {
      if (current.contains(d.apply(a))) kept.push_back(a);
    }
    if (kept.size() == current.size()) break;
    current = ElementSet(std::move(kept));
  }
  if (!is_d_stable(d, current)) {
    throw Error(ErrorCode::InternalInconsistency, "D-stable core is not D-stable");
  }
  return as_ideal(ring, current, caps);
}

RadicalReport radical_report(const FiniteRing& ring, const Caps& caps) {
  RadicalReport report;
  report.jacobson = scan_jacobson(ring, caps, &report.witnesses);
  report.nilradical = nilradical(ring, caps);
  if (!report.nilradical.elements.subset_of(report.jacobson.elements) ||
      !(report.nilradical == report.jacobson)) {
    throw Error(ErrorCode::InternalInconsistency, "nilradical and Jacobson radical differ");
  }
  report.nilpotence_index = *nilpotence_index(ring, report.jacobson, caps);
  return report;
}

}  // namespace skewrad
