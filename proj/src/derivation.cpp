#include "skewrad/derivation.hpp"

#include <algorithm>

#include "skewrad/error.hpp"

namespace skewrad {

namespace {

std::string gen_name(std::size_t i) { return "g" + std::to_string(i + 1); }

Element apply_images(const FiniteRing& ring, const std::vector<Element>& images, const Element& a) {
  Element out = ring.zero();
  for (std::size_t i = 0; i < ring.rank(); ++i) {
    if (a.residues[i] != 0) out = ring.add(out, ring.scale(a.residues[i], images[i]));
  }
  return out;
}

bool leibniz_holds(const FiniteRing& ring, const std::vector<Element>& images, std::size_t i,
                   std::size_t j) {
  const Element gi = ring.generator(i), gj = ring.generator(j);
  const Element lhs = apply_images(ring, images, ring.generator_product(i, j));
  const Element rhs = ring.add(ring.mul(images[i], gj), ring.mul(gi, images[j]));
  return lhs == rhs;
}

}  // namespace

Element Derivation::apply(const Element& a) const {
  ring_->require_member(a);
  return apply_images(*ring_, images_, a);
}

Element Derivation::apply_power(const Element& a, unsigned n) const {
  Element out = a;
  ring_->require_member(out);
  for (unsigned i = 0; i < n; ++i) {
    out = apply_images(*ring_, images_, out);
    if (out.is_zero()) break;
  }
  return out;
}

bool Derivation::is_zero() const {
  return std::all_of(images_.begin(), images_.end(), [](const Element& e) { return e.is_zero(); });
}

Derivation make_derivation(RingPtr ring, std::vector<Element> images) {
  const FiniteRing& r = *ring;
  if (images.size() != r.rank()) {
    throw Error(ErrorCode::DimensionMismatch, "derivation needs one image per generator");
  }
  for (const Element& img : images) r.require_member(img);
  for (std::size_t i = 0; i < r.rank(); ++i) {
    if (!r.scale(r.moduli()[i], images[i]).is_zero()) {
      throw Error(ErrorCode::OrderViolation,
                  "witness " + gen_name(i) + ": D(" + gen_name(i) + ") = " +
                      format_element(r, images[i]) + " is not killed by the order of " +
                      gen_name(i));
    }
  }
  for (std::size_t i = 0; i < r.rank(); ++i) {
    for (std::size_t j = 0; j < r.rank(); ++j) {
      if (!leibniz_holds(r, images, i, j)) {
        throw Error(ErrorCode::LeibnizViolation,
                    "witness (" + gen_name(i) + ", " + gen_name(j) + ")");
      }
    }
  }
  return Derivation(std::move(ring), std::move(images));
}

Derivation zero_derivation(RingPtr ring) {
  const std::size_t k = ring->rank();
  const Element zero = ring->zero();
  return make_derivation(std::move(ring), std::vector<Element>(k, zero));
}

Derivation inner_derivation(RingPtr ring, const Element& b) {
  const FiniteRing& r = *ring;
  r.require_member(b);
  std::vector<Element> images;
  for (std::size_t i = 0; i < r.rank(); ++i) {
    const Element g = r.generator(i);
    images.push_back(r.sub(r.mul(b, g), r.mul(g, b)));
  }
  return make_derivation(std::move(ring), std::move(images));
}

std::vector<Derivation> enumerate_derivations(RingPtr ring, const Caps& caps) {
  const FiniteRing& r = *ring;
  const std::size_t k = r.rank();
  const auto all = r.elements(caps.enumeration);

  std::vector<std::vector<Element>> candidates(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (const Element& x : all) {
      if (r.scale(r.moduli()[i], x).is_zero()) candidates[i].push_back(x);
    }
  }
  // checks_at[i]: Leibniz pairs that become decidable once g_0..g_i are assigned
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> checks_at(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      std::size_t last = std::max(i, j);
      const Element& p = r.generator_product(i, j);
      for (std::size_t c = 0; c < k; ++c) {
        if (p.residues[c] != 0) last = std::max(last, c);
      }
      checks_at[last].emplace_back(i, j);
    }
  }

  std::vector<Derivation> out;
  std::vector<Element> images(k, r.zero());
  std::uint64_t visited = 0;
  auto recurse = [&](auto&& self, std::size_t i) -> void {
    if (i == k) {
      out.push_back(make_derivation(ring, images));
      return;
    }
    for (const Element& x : candidates[i]) {
      if (++visited > caps.derivation_candidates) {
        throw Error(ErrorCode::SizeCapExceeded, "derivation search exceeded " +
                                                    std::to_string(caps.derivation_candidates) +
                                                    " candidate nodes");
      }
      images[i] = x;
      bool ok = true;
      for (const auto& [p, q] : checks_at[i]) {
        if (!leibniz_holds(r, images, p, q)) {
          ok = false;
          break;
        }
      }
      if (ok) self(self, i + 1);
    }
    images[i] = r.zero();
  };
  recurse(recurse, 0);
  return out;
}

Element leibniz_power(const Derivation& d, const Element& a, const Element& b, unsigned n) {
  const FiniteRing& r = d.ring();
  const std::vector<Int> binom = binomial_row(n, r.exponent());
  Element out = r.zero();
  for (unsigned k = 0; k <= n; ++k) {
    const Element term = r.mul(d.apply_power(a, k), d.apply_power(b, n - k));
    out = r.add(out, r.scale(binom[k], term));
  }
  return out;
}

Derivation product_derivation(RingPtr product, const Derivation& left, const Derivation& right) {
  std::vector<Element> images;
  for (const Element& img : left.images()) images.push_back(embed_left(*product, left.ring(), img));
  for (const Element& img : right.images()) images.push_back(embed_right(*product, left.ring(), img));
  return make_derivation(std::move(product), std::move(images));
}

std::string format_derivation(const Derivation& d) {
  std::string out;
  for (std::size_t i = 0; i < d.images().size(); ++i) {
    if (i != 0) out += ", ";
    out += "D(" + gen_name(i) + ") = " + format_element(d.ring(), d.images()[i]);
  }
  return out;
}

}  // namespace skewrad
