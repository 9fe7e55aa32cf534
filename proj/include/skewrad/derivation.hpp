#pragma once

#include <memory>
#include <vector>

#include "skewrad/finring.hpp"

namespace skewrad {

/// An additive map D : R -> R with D(ab) = D(a)b + aD(b), stored by the images
/// of the additive generators.
class Derivation {
 public:
  const FiniteRing& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }
  const std::vector<Element>& images() const { return images_; }

  Element apply(const Element& a) const;
  /// D^n(a); D^0 is the identity.
  Element apply_power(const Element& a, unsigned n) const;

  bool is_zero() const;

  /// Same ring object and the same generator images.
  bool operator==(const Derivation& other) const {
    return ring_ == other.ring_ && images_ == other.images_;
  }

 private:
  friend Derivation make_derivation(RingPtr ring, std::vector<Element> images);
  Derivation(RingPtr ring, std::vector<Element> images)
      : ring_(std::move(ring)), images_(std::move(images)) {}

  RingPtr ring_;
  std::vector<Element> images_;
};

using DerivationPtr = std::shared_ptr<const Derivation>;

/// Validates order compatibility (m_i D(g_i) = 0) and Leibniz on generator
/// pairs; throws OrderViolation or LeibnizViolation with the witness.
Derivation make_derivation(RingPtr ring, std::vector<Element> images);

Derivation zero_derivation(RingPtr ring);

/// D(a) = ba - ab.
Derivation inner_derivation(RingPtr ring, const Element& b);

/// Every derivation of the ring in canonical order of image tuples. Backtracks
/// over generator images and prunes a branch as soon as a Leibniz pair whose
/// generators are all assigned fails.
std::vector<Derivation> enumerate_derivations(RingPtr ring, const Caps& caps = {});

/// sum_{k=0}^{n} C(n,k) D^k(a) D^{n-k}(b), which equals D^n(ab).
Element leibniz_power(const Derivation& d, const Element& a, const Element& b, unsigned n);

/// D1 x D2 acting componentwise on build_product(R1, R2).
Derivation product_derivation(RingPtr product, const Derivation& left, const Derivation& right);

/// Human-readable summary "D(g1) = 0, D(g2) = g1".
std::string format_derivation(const Derivation& d);

}  // namespace skewrad
