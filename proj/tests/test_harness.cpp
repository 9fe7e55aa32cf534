#include <doctest.h>

#include <functional>

#include "generators.hpp"
#include "oracles.hpp"
#include "skewrad/error.hpp"
#include "skewrad/harness.hpp"
#include "skewrad/radical.hpp"

using namespace skewrad;

namespace {

Element el(std::vector<Int> r) { return Element(std::move(r)); }
RingPtr share(FiniteRing r) { return std::make_shared<const FiniteRing>(std::move(r)); }
DerivationPtr share(Derivation d) { return std::make_shared<const Derivation>(std::move(d)); }

DerivationPtr z4_zero() { return share(zero_derivation(share(build_zn(4)))); }
DerivationPtr tdual() {
  const RingPtr r = share(build_truncated_poly(2, 2));
  return share(make_derivation(r, {el({0, 0}), el({1, 0})}));
}
DerivationPtr inner_e12(FiniteRing ring) {
  const RingPtr r = share(std::move(ring));
  return share(inner_derivation(r, r->generator(1)));
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InternalInconsistency;
}

}  // namespace

TEST_CASE("compute_S examples") {
  const DerivationPtr z = z4_zero();
  CHECK(compute_S(z->ring(), *z).elements == ElementSet({el({0}), el({2})}));
  const DerivationPtr d = tdual();
  CHECK(compute_S(d->ring(), *d).is_zero());
  const DerivationPtr t = inner_e12(build_triangular_ring(2, 2));
  CHECK(compute_S(t->ring(), *t).elements == ElementSet({t->ring().zero(), t->ring().generator(1)}));
}

TEST_CASE("nilpotent skew ideal certificates") {
  HarnessOptions opt;
  std::mt19937_64 rng(0);
  const DerivationPtr z = z4_zero();
  const auto cz = certify_nilpotent_skew_ideal(z, compute_S(z->ring(), *z), opt, rng);
  CHECK(cz.nilpotence_index == 2);
  CHECK(cz.exhaustive);
  const DerivationPtr t = inner_e12(build_triangular_ring(2, 2));
  const auto ct = certify_nilpotent_skew_ideal(t, compute_S(t->ring(), *t), opt, rng);
  CHECK(ct.products_checked >= 25);  // (x^i E12)(x^j E12), i, j <= 4
  const DerivationPtr d = tdual();
  const auto cd = certify_nilpotent_skew_ideal(d, compute_S(d->ring(), *d), opt, rng);
  CHECK(cd.products_checked == 0);
}

TEST_CASE("replay on Z4: full hand expansion") {
  const DerivationPtr z = z4_zero();
  const IdealSet s = compute_S(z->ring(), *z);
  const ReplayRecord rec = replay_proof(z, el({2}), s, nilradical(z->ring()));
  REQUIRE(rec.f);
  CHECK(*rec.f == SkewPoly::monomial(z, 1, el({2})));
  CHECK(rec.n == 1);
  CHECK(rec.passed());
  CHECK(rec.checks.size() == 10);
  const ReplayRecord zero = replay_proof(z, el({0}), s, nilradical(z->ring()));
  CHECK(zero.f->is_zero());
  CHECK(zero.passed());
  CHECK(code_of([&] { replay_proof(z, el({1}), s, nilradical(z->ring())); }) == ErrorCode::NotInS);
}

TEST_CASE("replay on T2(F2) with inner E12") {
  const DerivationPtr t = inner_e12(build_triangular_ring(2, 2));
  const IdealSet s = compute_S(t->ring(), *t);
  const ReplayRecord rec = replay_proof(t, t->ring().generator(1), s, nilradical(t->ring()));
  CHECK(*rec.f == SkewPoly::monomial(t, 1, t->ring().generator(1)));
  CHECK(rec.passed());
}

TEST_CASE("theorem certificate across builders and random derivations") {
  HarnessOptions opt;
  std::vector<DerivationPtr> cases{z4_zero(), tdual(), inner_e12(build_triangular_ring(2, 2)),
                                   inner_e12(build_matrix_ring(2, 2))};
  for (const Derivation& d : enumerate_derivations(share(build_truncated_poly(4, 3)))) cases.push_back(share(d));
  for (const DerivationPtr& d : cases) {
    const TheoremCertificate c = certify_theorem1(d, opt);
    CHECK(c.passed());
    CHECK(c.s_is_ideal);
    CHECK(c.s_d_stable);
    CHECK(c.s_nil);
  }
}

TEST_CASE("property: certificates pass on random rings and derivations") {
  HarnessOptions opt;
  opt.samples = 50;
  opt.qinv_samples = 20;
  gen::Rng rng(61);
  for (int i = 0; i < 12; ++i) {
    const RingPtr r = share(gen::ring(rng, i % 2 == 0, 32));
    const auto all = enumerate_derivations(r);
    const DerivationPtr d = share(all[rng() % all.size()]);
    const TheoremCertificate c = certify_theorem1(d, opt);
    CHECK(c.passed());
    // the core is the lattice maximum among D-stable nil ideals
    CHECK(oracle::to_set(c.s.elements) == oracle::d_stable_core(*r, *d, oracle::nilradical(*r)));
  }
}

TEST_CASE("property: S for D = 0 is the nilradical") {
  gen::Rng rng(62);
  for (int i = 0; i < 20; ++i) {
    const RingPtr r = share(gen::ring(rng, true, 64));
    CHECK(compute_S(*r, zero_derivation(r)) == nilradical(*r));
  }
}

TEST_CASE("property: S of a product is the product of S") {
  const std::vector<DerivationPtr> factors{z4_zero(), tdual(), inner_e12(build_triangular_ring(2, 2))};
  for (const DerivationPtr& a : factors) {
    for (const DerivationPtr& b : factors) {
      const RingPtr p = share(build_product(a->ring(), b->ring()));
      const Derivation dp = product_derivation(p, *a, *b);
      const IdealSet sp = compute_S(*p, dp);
      const IdealSet sa = compute_S(a->ring(), *a), sb = compute_S(b->ring(), *b);
      CHECK(sp.size() == sa.size() * sb.size());
      for (const Element& x : sa.elements) {
        for (const Element& y : sb.elements) {
          CHECK(sp.contains(p->add(embed_left(*p, a->ring(), x), embed_right(*p, a->ring(), y))));
        }
      }
    }
  }
}

TEST_CASE("semiprimitivity certificate") {
  HarnessOptions opt;
  const DerivationPtr f2 = share(zero_derivation(share(build_zn(2))));
  const auto c2 = semiprimitivity_certificate(f2, opt);
  CHECK(c2.s_is_zero);
  CHECK(c2.passed());
  CHECK(code_of([&] { semiprimitivity_certificate(z4_zero(), opt); }) == ErrorCode::PreconditionFailed);

  const DerivationPtr m = inner_e12(build_matrix_ring(2, 2));
  const auto cm = semiprimitivity_certificate(m, opt);
  CHECK(cm.s_is_zero);
  CHECK(cm.sampled == 15);
  // x*E12 squares to zero because D(E12) = 0, so it is quasi-regular
  CHECK(cm.direct_quasi_regular == std::vector<Element>{m->ring().generator(1)});
  CHECK(cm.passed());
}

TEST_CASE("quotient transfer") {
  const DerivationPtr d = tdual();
  const TransferCertificate cd = quotient_transfer_check(d);
  CHECK_FALSE(cd.descends);
  CHECK(*cd.obstruction == el({0, 1}));
  CHECK(*cd.obstruction_image == el({1, 0}));

  const TransferCertificate cz = quotient_transfer_check(z4_zero());
  CHECK(cz.descends);
  CHECK(cz.quotient_order == 2);

  const TransferCertificate ct = quotient_transfer_check(inner_e12(build_triangular_ring(2, 2)));
  CHECK(ct.descends);
  CHECK(ct.quotient_derivation_zero);
  CHECK(ct.projection_commutes);
}
