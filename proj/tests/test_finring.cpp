#include <doctest.h>

#include <functional>

#include "generators.hpp"
#include "oracles.hpp"
#include "skewrad/error.hpp"
#include "skewrad/finring.hpp"

using namespace skewrad;

namespace {

Element el(std::vector<Int> r) { return Element(std::move(r)); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InternalInconsistency;
}

}  // namespace

TEST_CASE("Z4 from structure constants") {
  const FiniteRing r = FiniteRing::from_structure({4}, {{el({1})}}, el({1}));
  CHECK(r.order() == 4);
  CHECK(r.unit() == el({1}));
  CHECK(r.mul(el({2}), el({3})) == el({2}));
  CHECK(r.is_commutative());
}

TEST_CASE("validation order: shape, order compatibility, associativity, unit") {
  CHECK(code_of([] { FiniteRing::from_structure({2}, {{el({3})}}); }) == ErrorCode::ShapeError);
  CHECK(code_of([] { FiniteRing::from_structure({2, 2}, {{el({1, 0})}}); }) == ErrorCode::ShapeError);
  // 2 * g1 = 0 forces 2 * g1g1 = 0, impossible for g1g1 = g2 in Z_2 x Z_4
  CHECK(code_of([] {
          FiniteRing::from_structure({2, 4}, {{el({0, 1}), el({0, 0})}, {el({0, 0}), el({0, 0})}});
        }) == ErrorCode::OrderIncompatibility);
  // g1g1 = g2, g2g1 = g1, rest 0: (g1g1)g1 = g1 but g1(g1g1) = 0
  CHECK(code_of([] {
          FiniteRing::from_structure({2, 2}, {{el({0, 1}), el({0, 0})}, {el({1, 0}), el({0, 0})}});
        }) == ErrorCode::AssociativityViolation);
  CHECK(code_of([] { FiniteRing::from_structure({2}, {{el({0})}}, el({1})); }) == ErrorCode::ShapeError);
}

TEST_CASE("builders") {
  CHECK(build_zn(4).order() == 4);
  const FiniteRing m = build_matrix_ring(2, 2);
  CHECK(m.order() == 16);
  CHECK_FALSE(m.is_commutative());
  CHECK(m.labels() == std::vector<std::string>{"E11", "E12", "E21", "E22"});
  CHECK(m.unit() == el({1, 0, 0, 1}));
  // E12 E21 = E11
  CHECK(m.mul(m.generator(1), m.generator(2)) == m.generator(0));
  const FiniteRing t = build_triangular_ring(2, 2);
  CHECK(t.order() == 8);
  CHECK(t.labels() == std::vector<std::string>{"E11", "E12", "E22"});
  const FiniteRing p = build_truncated_poly(4, 3);
  CHECK(p.order() == 64);
  CHECK(p.mul(p.generator(1), p.generator(2)).is_zero());  // t * t^2 = t^3 = 0
  CHECK(p.mul(p.generator(1), p.generator(1)) == p.generator(2));
  CHECK(p.exponent() == 4);
}

TEST_CASE("size caps") {
  Caps caps;
  caps.enumeration = 50;
  CHECK(code_of([&] { build_matrix_ring(2, 3, caps); }) == ErrorCode::SizeCapExceeded);
  CHECK(code_of([&] { build_product(build_zn(16), build_zn(16), caps); }) == ErrorCode::SizeCapExceeded);
}

TEST_CASE("product ring and embeddings") {
  const FiniteRing a = build_zn(2), b = build_matrix_ring(2, 2);
  const FiniteRing p = build_product(a, b);
  CHECK(p.order() == 32);
  CHECK(p.rank() == 5);
  const Element x = embed_left(p, a, a.generator(0));
  const Element y = embed_right(p, a, b.generator(1));
  CHECK(p.mul(x, y).is_zero());
  CHECK(p.mul(y, embed_right(p, a, b.generator(2))) == embed_right(p, a, b.generator(0)));
}

TEST_CASE("element ops and canonical order") {
  const FiniteRing r = build_truncated_poly(2, 2);
  const auto all = r.elements(16);
  CHECK(all.size() == 4);
  for (std::size_t i = 0; i < all.size(); ++i) CHECK(r.index_of(all[i]) == i);
  CHECK(std::is_sorted(all.begin(), all.end()));
  CHECK(r.power(r.generator(1), 2).is_zero());
  CHECK_THROWS_AS(r.require_member(el({1})), Error);
  CHECK(format_element(r, el({1, 1})) == "g1 + g2");
  CHECK(format_element(r, r.zero()) == "0");
}

TEST_CASE("centre matches the brute-force oracle") {
  for (const FiniteRing& r : {build_matrix_ring(2, 2), build_triangular_ring(2, 2), build_zn(6),
                              build_truncated_poly(4, 3), build_product(build_zn(2), build_triangular_ring(2, 2))}) {
    CHECK(oracle::to_set(centre(r)) == oracle::centre(r));
  }
  const FiniteRing t = build_triangular_ring(2, 2);
  CHECK(centre(t).size() == 2);
}

TEST_CASE("ideal closure and lattice against the oracle") {
  for (const FiniteRing& r : {build_zn(12), build_triangular_ring(2, 2), build_matrix_ring(2, 2),
                              build_truncated_poly(2, 3)}) {
    std::set<oracle::Set> expected;
    for (const auto& s : oracle::ideal_lattice(r)) expected.insert(s);
    std::set<oracle::Set> got;
    for (const IdealSet& i : enumerate_ideals(r)) {
      CHECK(is_ideal(r, i.elements));
      got.insert(oracle::to_set(i.elements));
    }
    CHECK(got == expected);
    for (const Element& a : r.elements(4096)) {
      CHECK(oracle::to_set(ideal_closure(r, {a}).elements) == oracle::close_ideal(r, {a}));
    }
  }
  CHECK(enumerate_ideals(build_matrix_ring(2, 2)).size() == 2);
  CHECK(enumerate_ideals(build_zn(12)).size() == 6);
}

TEST_CASE("as_ideal rejects non-ideals") {
  const FiniteRing m = build_matrix_ring(2, 2);
  CHECK_THROWS_AS(as_ideal(m, ElementSet({m.zero(), m.generator(1)})), Error);
}

TEST_CASE("quotient rings") {
  const FiniteRing z = build_zn(12);
  const Quotient q = quotient_ring(z, ideal_closure(z, {el({4})}));
  CHECK(q.ring->order() == 4);
  // projection is a ring homomorphism
  for (const Element& a : z.elements(64)) {
    for (const Element& b : z.elements(64)) {
      CHECK(q.project(z, z.mul(a, b)) == q.ring->mul(q.project(z, a), q.project(z, b)));
      CHECK(q.project(z, z.add(a, b)) == q.ring->add(q.project(z, a), q.project(z, b)));
    }
  }
  for (const Element& c : q.ring->elements(64)) CHECK(q.project(z, q.lift(*q.ring, c)) == c);

  const FiniteRing t = build_triangular_ring(2, 2);
  const Quotient qt = quotient_ring(t, ideal_closure(t, {t.generator(1)}));
  CHECK(qt.ring->order() == 4);
  CHECK(qt.ring->is_commutative());
  const Quotient same = quotient_ring(t, ideal_closure(t, {t.zero()}));
  CHECK(same.ring->moduli() == t.moduli());
}

TEST_CASE("property: random rings satisfy the axioms exhaustively") {
  gen::Rng rng(11);
  for (int i = 0; i < 30; ++i) {
    const FiniteRing r = gen::ring(rng, i % 2 == 0, 32);
    CHECK_NOTHROW(r.verify_axioms_exhaustive(4096));
    if (i % 2 == 0) CHECK(r.is_commutative());
  }
}

TEST_CASE("property: ideal_product lies in both factors") {
  gen::Rng rng(12);
  for (int i = 0; i < 20; ++i) {
    const FiniteRing r = gen::ring(rng, false, 32);
    const auto ideals = enumerate_ideals(r);
    const IdealSet& a = ideals[rng() % ideals.size()];
    const IdealSet& b = ideals[rng() % ideals.size()];
    const IdealSet ab = ideal_product(r, a, b);
    CHECK(ab.elements.subset_of(a.elements));
    CHECK(ab.elements.subset_of(b.elements));
  }
}
