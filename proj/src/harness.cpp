#include "skewrad/harness.hpp"

#include <algorithm>
#include <iterator>

#include "skewrad/error.hpp"
#include "skewrad/radical.hpp"

namespace skewrad {

namespace {

template <typename T>
std::vector<T> pick(const std::vector<T>& all, const HarnessOptions& options, std::mt19937_64& rng) {
  if (all.size() <= options.exhaustive_below) return all;
  std::vector<T> out;
  std::sample(all.begin(), all.end(), std::back_inserter(out), options.samples, rng);
  return out;
}

SkewPoly random_poly(const DerivationPtr& d, const ElementSet& coeff_set, std::size_t degree,
                     std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick_coeff(0, coeff_set.size() - 1);
  std::vector<Element> coeffs;
  for (std::size_t i = 0; i <= degree; ++i) coeffs.push_back(coeff_set.elements()[pick_coeff(rng)]);
  return SkewPoly(d, std::move(coeffs));
}

}  // namespace

IdealSet compute_S(const FiniteRing& ring, const Derivation& d, const Caps& caps) {
  return d_stable_core(ring, d, nilradical(ring, caps), caps);
}

SkewNilpotenceCertificate certify_nilpotent_skew_ideal(const DerivationPtr& d, const IdealSet& s,
                                                       const HarnessOptions& options,
                                                       std::mt19937_64& rng) {
  const FiniteRing& r = d->ring();
  SkewNilpotenceCertificate cert;
  const auto index = nilpotence_index(r, s, options.caps);
  if (!index) throw Error(ErrorCode::CertificateFailure, "S is not nilpotent");
  cert.nilpotence_index = *index;
  if (s.is_zero()) return cert;

  const unsigned k = *index;
  std::vector<SkewPoly> monomials;
  for (const Element& g : as_ideal(r, s.elements, options.caps).generators) {
    for (std::size_t i = 0; i <= options.product_degree; ++i) monomials.push_back(SkewPoly::monomial(d, i, g));
  }
  cert.monomials = monomials.size();

  auto check_product = [&](const std::vector<const SkewPoly*>& factors) {
    SkewPoly product = *factors[0];
    for (std::size_t i = 1; i < factors.size(); ++i) product = product * *factors[i];
    ++cert.products_checked;
    if (!product.is_zero()) {
      std::string msg = "nonzero product of " + std::to_string(k) + " members of S[x;D]:";
      for (const SkewPoly* f : factors) msg += " [" + format_poly(*f) + "]";
      msg += " = " + format_poly(product);
      throw Error(ErrorCode::CertificateFailure, msg);
    }
  };

  std::uint64_t tuples = 1;
  for (unsigned i = 0; i < k && tuples <= options.product_budget; ++i) tuples *= monomials.size();
  if (tuples <= options.product_budget) {
    // multilinearity: monomial tuples over additive generators cover S[x;D] up to the degree bound
    std::vector<std::size_t> idx(k, 0);
    std::vector<const SkewPoly*> factors(k);
    while (true) {
      for (unsigned i = 0; i < k; ++i) factors[i] = &monomials[idx[i]];
      check_product(factors);
      std::size_t pos = k;
      while (pos > 0 && ++idx[pos - 1] == monomials.size()) idx[--pos] = 0;
      if (pos == 0) break;
    }
  } else {
    cert.exhaustive = false;
    for (std::size_t t = 0; t < options.samples; ++t) {
      std::vector<SkewPoly> polys;
      for (unsigned i = 0; i < k; ++i) polys.push_back(random_poly(d, s.elements, options.product_degree, rng));
      std::vector<const SkewPoly*> factors;
      for (const auto& p : polys) factors.push_back(&p);
      check_product(factors);
    }
  }

  for (std::size_t t = 0; t < options.qinv_samples; ++t) {
    const SkewPoly p = random_poly(d, s.elements, options.product_degree, rng);
    const SkewPoly g = quasi_inverse_nilpotent(p, k);
    if (!circle(p, g).is_zero() || !circle(g, p).is_zero()) {
      throw Error(ErrorCode::CertificateFailure, "geometric quasi-inverse fails for " + format_poly(p));
    }
    ++cert.quasi_inverses_checked;
  }
  return cert;
}

bool ReplayRecord::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
}

ReplayRecord replay_proof(const DerivationPtr& d, const Element& a, const IdealSet& s,
                          const IdealSet& nil, const Caps& caps) {
  const FiniteRing& r = d->ring();
  if (!s.contains(a)) throw Error(ErrorCode::NotInS, format_element(r, a) + " is not in S");
  const auto index = nilpotence_index(r, s, caps);
  if (!index) throw Error(ErrorCode::QuasiInverseFailure, "S is not nilpotent");

  const SkewPoly xa = SkewPoly::monomial(d, 1, a);
  SkewPoly f = SkewPoly::zero(d);
  try {
    f = quasi_inverse_nilpotent(xa, *index);
  } catch (const Error& e) {
    throw Error(ErrorCode::QuasiInverseFailure, e.what());
  }

  ReplayRecord rec;
  rec.a = a;
  rec.n = f.degree().value_or(0);
  const std::size_t n = rec.n;
  auto b = [&](std::size_t i) { return f.coefficient(i); };
  auto zero = [](const Element& e) { return e.is_zero(); };

  rec.checks.emplace_back("left circle: f + xa - f*xa = 0", (f + xa - f * xa).is_zero());
  rec.checks.emplace_back("right circle: f + xa - xa*f = 0", (f + xa - xa * f).is_zero());
  rec.checks.emplace_back("b0 = 0", zero(b(0)));
  rec.checks.emplace_back("top coefficient: b_n a = 0", zero(r.mul(b(n), a)));
  bool middle_ok = true;
  for (std::size_t i = 2; i <= n; ++i) {
    const Element lhs = r.add(r.sub(b(i), r.mul(b(i - 1), a)), r.mul(d->apply(b(i)), a));
    middle_ok = middle_ok && zero(lhs);
  }
  rec.checks.emplace_back("middle coefficients: b_i - b_{i-1} a + D(b_i) a = 0, 2 <= i <= n", middle_ok);
  if (n >= 1) {
    const Element lhs = r.add(r.add(b(1), a), r.mul(d->apply(b(1)), a));
    rec.checks.emplace_back("linear coefficient: b_1 + a + D(b_1) a = 0", zero(lhs));
  } else {
    rec.checks.emplace_back("linear coefficient: b_1 + a + D(b_1) a = 0", zero(a));
  }
  rec.checks.emplace_back("commutator f*xa - xa*f = 0", (f * xa - xa * f).is_zero());
  bool in_s = true;
  for (const Element& c : f.coeffs()) in_s = in_s && s.contains(c);
  rec.checks.emplace_back("every b_i lies in S", in_s);
  bool claim = true;
  for (std::size_t j = 1; j <= n; ++j) {
    claim = claim && nil.contains(r.mul(b(n - j + 1), r.power(a, j)));
  }
  rec.checks.emplace_back("b_{n-j+1} a^j in N, 1 <= j <= n", claim);
  rec.checks.emplace_back("a^{n+1} in N", nil.contains(r.power(a, n + 1)));
  rec.f = std::move(f);
  return rec;
}

NonMembershipEvidence non_membership_evidence(const DerivationPtr& d, const Element& a,
                                              const HarnessOptions& options) {
  const FiniteRing& r = d->ring();
  NonMembershipEvidence ev;
  ev.a = a;
  ev.bound = options.max_degree;
  const SkewPoly xa = SkewPoly::monomial(d, 1, a);

  auto no_inverse = [&](const SkewPoly& p) {
    try {
      return !quasi_inverse_search(p, options.max_degree, options.caps).found();
    } catch (const Error& e) {
      if (e.code() == ErrorCode::SearchCapExceeded) return false;
      throw;
    }
  };

  if (no_inverse(xa)) {
    ev.direct = true;
    ev.found = true;
    ev.multiple = "x*(" + format_element(r, a) + ")";
    return ev;
  }
  std::vector<Element> multipliers;
  if (r.order() <= options.exhaustive_below) {
    for (Element& e : r.elements(options.caps.enumeration)) {
      if (!e.is_zero()) multipliers.push_back(std::move(e));
    }
  } else {
    for (std::size_t i = 0; i < r.rank(); ++i) multipliers.push_back(r.generator(i));
    if (r.unit()) multipliers.push_back(*r.unit());
  }
  for (const Element& m : multipliers) {
    const SkewPoly c = SkewPoly::monomial(d, 0, m);
    if (no_inverse(c * xa)) {
      ev.found = true;
      ev.multiple = "(" + format_element(r, m) + ")*x*(" + format_element(r, a) + ")";
      return ev;
    }
    if (no_inverse(xa * c)) {
      ev.found = true;
      ev.multiple = "x*(" + format_element(r, a) + ")*(" + format_element(r, m) + ")";
      return ev;
    }
  }
  return ev;
}

bool TheoremCertificate::passed() const {
  return s_is_ideal && s_d_stable && s_nil && skew_nilpotence_checked &&
         std::all_of(replay_results.begin(), replay_results.end(),
                     [](const ReplayRecord& r) { return r.passed(); });
}

TheoremCertificate certify_theorem1(const DerivationPtr& d, const HarnessOptions& options,
                                    std::string ring_id, std::string derivation_id) {
  const FiniteRing& r = d->ring();
  std::mt19937_64 rng(options.seed);
  TheoremCertificate cert;
  cert.ring_id = std::move(ring_id);
  cert.derivation_id = std::move(derivation_id);
  cert.nilradical = nilradical(r, options.caps);
  cert.s = d_stable_core(r, *d, cert.nilradical, options.caps);
  cert.s_is_ideal = is_ideal(r, cert.s.elements);
  cert.s_d_stable = is_d_stable(*d, cert.s.elements);
  cert.s_nil = is_nil_ideal(r, cert.s).nil;
  cert.s_nilpotence_index = nilpotence_index(r, cert.s, options.caps).value_or(0);

  try {
    cert.skew = certify_nilpotent_skew_ideal(d, cert.s, options, rng);
    cert.skew_nilpotence_checked = true;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::CertificateFailure) throw;
    cert.skew_failure = e.what();
  }

  cert.replay_exhaustive = cert.s.size() <= options.exhaustive_below;
  for (const Element& a : pick(cert.s.elements.elements(), options, rng)) {
    cert.replay_results.push_back(replay_proof(d, a, cert.s, cert.nilradical, options.caps));
  }

  std::vector<Element> outside;
  for (Element& a : r.elements(options.caps.enumeration)) {
    if (!cert.s.contains(a)) outside.push_back(std::move(a));
  }
  for (const Element& a : pick(outside, options, rng)) {
    cert.nonqr_evidence.push_back(non_membership_evidence(d, a, options));
  }
  return cert;
}

bool SemiprimitivityCertificate::passed() const {
  return s_is_zero && std::all_of(evidence.begin(), evidence.end(),
                                  [](const NonMembershipEvidence& e) { return e.found; });
}

SemiprimitivityCertificate semiprimitivity_certificate(const DerivationPtr& d,
                                                       const HarnessOptions& options) {
  const FiniteRing& r = d->ring();
  const IdealSet n = nilradical(r, options.caps);
  if (!n.is_zero()) {
    throw Error(ErrorCode::PreconditionFailed,
                "nilradical has " + std::to_string(n.size()) + " elements, expected {0}");
  }
  std::mt19937_64 rng(options.seed);
  SemiprimitivityCertificate cert;
  cert.s_is_zero = d_stable_core(r, *d, n, options.caps).is_zero();
  std::vector<Element> nonzero;
  for (Element& a : r.elements(options.caps.enumeration)) {
    if (!a.is_zero()) nonzero.push_back(std::move(a));
  }
  for (const Element& a : pick(nonzero, options, rng)) {
    ++cert.sampled;
    NonMembershipEvidence ev = non_membership_evidence(d, a, options);
    if (!ev.direct) cert.direct_quasi_regular.push_back(a);
    cert.evidence.push_back(std::move(ev));
  }
  return cert;
}

TransferCertificate quotient_transfer_check(const DerivationPtr& d, const Caps& caps) {
  const FiniteRing& r = d->ring();
  TransferCertificate cert;
  cert.nilradical = nilradical(r, caps);
  for (const Element& a : cert.nilradical.elements) {
    const Element da = d->apply(a);
    if (!cert.nilradical.contains(da)) {
      cert.obstruction = a;
      cert.obstruction_image = da;
      break;
    }
  }
  cert.descends = !cert.obstruction.has_value();
  const Quotient q = quotient_ring(r, cert.nilradical, caps);
  cert.quotient_order = q.ring->order();
  if (!cert.descends) return cert;

  for (const Element& lift : q.lifts) cert.quotient_images.push_back(q.project(r, d->apply(lift)));
  const Derivation induced = make_derivation(q.ring, cert.quotient_images);
  cert.quotient_derivation_zero = induced.is_zero();
  cert.projection_commutes = true;
  for (const Element& a : r.elements(caps.enumeration)) {
    if (q.project(r, d->apply(a)) != induced.apply(q.project(r, a))) {
      cert.projection_commutes = false;
      break;
    }
  }
  return cert;
}

}  // namespace skewrad
