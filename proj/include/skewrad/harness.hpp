#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "skewrad/derivation.hpp"
#include "skewrad/finring.hpp"
#include "skewrad/skewpoly.hpp"

namespace skewrad {

struct HarnessOptions {
  Caps caps;
  std::size_t max_degree = 8;          // bound for quasi-inverse searches
  std::size_t exhaustive_below = 64;   // sets up to this size are scanned exhaustively
  std::size_t samples = 1000;          // sample count above that size
  std::size_t product_degree = 4;      // degree bound for S[x;D] product checks
  std::uint64_t product_budget = 20000;  // exhaustive monomial tuples before sampling
  std::size_t qinv_samples = 100;      // members of S[x;D] given a quasi-inverse check
  std::uint64_t seed = 0;
};

/// The ideal S = J(R[x;D]) ∩ R for finite R: the largest D-stable ideal inside
/// the nilradical.
IdealSet compute_S(const FiniteRing& ring, const Derivation& d, const Caps& caps = {});

struct SkewNilpotenceCertificate {
  unsigned nilpotence_index = 1;
  std::size_t monomials = 0;
  std::uint64_t products_checked = 0;
  bool exhaustive = true;
  std::size_t quasi_inverses_checked = 0;
};

/// Every product of k polynomials with coefficients in S is zero (k the
/// nilpotence index of S), and the geometric-series quasi-inverse works for
/// sampled members of S[x;D]. Throws CertificateFailure with a counterexample.
SkewNilpotenceCertificate certify_nilpotent_skew_ideal(const DerivationPtr& d, const IdealSet& s,
                                                       const HarnessOptions& options,
                                                       std::mt19937_64& rng);

struct ReplayRecord {
  Element a;
  std::optional<SkewPoly> f;  // quasi-inverse of x*a
  std::size_t n = 0;          // degree of f (0 for f = 0)
  std::vector<std::pair<std::string, bool>> checks;

  bool passed() const;
};

/// Builds f with f o (xa) = (xa) o f = 0 and checks the coefficient equations
/// it must satisfy: b_0 = 0, b_n a = 0, b_i - b_{i-1}a + D(b_i)a = 0 for
/// 2 <= i <= n, b_1 + a + D(b_1)a = 0, f(xa) = (xa)f, b_{n-j+1}a^j in N for
/// j = 1..n and a^{n+1} in N.
ReplayRecord replay_proof(const DerivationPtr& d, const Element& a, const IdealSet& s,
                          const IdealSet& nil, const Caps& caps = {});

/// Bounded evidence that the constant a is not in J(R[x;D]): some multiple of
/// it that is not quasi-regular up to the search bound.
struct NonMembershipEvidence {
  Element a;
  std::size_t bound = 0;
  bool direct = false;     // x*a itself had no quasi-inverse up to the bound
  std::string multiple;    // the polynomial that had none, e.g. "x*a*(g2)"
  bool found = false;
};

NonMembershipEvidence non_membership_evidence(const DerivationPtr& d, const Element& a,
                                              const HarnessOptions& options);

struct TheoremCertificate {
  std::string ring_id;
  std::string derivation_id;
  IdealSet nilradical;
  IdealSet s;
  unsigned s_nilpotence_index = 1;
  bool s_is_ideal = false;
  bool s_d_stable = false;
  bool s_nil = false;
  bool skew_nilpotence_checked = false;
  SkewNilpotenceCertificate skew;
  std::string skew_failure;
  std::vector<ReplayRecord> replay_results;
  bool replay_exhaustive = true;
  std::vector<NonMembershipEvidence> nonqr_evidence;

  bool passed() const;
};

TheoremCertificate certify_theorem1(const DerivationPtr& d, const HarnessOptions& options,
                                    std::string ring_id = {}, std::string derivation_id = {});

struct SemiprimitivityCertificate {
  bool s_is_zero = false;
  std::size_t sampled = 0;
  /// a where x*a itself had a quasi-inverse within the bound.
  std::vector<Element> direct_quasi_regular;
  std::vector<NonMembershipEvidence> evidence;

  bool all_direct_not_found() const { return direct_quasi_regular.empty(); }
  bool passed() const;
};

/// Requires N(R) = 0 (PreconditionFailed otherwise).
SemiprimitivityCertificate semiprimitivity_certificate(const DerivationPtr& d,
                                                       const HarnessOptions& options);

struct TransferCertificate {
  IdealSet nilradical;
  std::size_t quotient_order = 0;
  bool descends = false;
  std::optional<Element> obstruction;  // a in N with D(a) outside N
  std::optional<Element> obstruction_image;
  std::vector<Element> quotient_images;  // D on R/N generators when it descends
  bool quotient_derivation_zero = false;
  bool projection_commutes = false;  // pi(D(a)) = Dbar(pi(a)) for all a
};

TransferCertificate quotient_transfer_check(const DerivationPtr& d, const Caps& caps = {});

}  // namespace skewrad
