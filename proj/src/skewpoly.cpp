#include "skewrad/skewpoly.hpp"

#include "skewrad/error.hpp"

namespace skewrad {

SkewPoly::SkewPoly(DerivationPtr context, std::vector<Element> coeffs)
    : context_(std::move(context)), coeffs_(std::move(coeffs)) {
  if (!context_) throw Error(ErrorCode::ContextMismatch, "polynomial without a ring context");
  for (const Element& c : coeffs_) context_->ring().require_member(c);
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

SkewPoly SkewPoly::zero(DerivationPtr context) { return SkewPoly(std::move(context), {}); }

SkewPoly SkewPoly::monomial(DerivationPtr context, std::size_t i, Element a) {
  std::vector<Element> coeffs(i + 1, context->ring().zero());
  coeffs[i] = std::move(a);
  return SkewPoly(std::move(context), std::move(coeffs));
}

std::optional<std::size_t> SkewPoly::degree() const {
  if (coeffs_.empty()) return std::nullopt;
  return coeffs_.size() - 1;
}

Element SkewPoly::coefficient(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : ring().zero();
}

bool SkewPoly::operator==(const SkewPoly& other) const {
  return (context_ == other.context_ || *context_ == *other.context_) && coeffs_ == other.coeffs_;
}

void require_same_context(const SkewPoly& p, const SkewPoly& q) {
  if (p.context() != q.context() && !(p.derivation() == q.derivation())) {
    throw Error(ErrorCode::ContextMismatch, "polynomials live in different R[x;D]");
  }
}

SkewPoly operator+(const SkewPoly& p, const SkewPoly& q) {
  require_same_context(p, q);
  const FiniteRing& r = p.ring();
  std::vector<Element> out(std::max(p.coeffs().size(), q.coeffs().size()), r.zero());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = r.add(p.coefficient(i), q.coefficient(i));
  return SkewPoly(p.context(), std::move(out));
}

SkewPoly operator-(const SkewPoly& p) {
  std::vector<Element> out;
  for (const Element& c : p.coeffs()) out.push_back(p.ring().neg(c));
  return SkewPoly(p.context(), std::move(out));
}

SkewPoly operator-(const SkewPoly& p, const SkewPoly& q) { return p + (-q); }

SkewPoly operator*(const SkewPoly& p, const SkewPoly& q) {
  require_same_context(p, q);
  if (p.is_zero() || q.is_zero()) return SkewPoly::zero(p.context());
  const FiniteRing& r = p.ring();
  const Derivation& d = p.derivation();
  const std::size_t dp = *p.degree(), dq = *q.degree();

  std::vector<std::vector<Int>> binom;
  for (unsigned j = 0; j <= dq; ++j) binom.push_back(binomial_row(j, r.exponent()));

  std::vector<Element> out(dp + dq + 1, r.zero());
  for (std::size_t i = 0; i <= dp; ++i) {
    const Element& a = p.coeffs()[i];
    if (a.is_zero()) continue;
    // D^l(a) for l = 0..dq
    std::vector<Element> derived{a};
    for (std::size_t l = 1; l <= dq; ++l) derived.push_back(d.apply(derived.back()));
    for (std::size_t j = 0; j <= dq; ++j) {
      const Element& b = q.coeffs()[j];
      if (b.is_zero()) continue;
      // (x^i a)(x^j b) = x^i (a x^j) b
      for (std::size_t l = 0; l <= j; ++l) {
        if (derived[l].is_zero()) break;
        const Int sign_binom = (l % 2 == 0) ? binom[j][l] : -binom[j][l];
        const Element term = r.scale(sign_binom, r.mul(derived[l], b));
        out[i + j - l] = r.add(out[i + j - l], term);
      }
    }
  }
  return SkewPoly(p.context(), std::move(out));
}

SkewPoly move_coeff(const DerivationPtr& context, const Element& a, unsigned r) {
  const FiniteRing& ring = context->ring();
  ring.require_member(a);
  const std::vector<Int> binom = binomial_row(r, ring.exponent());
  std::vector<Element> out(r + 1, ring.zero());
  Element derived = a;
  for (unsigned l = 0; l <= r; ++l) {
    if (l > 0) derived = context->apply(derived);
    const Int coeff = (l % 2 == 0) ? binom[l] : -binom[l];
    out[r - l] = ring.scale(coeff, derived);
  }
  return SkewPoly(context, std::move(out));
}

std::string format_poly(const SkewPoly& p) {
  std::string out;
  for (std::size_t i = p.coeffs().size(); i-- > 0;) {
    const Element& c = p.coeffs()[i];
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    if (i > 0) out += "x^" + std::to_string(i) + "*";
    out += "(" + format_element(p.ring(), c) + ")";
  }
  return out.empty() ? "0" : out;
}

SkewPoly circle(const SkewPoly& p, const SkewPoly& q) { return p + q - p * q; }

SkewPoly power(const SkewPoly& p, unsigned n) {
  if (n == 0) throw Error(ErrorCode::ShapeError, "p^0 is undefined without a unit");
  SkewPoly out = p;
  for (unsigned i = 1; i < n; ++i) out = out * p;
  return out;
}

SkewPoly quasi_inverse_nilpotent(const SkewPoly& p, unsigned k) {
  if (k == 0) throw Error(ErrorCode::NotNilpotent, "nilpotence index must be positive");
  SkewPoly sum = SkewPoly::zero(p.context());
  SkewPoly term = p;
  for (unsigned i = 1; i < k; ++i) {
    sum = sum + term;
    term = term * p;
  }
  if (!term.is_zero()) {
    throw Error(ErrorCode::NotNilpotent, "p^" + std::to_string(k) + " is not zero");
  }
  return -sum;
}

QuasiInverseSearch quasi_inverse_search(const SkewPoly& p, std::size_t max_degree, const Caps& caps) {
  QuasiInverseSearch result;
  result.bound = max_degree;
  if (p.is_zero()) {
    result.inverse = SkewPoly::zero(p.context());
    return result;
  }
  const FiniteRing& r = p.ring();
  const std::size_t k = r.rank();
  const std::size_t out_len = max_degree + *p.degree() + 1;
  const std::size_t cols = (max_degree + 1) * k;
  const std::size_t rows = 2 * out_len * k;
  if (static_cast<std::uint64_t>(rows) * cols > caps.linear_entries) {
    throw Error(ErrorCode::SearchCapExceeded,
                "quasi-inverse system would have " + std::to_string(rows) + " x " +
                    std::to_string(cols) + " entries");
  }

  ModularSystem system;
  system.coeffs.assign(rows, std::vector<Int>(cols, 0));
  for (std::size_t e = 0; e < 2; ++e) {
    for (std::size_t t = 0; t < out_len; ++t) {
      for (std::size_t c = 0; c < k; ++c) {
        system.row_moduli.push_back(r.moduli()[c]);
        system.rhs.push_back(mod(-p.coefficient(t).residues[c], r.moduli()[c]));
      }
    }
  }
  for (std::size_t i = 0; i <= max_degree; ++i) {
    for (std::size_t c = 0; c < k; ++c) {
      const std::size_t col = i * k + c;
      system.col_moduli.push_back(r.moduli()[c]);
      const SkewPoly u = SkewPoly::monomial(p.context(), i, r.generator(c));
      const SkewPoly images[2] = {u - u * p, u - p * u};
      for (std::size_t e = 0; e < 2; ++e) {
        for (std::size_t t = 0; t < out_len; ++t) {
          const Element coeff = images[e].coefficient(t);
          for (std::size_t c2 = 0; c2 < k; ++c2) {
            system.coeffs[(e * out_len + t) * k + c2][col] = coeff.residues[c2];
          }
        }
      }
    }
  }

  const auto solution = solve(system);
  if (!solution) return result;
  std::vector<Element> coeffs;
  for (std::size_t i = 0; i <= max_degree; ++i) {
    coeffs.emplace_back(std::vector<Int>(solution->begin() + static_cast<std::ptrdiff_t>(i * k),
                                         solution->begin() + static_cast<std::ptrdiff_t>((i + 1) * k)));
  }
  SkewPoly f(p.context(), std::move(coeffs));
  if (!circle(f, p).is_zero() || !circle(p, f).is_zero()) {
    throw Error(ErrorCode::InternalInconsistency, "linear solve returned a non-quasi-inverse");
  }
  result.inverse = std::move(f);
  return result;
}

}  // namespace skewrad
