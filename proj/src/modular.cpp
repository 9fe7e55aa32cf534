#include "skewrad/modular.hpp"

#include <algorithm>
#include <cstdlib>
#include <utility>

#include "skewrad/error.hpp"

namespace skewrad {

namespace {

constexpr Int kLimit = Int{1} << 62;

Int checked(__int128 value) {
  if (value >= kLimit || value <= -kLimit) {
    throw Error(ErrorCode::SizeCapExceeded, "integer entry overflow during elimination");
  }
  return static_cast<Int>(value);
}

struct PrimePower {
  Int prime;
  int exponent;
  Int value;
};

std::vector<PrimePower> factor(Int n) {
  std::vector<PrimePower> out;
  for (Int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    PrimePower pp{p, 0, 1};
    while (n % p == 0) {
      n /= p;
      ++pp.exponent;
      pp.value *= p;
    }
    out.push_back(pp);
  }
  if (n > 1) out.push_back({n, 1, n});
  return out;
}

int valuation(Int v, const PrimePower& pp) {
  if (v == 0) return pp.exponent;
  int k = 0;
  while (v % pp.prime == 0) {
    v /= pp.prime;
    ++k;
  }
  return k;
}

Int power(Int base, int e) {
  Int r = 1;
  while (e-- > 0) r *= base;
  return r;
}

// Solve A y = b over Z_q with q a prime power. Entries already reduced.
std::optional<std::vector<Int>> solve_local(IntMatrix a, std::vector<Int> b,
                                            std::size_t cols, const PrimePower& pp) {
  const Int q = pp.value;
  const std::size_t rows = a.size();
  IntMatrix v(cols, std::vector<Int>(cols, 0));
  for (std::size_t i = 0; i < cols; ++i) v[i][i] = 1;

  std::vector<Int> pivots;
  std::size_t rank = 0;
  for (; rank < std::min(rows, cols); ++rank) {
    int best = pp.exponent;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = rank; i < rows && best > 0; ++i) {
      for (std::size_t j = rank; j < cols; ++j) {
        if (a[i][j] == 0) continue;
        int val = valuation(a[i][j], pp);
        if (val < best) {
          best = val;
          bi = i;
          bj = j;
          if (best == 0) break;
        }
      }
    }
    if (best == pp.exponent) break;
    std::swap(a[rank], a[bi]);
    std::swap(b[rank], b[bi]);
    if (bj != rank) {
      for (auto& row : a) std::swap(row[rank], row[bj]);
      for (auto& row : v) std::swap(row[rank], row[bj]);
    }
    const Int scale = power(pp.prime, best);
    const Int unit_inv = *inverse_mod(a[rank][rank] / scale, q);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank || a[i][rank] == 0) continue;
      const Int f = mul_mod(a[i][rank] / scale, unit_inv, q);
      for (std::size_t j = rank; j < cols; ++j) {
        a[i][j] = mod(a[i][j] - mul_mod(f, a[rank][j], q), q);
      }
      b[i] = mod(b[i] - mul_mod(f, b[rank], q), q);
    }
    for (std::size_t j = rank + 1; j < cols; ++j) {
      if (a[rank][j] == 0) continue;
      const Int f = mul_mod(a[rank][j] / scale, unit_inv, q);
      a[rank][j] = 0;
      for (std::size_t i = 0; i < cols; ++i) {
        v[i][j] = mod(v[i][j] - mul_mod(f, v[i][rank], q), q);
      }
    }
    pivots.push_back(best);
  }

  for (std::size_t i = rank; i < rows; ++i) {
    if (b[i] != 0) return std::nullopt;
  }
  std::vector<Int> z(cols, 0);
  for (std::size_t t = 0; t < rank; ++t) {
    const Int scale = power(pp.prime, pivots[t]);
    if (b[t] % scale != 0) return std::nullopt;
    const Int unit_inv = *inverse_mod(a[t][t] / scale, q);
    z[t] = mul_mod(b[t] / scale, unit_inv, q);
  }
  std::vector<Int> y(cols, 0);
  for (std::size_t i = 0; i < cols; ++i) {
    Int acc = 0;
    for (std::size_t j = 0; j < rank; ++j) acc = mod(acc + mul_mod(v[i][j], z[j], q), q);
    y[i] = acc;
  }
  return y;
}

}  // namespace

Int mod(Int value, Int modulus) {
  Int r = value % modulus;
  return r < 0 ? r + modulus : r;
}

Int mul_mod(Int a, Int b, Int modulus) {
  return static_cast<Int>(mod(static_cast<Int>((static_cast<__int128>(a) * b) %
                                                modulus),
                              modulus));
}

Int gcd(Int a, Int b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

Int lcm(Int a, Int b) {
  if (a == 0 || b == 0) return 0;
  return checked(static_cast<__int128>(a / gcd(a, b)) * b);
}

std::optional<Int> inverse_mod(Int value, Int modulus) {
  if (modulus == 1) return 0;
  Int old_r = mod(value, modulus), r = modulus;
  Int old_s = 1, s = 0;
  while (r != 0) {
    const Int quotient = old_r / r;
    old_r = std::exchange(r, old_r - quotient * r);
    old_s = std::exchange(s, old_s - quotient * s);
  }
  if (old_r != 1) return std::nullopt;
  return mod(old_s, modulus);
}

std::vector<Int> binomial_row(unsigned n, Int modulus) {
  std::vector<Int> row{mod(1, modulus)};
  for (unsigned i = 1; i <= n; ++i) {
    std::vector<Int> next(i + 1, 0);
    next[0] = row[0];
    next[i] = row[i - 1];
    for (unsigned j = 1; j < i; ++j) next[j] = mod(row[j - 1] + row[j], modulus);
    row = std::move(next);
  }
  return row;
}

std::optional<std::vector<Int>> solve(const ModularSystem& system) {
  const std::size_t rows = system.coeffs.size();
  const std::size_t cols = system.col_moduli.size();
  if (system.row_moduli.size() != rows || system.rhs.size() != rows) {
    throw Error(ErrorCode::DimensionMismatch, "modular system row count mismatch");
  }
  Int modulus = 1;
  for (Int m : system.row_moduli) modulus = lcm(modulus, m);
  for (Int m : system.col_moduli) modulus = lcm(modulus, m);

  std::vector<Int> solution(cols, 0);
  Int combined_modulus = 1;
  for (const PrimePower& pp : factor(modulus)) {
    IntMatrix a(rows, std::vector<Int>(cols, 0));
    std::vector<Int> b(rows, 0);
    for (std::size_t r = 0; r < rows; ++r) {
      const Int scale = mod(modulus / system.row_moduli[r], pp.value);
      for (std::size_t j = 0; j < cols; ++j) {
        a[r][j] = mul_mod(mod(system.coeffs[r][j], pp.value), scale, pp.value);
      }
      b[r] = mul_mod(mod(system.rhs[r], pp.value), scale, pp.value);
    }
    auto local = solve_local(std::move(a), std::move(b), cols, pp);
    if (!local) return std::nullopt;
    // CRT: x = s (mod M), x = t (mod q)  =>  x = s + M * ((t - s) * M^-1 mod q)
    const Int m_inv = *inverse_mod(mod(combined_modulus, pp.value), pp.value);
    for (std::size_t j = 0; j < cols; ++j) {
      const Int lift = mul_mod(mod((*local)[j] - solution[j], pp.value), m_inv, pp.value);
      solution[j] = checked(static_cast<__int128>(combined_modulus) * lift + solution[j]);
    }
    combined_modulus *= pp.value;
  }
  for (std::size_t j = 0; j < cols; ++j) solution[j] = mod(solution[j], system.col_moduli[j]);

  for (std::size_t r = 0; r < rows; ++r) {
    const Int m = system.row_moduli[r];
    Int acc = 0;
    for (std::size_t j = 0; j < cols; ++j) acc = mod(acc + mul_mod(system.coeffs[r][j], solution[j], m), m);
    if (acc != mod(system.rhs[r], m)) {
      throw Error(ErrorCode::InternalInconsistency,
                  "modular solve produced a non-solution; coefficient matrix is not a homomorphism");
    }
  }
  return solution;
}

Diagonalization diagonalize(IntMatrix m, std::size_t cols) {
  const std::size_t rows = m.size();
  Diagonalization out;
  out.diagonal.assign(cols, 0);
  out.column_transform.assign(cols, std::vector<Int>(cols, 0));
  out.inverse_column_transform.assign(cols, std::vector<Int>(cols, 0));
  for (std::size_t i = 0; i < cols; ++i) {
    out.column_transform[i][i] = 1;
    out.inverse_column_transform[i][i] = 1;
  }
  auto& v = out.column_transform;
  auto& vinv = out.inverse_column_transform;

  auto swap_cols = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (auto& row : m) std::swap(row[a], row[b]);
    for (auto& row : v) std::swap(row[a], row[b]);
    std::swap(vinv[a], vinv[b]);
  };
  // col_j -= f * col_t
  auto sub_col = [&](std::size_t j, std::size_t t, Int f) {
    for (auto& row : m) row[j] = checked(static_cast<__int128>(row[j]) - static_cast<__int128>(f) * row[t]);
    for (auto& row : v) row[j] = checked(static_cast<__int128>(row[j]) - static_cast<__int128>(f) * row[t]);
    for (std::size_t c = 0; c < cols; ++c) {
      vinv[t][c] = checked(static_cast<__int128>(vinv[t][c]) + static_cast<__int128>(f) * vinv[j][c]);
    }
  };

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    std::size_t first = cols;
    for (std::size_t j = t; j < cols && first == cols; ++j) {
      for (std::size_t i = t; i < rows; ++i) {
        if (m[i][j] != 0) {
          first = j;
          break;
        }
      }
    }
    if (first == cols) break;
    swap_cols(t, first);

    while (true) {
      // smallest nonzero entry in column t (rows >= t) or row t (cols >= t)
      Int best = 0;
      std::size_t bi = t, bj = t;
      for (std::size_t i = t; i < rows; ++i) {
        if (m[i][t] != 0 && (best == 0 || std::llabs(m[i][t]) < best)) {
          best = std::llabs(m[i][t]);
          bi = i;
          bj = t;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] != 0 && std::llabs(m[t][j]) < best) {
          best = std::llabs(m[t][j]);
          bi = t;
          bj = j;
        }
      }
      std::swap(m[t], m[bi]);
      swap_cols(t, bj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        const Int f = m[i][t] / m[t][t];
        for (std::size_t j = t; j < cols; ++j) {
          m[i][j] = checked(static_cast<__int128>(m[i][j]) - static_cast<__int128>(f) * m[t][j]);
        }
        if (m[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        sub_col(j, t, m[t][j] / m[t][t]);
        if (m[t][j] != 0) clean = false;
      }
      if (clean) break;
    }
    out.diagonal[t] = std::llabs(m[t][t]);
  }
  return out;
}

}  // namespace skewrad
