#pragma once

#include <cstdint>
#include <optional>
#include <vector>

// Integer helpers and linear algebra over finite abelian groups
// Z_{m_1} x ... x Z_{m_k}. Everything here is exact.

namespace skewrad {

using Int = std::int64_t;
using IntMatrix = std::vector<std::vector<Int>>;

/// Least non-negative residue of value modulo modulus (modulus >= 1).
Int mod(Int value, Int modulus);

/// (a * b) mod modulus without overflow for moduli below 2^62.
Int mul_mod(Int a, Int b, Int modulus);

Int gcd(Int a, Int b);

/// Throws SizeCapExceeded if the lcm does not fit comfortably in 62 bits.
Int lcm(Int a, Int b);

/// Inverse of a unit modulo modulus; nullopt if gcd(value, modulus) != 1.
std::optional<Int> inverse_mod(Int value, Int modulus);

/// Row n of Pascal's triangle reduced modulo `modulus`: C(n, 0..n) mod modulus.
/// Exact for integer scaling in any group whose exponent divides `modulus`.
std::vector<Int> binomial_row(unsigned n, Int modulus);

/// A linear system sum_j coeffs[r][j] * y_j = rhs[r] (mod row_moduli[r]) with
/// unknowns y_j in Z_{col_moduli[j]}.
///
/// The coefficient matrix must describe a group homomorphism, i.e.
/// row_moduli[r] divides coeffs[r][j] * col_moduli[j]. Systems built from the
/// images of additive generators always satisfy this.
struct ModularSystem {
  std::vector<Int> row_moduli;
  std::vector<Int> col_moduli;
  IntMatrix coeffs;
  std::vector<Int> rhs;
};

/// Some solution with y_j reduced into [0, col_moduli[j]), or nullopt when the
/// system is inconsistent. Solved prime power by prime power with pivots of
/// minimal valuation, then recombined by CRT.
std::optional<std::vector<Int>> solve(const ModularSystem& system);

/// Diagonal form of an integer matrix under unimodular row and column
/// operations: diag = U * M * V. Only V and its inverse are tracked.
struct Diagonalization {
  std::vector<Int> diagonal;  // one entry per column; 0 where no pivot
  IntMatrix column_transform;          // V   (cols x cols)
  IntMatrix inverse_column_transform;  // V^-1
};

Diagonalization diagonalize(IntMatrix matrix, std::size_t columns);

}  // namespace skewrad
