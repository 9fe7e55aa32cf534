#include <doctest.h>

#include <random>

#include "skewrad/error.hpp"
#include "skewrad/modular.hpp"

using namespace skewrad;

TEST_CASE("mod and mul_mod") {
  CHECK(mod(-1, 4) == 3);
  CHECK(mod(8, 4) == 0);
  CHECK(mul_mod(Int{1} << 40, Int{1} << 40, (Int{1} << 61) - 1) == Int{1} << 19);  // 2^80 = 2^19 mod 2^61 - 1
  CHECK(gcd(12, 18) == 6);
  CHECK(lcm(4, 6) == 12);
  CHECK_THROWS_AS(lcm(Int{1} << 40, (Int{1} << 40) - 1), Error);
}

TEST_CASE("inverse_mod") {
  CHECK(inverse_mod(3, 7) == 5);
  CHECK_FALSE(inverse_mod(2, 4).has_value());
}

TEST_CASE("binomial rows reduce exactly") {
  CHECK(binomial_row(4, 1000) == std::vector<Int>{1, 4, 6, 4, 1});
  CHECK(binomial_row(4, 4) == std::vector<Int>{1, 0, 2, 0, 1});
  CHECK(binomial_row(0, 2) == std::vector<Int>{1});
  // C(60,30) does not fit in 64 bits before reduction
  const auto row = binomial_row(60, 12);
  CHECK(row[30] == 4);  // C(60,30) = 118264581564861424
}

TEST_CASE("solve: brute-force agreement on random small systems") {
  std::mt19937_64 rng(7);
  const std::vector<Int> choices{2, 3, 4, 6, 8, 9};
  for (int trial = 0; trial < 300; ++trial) {
    ModularSystem s;
    const std::size_t cols = 1 + rng() % 3, rows = 1 + rng() % 3;
    for (std::size_t j = 0; j < cols; ++j) s.col_moduli.push_back(choices[rng() % choices.size()]);
    Int l = 1;
    for (Int m : s.col_moduli) l = lcm(l, m);
    // rows modulo L keep the homomorphism condition when entries are multiples of L/m_j
    for (std::size_t r = 0; r < rows; ++r) {
      s.row_moduli.push_back(l);
      std::vector<Int> row;
      for (std::size_t j = 0; j < cols; ++j) row.push_back(static_cast<Int>(rng() % 5) * (l / s.col_moduli[j]));
      s.coeffs.push_back(row);
      s.rhs.push_back(static_cast<Int>(rng() % static_cast<std::uint64_t>(l)));
    }
    bool brute = false;
    std::vector<Int> y(cols, 0);
    while (true) {
      bool ok = true;
      for (std::size_t r = 0; r < rows && ok; ++r) {
        Int acc = 0;
        for (std::size_t j = 0; j < cols; ++j) acc += s.coeffs[r][j] * y[j];
        ok = mod(acc - s.rhs[r], s.row_moduli[r]) == 0;
      }
      if (ok) brute = true;
      std::size_t pos = 0;
      while (pos < cols && ++y[pos] == s.col_moduli[pos]) y[pos++] = 0;
      if (pos == cols || brute) break;
    }
    const auto sol = solve(s);
    REQUIRE(sol.has_value() == brute);
    if (sol) {
      for (std::size_t r = 0; r < rows; ++r) {
        Int acc = 0;
        for (std::size_t j = 0; j < cols; ++j) acc += s.coeffs[r][j] * (*sol)[j];
        CHECK(mod(acc - s.rhs[r], s.row_moduli[r]) == 0);
      }
    }
  }
}

TEST_CASE("diagonalize keeps already diagonal input") {
  const Diagonalization d = diagonalize({{2, 0}, {0, 4}}, 2);
  CHECK(d.diagonal == std::vector<Int>{2, 4});
}

TEST_CASE("diagonalize: V * Vinv = I") {
  const Diagonalization d = diagonalize({{2, 4, 6}, {1, 3, 5}}, 3);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      Int acc = 0;
      for (std::size_t k = 0; k < 3; ++k) acc += d.column_transform[i][k] * d.inverse_column_transform[k][j];
      CHECK(acc == (i == j ? 1 : 0));
    }
  }
}
