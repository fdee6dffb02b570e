#include <random>

#include "doctest_main.hpp"
#include "qhi/intmat.hpp"

using namespace qhi::intmat;

TEST_CASE("column hnf solves integer systems") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> d(-4, 4);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 3 + static_cast<int>(rng() % 3);  // rows
    const int n = 3 + static_cast<int>(rng() % 3);  // cols
    Mat A(m, n);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < n; ++c) A.at(r, c) = d(rng);
    // Construct a solvable system: b = A * x0.
    std::vector<Int> x0(static_cast<size_t>(n));
    for (auto& v : x0) v = d(rng);
    std::vector<Int> b(static_cast<size_t>(m), Int(0));
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < n; ++c) b[static_cast<size_t>(r)] += A.at(r, c) * x0[static_cast<size_t>(c)];
    auto x = solve(A, b);
    REQUIRE(x.has_value());
    for (int r = 0; r < m; ++r) {
      Int acc(0);
      for (int c = 0; c < n; ++c) acc += A.at(r, c) * (*x)[static_cast<size_t>(c)];
      CHECK(acc == b[static_cast<size_t>(r)]);
    }
  }
}

TEST_CASE("solve detects infeasible systems") {
  Mat A(1, 1);
  A.at(0, 0) = 2;
  CHECK(!solve(A, {Int(3)}).has_value());
  CHECK(solve(A, {Int(4)}).has_value());
}

TEST_CASE("kernel basis") {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int trial = 0; trial < 100; ++trial) {
    Mat A(2, 4);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 4; ++c) A.at(r, c) = d(rng);
    auto basis = kernel_basis(A);
    for (const auto& v : basis) {
      for (int r = 0; r < 2; ++r) {
        Int acc(0);
        for (int c = 0; c < 4; ++c) acc += A.at(r, c) * v[static_cast<size_t>(c)];
        CHECK(acc == 0);
      }
    }
  }
}

TEST_CASE("smith diagonal") {
  // diag(2,6) ~ SNF (2,6); antidiagonal-ish example with known SNF
  Mat A(2, 2);
  A.at(0, 0) = 2;
  A.at(1, 1) = 6;
  auto d1 = smith_diagonal(A);
  REQUIRE(d1.size() == 2);
  CHECK(d1[0] == 2);
  CHECK(d1[1] == 6);

  Mat B(2, 2);
  B.at(0, 0) = 2;
  B.at(0, 1) = 4;
  B.at(1, 0) = 6;
  B.at(1, 1) = 8;
  // det = -8, gcd of entries 2 -> SNF (2, 4)
  auto d2 = smith_diagonal(B);
  REQUIRE(d2.size() == 2);
  CHECK(d2[0] == 2);
  CHECK(d2[1] == 4);
}

TEST_CASE("gf2 solve") {
  std::vector<std::vector<int>> M{{1, 1, 0}, {0, 1, 1}};
  auto x = solve_gf2(M, {1, 0});
  REQUIRE(x.has_value());
  CHECK(((*x)[0] ^ (*x)[1]) == 1);
  CHECK(((*x)[1] ^ (*x)[2]) == 0);
  auto none = solve_gf2({{1, 1}, {1, 1}}, {1, 0});
  CHECK(!none.has_value());
}
