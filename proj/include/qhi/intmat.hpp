#pragma once

// Exact integer linear algebra on arbitrary-size integers: column-style
// Hermite reduction, integer linear solve, kernel bases, Smith normal form.

#include <gmpxx.h>

#include <optional>
#include <vector>

namespace qhi::intmat {

using Int = mpz_class;

struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<Int> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
  Int& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  const Int& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

  static Mat identity(int n);
};

// Column Hermite form: returns (H, U) with A * U = H, U unimodular and H in
// column echelon form (pivots walk down and right).
void column_hnf(const Mat& A, Mat& H, Mat& U);

// One integer solution of A x = b, or nullopt when none exists.
std::optional<std::vector<Int>> solve(const Mat& A, const std::vector<Int>& b);

// Basis of the integer kernel {x : A x = 0}.
std::vector<std::vector<Int>> kernel_basis(const Mat& A);

// Nonzero diagonal entries of the Smith normal form of A.
std::vector<Int> smith_diagonal(Mat A);

// Solve M x = rhs over GF(2). Returns one solution or nullopt.
std::optional<std::vector<int>> solve_gf2(std::vector<std::vector<int>> M, std::vector<int> rhs);

}  // namespace qhi::intmat
