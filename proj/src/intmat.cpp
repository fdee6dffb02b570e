#include "qhi/intmat.hpp"

namespace qhi::intmat {

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

namespace {

void swap_cols(Mat& m, int c1, int c2) {
  for (int r = 0; r < m.rows; ++r) std::swap(m.at(r, c1), m.at(r, c2));
}

// col[c2] -= q * col[c1]
void axpy_col(Mat& m, int c1, int c2, const Int& q) {
  for (int r = 0; r < m.rows; ++r) m.at(r, c2) -= q * m.at(r, c1);
}

void negate_col(Mat& m, int c) {
  for (int r = 0; r < m.rows; ++r) m.at(r, c) = -m.at(r, c);
}

}  // namespace

void column_hnf(const Mat& A, Mat& H, Mat& U) {
  H = A;
  U = Mat::identity(A.cols);
  int pivot_col = 0;
  for (int r = 0; r < H.rows && pivot_col < H.cols; ++r) {
    // Eliminate across columns pivot_col..cols-1 in row r by gcd steps.
    while (true) {
      int best = -1;
      for (int c = pivot_col; c < H.cols; ++c) {
        if (H.at(r, c) != 0 && (best == -1 || mpz_cmpabs(H.at(r, c).get_mpz_t(), H.at(r, best).get_mpz_t()) < 0))
          best = c;
      }
      if (best == -1) break;  // row r is zero on the active columns
      if (best != pivot_col) {
        swap_cols(H, best, pivot_col);
        swap_cols(U, best, pivot_col);
      }
      bool reduced = true;
      for (int c = pivot_col + 1; c < H.cols; ++c) {
        if (H.at(r, c) == 0) continue;
        Int q = H.at(r, c) / H.at(r, pivot_col);
        if (q != 0) {
          axpy_col(H, pivot_col, c, q);
          axpy_col(U, pivot_col, c, q);
        }
        if (H.at(r, c) != 0) reduced = false;
      }
      if (reduced) break;
    }
    if (H.at(r, pivot_col) != 0) {
      if (H.at(r, pivot_col) < 0) {
        negate_col(H, pivot_col);
        negate_col(U, pivot_col);
      }
      ++pivot_col;
    }
  }
}

std::optional<std::vector<Int>> solve(const Mat& A, const std::vector<Int>& b) {
  Mat H, U;
  column_hnf(A, H, U);
  std::vector<Int> y(static_cast<size_t>(A.cols), Int(0));
  int pc = 0;
  for (int r = 0; r < A.rows; ++r) {
    Int acc(0);
    for (int c = 0; c < pc; ++c) acc += H.at(r, c) * y[static_cast<size_t>(c)];
    Int rem = b[static_cast<size_t>(r)] - acc;
    if (pc < H.cols && H.at(r, pc) != 0) {
      Int q, rr;
      mpz_fdiv_qr(q.get_mpz_t(), rr.get_mpz_t(), rem.get_mpz_t(), H.at(r, pc).get_mpz_t());
      if (rr != 0) return std::nullopt;
      y[static_cast<size_t>(pc)] = q;
      ++pc;
    } else if (rem != 0) {
      return std::nullopt;
    }
  }
  std::vector<Int> x(static_cast<size_t>(A.cols), Int(0));
  for (int i = 0; i < A.cols; ++i) {
    Int acc(0);
    for (int j = 0; j < A.cols; ++j) acc += U.at(i, j) * y[static_cast<size_t>(j)];
    x[static_cast<size_t>(i)] = acc;
  }
  return x;
}

std::vector<std::vector<Int>> kernel_basis(const Mat& A) {
  Mat H, U;
  column_hnf(A, H, U);
  std::vector<std::vector<Int>> basis;
  for (int c = 0; c < H.cols; ++c) {
    bool zero = true;
    for (int r = 0; r < H.rows; ++r)
      if (H.at(r, c) != 0) {
        zero = false;
        break;
      }
    if (!zero) continue;
    std::vector<Int> v(static_cast<size_t>(A.cols));
    for (int r = 0; r < A.cols; ++r) v[static_cast<size_t>(r)] = U.at(r, c);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Int> smith_diagonal(Mat A) {
  std::vector<Int> diag;
  int top = 0;
  while (top < A.rows && top < A.cols) {
    // Find smallest nonzero entry in the remaining block.
    int pr = -1, pc = -1;
    for (int r = top; r < A.rows; ++r)
      for (int c = top; c < A.cols; ++c)
        if (A.at(r, c) != 0 &&
            (pr == -1 || mpz_cmpabs(A.at(r, c).get_mpz_t(), A.at(pr, pc).get_mpz_t()) < 0)) {
          pr = r;
          pc = c;
        }
    if (pr == -1) break;
    for (int c = top; c < A.cols; ++c) std::swap(A.at(top, c), A.at(pr, c));
    for (int r = top; r < A.rows; ++r) std::swap(A.at(r, top), A.at(r, pc));

    bool clean = true;
    for (int r = top + 1; r < A.rows; ++r) {
      Int q = A.at(r, top) / A.at(top, top);
      if (q != 0)
        for (int c = top; c < A.cols; ++c) A.at(r, c) -= q * A.at(top, c);
      if (A.at(r, top) != 0) clean = false;
    }
    for (int c = top + 1; c < A.cols; ++c) {
      Int q = A.at(top, c) / A.at(top, top);
      if (q != 0)
        for (int r = top; r < A.rows; ++r) A.at(r, c) -= q * A.at(r, top);
      if (A.at(top, c) != 0) clean = false;
    }
    if (!clean) continue;  // repeat elimination at the same corner
    Int d = A.at(top, top);
    if (d < 0) d = -d;
    diag.push_back(d);
    ++top;
  }
  // Fix divisibility chain d1 | d2 | ...
  for (size_t i = 0; i + 1 < diag.size(); ++i)
    for (size_t j = i + 1; j < diag.size(); ++j) {
      Int g, l;
      mpz_gcd(g.get_mpz_t(), diag[i].get_mpz_t(), diag[j].get_mpz_t());
      if (g == diag[i]) continue;
      l = diag[i] / g * diag[j];
      diag[i] = g;
      diag[j] = l;
    }
  return diag;
}

std::optional<std::vector<int>> solve_gf2(std::vector<std::vector<int>> M, std::vector<int> rhs) {
  const size_t rows = M.size();
  const size_t cols = rows == 0 ? 0 : M[0].size();
  std::vector<int> pivot_of_row(rows, -1);
  size_t rank = 0;
  for (size_t c = 0; c < cols && rank < rows; ++c) {
    size_t sel = rank;
    while (sel < rows && M[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(M[sel], M[rank]);
    std::swap(rhs[sel], rhs[rank]);
    for (size_t r = 0; r < rows; ++r) {
      if (r != rank && M[r][c]) {
        for (size_t k = c; k < cols; ++k) M[r][k] ^= M[rank][k];
        rhs[r] ^= rhs[rank];
      }
    }
    pivot_of_row[rank] = static_cast<int>(c);
    ++rank;
  }
  for (size_t r = rank; r < rows; ++r)
    if (rhs[r]) return std::nullopt;
  std::vector<int> x(cols, 0);
  for (size_t r = 0; r < rank; ++r) x[static_cast<size_t>(pivot_of_row[r])] = rhs[r];
  return x;
}

}  // namespace qhi::intmat
