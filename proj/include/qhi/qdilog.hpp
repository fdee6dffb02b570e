#pragma once

// The N^2 x N^2 quantum dilogarithm tensors (basic and symmetrized), the S/T
// symmetry matrices, and the identity verifiers (pentagon, symmetry,
// unitarity, factorization, Clebsch-Gordan oracle).

#include <array>
#include <optional>

#include "qhi/cyclo.hpp"
#include "qhi/decor.hpp"

namespace qhi::qd {

using cyclo::RootContext;

// Tensor with entries E(alpha, beta, gamma, delta), structurally zero unless
// gamma + delta = beta (mod N); the N^3 nonzero entries are stored packed
// over (alpha, gamma, delta). For R-type tensors (alpha, beta) is the lower
// index pair and (gamma, delta) the upper; Rbar-type tensors are indexed
// (gamma, delta; alpha, beta) lower/upper but share the same storage scheme.
struct QTensor {
  int N = 0;
  bool rbar = false;
  std::vector<cx> packed;  // [(alpha*N + gamma)*N + delta]

  void init(int n) {
    N = n;
    packed.assign(static_cast<size_t>(n) * n * n, cx(0.0));
  }
  cx& at(int alpha, int gamma, int delta) {
    return packed[(static_cast<size_t>(alpha) * N + gamma) * N + delta];
  }
  const cx& at(int alpha, int gamma, int delta) const {
    return packed[(static_cast<size_t>(alpha) * N + gamma) * N + delta];
  }
  // Full 4-index accessor in the formula's index names.
  cx entry(int alpha, int beta, int gamma, int delta) const {
    if (((gamma + delta - beta) % N + N) % N != 0) return cx(0.0);
    return at(alpha, gamma, delta);
  }
};

// Basic tensors on the curve x^N + y^N = z^N.
QTensor R_tensor(const RootContext& ctx, cx x, cx y, cx z);
QTensor Rbar_tensor(const RootContext& ctx, cx x, cx y, cx z);

// Charged (partially symmetrized) tensors, appendix form: index shifts by
// a = c0' and the phase zeta^{c1'(gamma-alpha)}. `half_ac` adds the
// index-independent zeta^{-ac/2} (R) / zeta^{+ac/2} (Rbar) factor.
QTensor R_charged(const RootContext& ctx, cx x, cx y, cx z, int a, int c, bool half_ac = false);
QTensor Rbar_charged(const RootContext& ctx, cx x, cx y, cx z, int a, int c, bool half_ac = false);

// Tensor of a branched charged I-tetrahedron per the state-sum definition:
// R or Rbar at (p1', p0', -p2') with the charge prefactor
// ((-p1'/p2')^{-c1} (-p2'/p0')^{c0})^p and shifts by c' = (p+1)c mod N.
QTensor sym_tet_tensor(const RootContext& ctx, const decor::ModuliTriple& w, int b_sign,
                       const std::array<int, 3>& charge);
QTensor basic_tet_tensor(const RootContext& ctx, const decor::ModuliTriple& w, int b_sign);

struct SmallMatrix {
  int N = 0;
  std::vector<cx> a;
  void init(int n) {
    N = n;
    a.assign(static_cast<size_t>(n) * n, cx(0.0));
  }
  cx& at(int i, int j) { return a[static_cast<size_t>(i) * N + j]; }
  const cx& at(int i, int j) const { return a[static_cast<size_t>(i) * N + j]; }
};

SmallMatrix S_matrix(const RootContext& ctx);
SmallMatrix T_matrix(const RootContext& ctx);
SmallMatrix X_matrix(const RootContext& ctx);
SmallMatrix Z_matrix(const RootContext& ctx);
SmallMatrix Y_matrix(const RootContext& ctx);
SmallMatrix matmul(const SmallMatrix& A, const SmallMatrix& B);
SmallMatrix matpow(const SmallMatrix& A, int k);  // k may be negative (unitary-free inverse)
SmallMatrix matinv(const SmallMatrix& A);

struct PhaseReport {
  bool ok = false;
  cx lambda{1.0, 0.0};
  double max_dev = 0.0;    // residual after dividing out lambda, relative
  double phase_dev = 0.0;  // |lambda^{2N} - 1|
  std::string note;
};

// Tetrahedral symmetry relations for the three transpositions (01),(12),(23)
// applied to a *_b = +1 charged tetrahedron.
PhaseReport verify_symmetry(const RootContext& ctx, const decor::ModuliTriple& w,
                            const std::array<int, 3>& charge, int transposition);

// Unitarity: Rbar(conjugated args | a,c) = conj(R(args | a,c) at negated
// indices), entrywise.
PhaseReport verify_unitarity(const RootContext& ctx, const decor::ModuliTriple& w,
                             const std::array<int, 3>& charge);

// Charged pentagon on the five-term moduli configuration driven by (x, y);
// charges parametrized by (i,j,k,l,m). All-zero charges give the basic
// pentagon, which must hold exactly.
PhaseReport verify_charged_pentagon(const RootContext& ctx, cx x, cx y,
                                    const std::array<int, 5>& charges);

// Factorization of the charged tensor through Y/Z conjugation.
PhaseReport verify_factorization(const RootContext& ctx, const decor::ModuliTriple& w, int a,
                                 int c);

// Representation-theoretic oracle: standard representation matrices,
// Clebsch-Gordan equivariance, and the change-of-basis identity certifying
// the 6j formula. Residuals reported; ok iff all below tol.
struct RepOracleReport {
  bool ok = false;
  double equivariance_dev = 0.0;
  double sixj_dev = 0.0;
  std::string note;
};
RepOracleReport rep_oracle(const RootContext& ctx, const std::array<cx, 3>& t_params,
                           const std::array<cx, 3>& x_params, double tol = 1e-9);

// Orthogonality of a tensor against its 0->2 mirror (opposite b-orientation,
// mirror charge), contracted over the two shared faces; the result must be a
// 2N-th root of unity times the identity pattern.
PhaseReport verify_orthogonality(const RootContext& ctx, const decor::ModuliTriple& w,
                                 const std::array<int, 3>& charge);

// The five-point moduli configuration of the 2<->3 transit: given (x,y),
// returns w0 values (indexed by omitted vertex 0..4) and the points.
struct PentagonConfig {
  std::array<cx, 5> w0;      // w0 of tet omitting vertex i
  std::array<cx, 5> points;  // u_0..u_4
};
PentagonConfig pentagon_config(cx x, cx y);

cx ipow(cx base, long long e);

}  // namespace qhi::qd
