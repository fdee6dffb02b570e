#include "qhi/qdilog.hpp"

#include <cmath>

namespace qhi::qd {

namespace {

int modN(long long v, int N) {
  long long r = v % N;
  if (r < 0) r += N;
  return static_cast<int>(r);
}

}  // namespace

cx ipow(cx base, long long e) {
  if (e < 0) return ipow(1.0 / base, -e);
  cx acc = 1.0;
  cx b = base;
  while (e > 0) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

QTensor R_tensor(const RootContext& ctx, cx x, cx y, cx z) {
  return R_charged(ctx, x, y, z, 0, 0);
}

QTensor Rbar_tensor(const RootContext& ctx, cx x, cx y, cx z) {
  return Rbar_charged(ctx, x, y, z, 0, 0);
}

QTensor R_charged(const RootContext& ctx, cx x, cx y, cx z, int a, int c, bool half_ac) {
  const int N = ctx.N;
  QTensor t;
  t.init(N);
  const cx h = cyclo::h_func(ctx, z / x);
  const auto om = cyclo::omega_table(ctx, x, y, z);
  const cx extra = half_ac ? ctx.zp_half(-static_cast<long long>(a) * c) : cx(1.0);
  // entry(alpha, beta, gamma, delta) = zeta^{c(gamma-alpha)} R_{alpha, beta-a}^{gamma-a, delta}
  // R_{A,B}^{G,D} = h zeta^{A D + A^2/2} omega(G - A) delta(G + D - B)
  for (int al = 0; al < N; ++al)
    for (int g = 0; g < N; ++g)
      for (int d = 0; d < N; ++d) {
        const cx phase = ctx.zp(static_cast<long long>(c) * (g - al)) *
                         ctx.zp(static_cast<long long>(al) * d) *
                         ctx.zp_half(static_cast<long long>(al) * al);
        t.at(al, g, d) = extra * phase * h * om[static_cast<size_t>(modN(g - a - al, N))];
      }
  return t;
}

QTensor Rbar_charged(const RootContext& ctx, cx x, cx y, cx z, int a, int c, bool half_ac) {
  const int N = ctx.N;
  QTensor t;
  t.init(N);
  t.rbar = true;
  const cx h = cyclo::h_func(ctx, z / x);
  const cx br = cyclo::bracket(ctx, x / z);
  const auto om = cyclo::omega_table(ctx, x / ctx.zeta, y, z);
  const cx extra = half_ac ? ctx.zp_half(static_cast<long long>(a) * c) : cx(1.0);
  // entry(gamma, delta; alpha, beta) stored with the same packing over
  // (alpha, gamma, delta), beta = gamma + delta:
  // Rbar'(|a,c)_{g,d}^{al,b} = zeta^{c(g-al)} Rbar_{g+a, d}^{al, b+a}
  // Rbar_{G,D}^{A,B} = [x/z]/h zeta^{-A D - A^2/2} delta(G+D-B) / omega(G-A)
  for (int al = 0; al < N; ++al)
    for (int g = 0; g < N; ++g)
      for (int d = 0; d < N; ++d) {
        const cx phase = ctx.zp(static_cast<long long>(c) * (g - al)) *
                         ctx.zp(-static_cast<long long>(al) * d) *
                         ctx.zp_half(-static_cast<long long>(al) * al);
        const cx denom = om[static_cast<size_t>(modN(g + a - al, N))];
        if (std::abs(denom) == 0.0) throw domain_error("PoleHit", "omega denominator vanished");
        t.at(al, g, d) = extra * phase * br / h / denom;
      }
  return t;
}

QTensor sym_tet_tensor(const RootContext& ctx, const decor::ModuliTriple& w, int b_sign,
                       const std::array<int, 3>& charge) {
  cx p0 = w.p0, p1 = w.p1, p2 = w.p2;
  if (!w.has_p) {
    p0 = 1.0 - w.w0;
    p1 = w.w0;
    p2 = -1.0;
  }
  const auto roots = cyclo::common_nth_roots(ctx, p0, p1, p2);
  const cx x = roots.r1, y = roots.r0, z = -roots.r2;
  const int c0p = modN(static_cast<long long>(ctx.p + 1) * charge[0], ctx.N);
  const int c1p = modN(static_cast<long long>(ctx.p + 1) * charge[1], ctx.N);
  const cx w0p = -roots.r1 / roots.r2;
  const cx w1p = -roots.r2 / roots.r0;
  const cx pref = ipow(ipow(w0p, -charge[1]) * ipow(w1p, charge[0]), ctx.p);
  QTensor t = b_sign > 0 ? R_charged(ctx, x, y, z, c0p, c1p)
                         : Rbar_charged(ctx, x, y, z, c0p, c1p);
  for (cx& v : t.packed) v *= pref;
  return t;
}

QTensor basic_tet_tensor(const RootContext& ctx, const decor::ModuliTriple& w, int b_sign) {
  return sym_tet_tensor(ctx, w, b_sign, {0, 0, 1});
}

SmallMatrix S_matrix(const RootContext& ctx) {
  SmallMatrix S;
  S.init(ctx.N);
  const double f = 1.0 / std::sqrt(static_cast<double>(ctx.N));
  for (int m = 0; m < ctx.N; ++m)
    for (int n = 0; n < ctx.N; ++n) S.at(m, n) = f * ctx.zp(static_cast<long long>(m) * n);
  return S;
}

SmallMatrix T_matrix(const RootContext& ctx) {
  SmallMatrix T;
  T.init(ctx.N);
  const cx g1 = cyclo::g_func(ctx, 1.0);
  const cx nu = g1 / std::abs(g1);
  for (int m = 0; m < ctx.N; ++m) {
    const int n = modN(-m, ctx.N);
    T.at(m, n) = nu * ctx.zp_half(static_cast<long long>(m) * m);
  }
  return T;
}

SmallMatrix X_matrix(const RootContext& ctx) {
  SmallMatrix X;
  X.init(ctx.N);
  for (int i = 0; i < ctx.N; ++i) X.at(i, modN(i - 1, ctx.N)) = 1.0;  // X_{ij} = delta_{i,j+1}
  return X;
}

SmallMatrix Z_matrix(const RootContext& ctx) {
  SmallMatrix Z;
  Z.init(ctx.N);
  for (int i = 0; i < ctx.N; ++i) Z.at(i, i) = ctx.zp(i);
  return Z;
}

SmallMatrix Y_matrix(const RootContext& ctx) {
  SmallMatrix Y;
  Y.init(ctx.N);
  for (int n = 0; n < ctx.N; ++n) Y.at(modN(n + 1, ctx.N), n) = ctx.zp_half(2 * n + 1);
  return Y;
}

SmallMatrix matmul(const SmallMatrix& A, const SmallMatrix& B) {
  SmallMatrix C;
  C.init(A.N);
  for (int i = 0; i < A.N; ++i)
    for (int k = 0; k < A.N; ++k) {
      const cx a = A.at(i, k);
      if (a == cx(0.0)) continue;
      for (int j = 0; j < A.N; ++j) C.at(i, j) += a * B.at(k, j);
    }
  return C;
}

SmallMatrix matinv(const SmallMatrix& A) {
  // Gauss-Jordan; matrices here are tiny and well-conditioned.
  const int n = A.N;
  std::vector<cx> m(static_cast<size_t>(n) * 2 * n, cx(0.0));
  auto at = [&](int r, int c) -> cx& { return m[static_cast<size_t>(r) * 2 * n + c]; };
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) at(r, c) = A.at(r, c);
    at(r, n + r) = 1.0;
  }
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(at(r, col)) > std::abs(at(piv, col))) piv = r;
    if (std::abs(at(piv, col)) == 0.0) throw domain_error("Singular", "matrix not invertible");
    if (piv != col)
      for (int c = 0; c < 2 * n; ++c) std::swap(at(piv, c), at(col, c));
    const cx d = at(col, col);
    for (int c = 0; c < 2 * n; ++c) at(col, c) /= d;
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const cx f = at(r, col);
      if (f == cx(0.0)) continue;
      for (int c = 0; c < 2 * n; ++c) at(r, c) -= f * at(col, c);
    }
  }
  SmallMatrix R;
  R.init(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) R.at(r, c) = at(r, n + c);
  return R;
}

SmallMatrix matpow(const SmallMatrix& A, int k) {
  if (k < 0) return matpow(matinv(A), -k);
  SmallMatrix R;
  R.init(A.N);
  for (int i = 0; i < A.N; ++i) R.at(i, i) = 1.0;
  SmallMatrix B = A;
  while (k > 0) {
    if (k & 1) R = matmul(R, B);
    B = matmul(B, B);
    k >>= 1;
  }
  return R;
}

namespace {

// Fits lambda so that lhs = lambda * rhs entrywise; reports the relative
// deviation and |lambda^{2N} - 1|.
PhaseReport fit_phase(const std::vector<cx>& lhs, const std::vector<cx>& rhs, int N,
                      double dev_tol, double phase_tol) {
  PhaseReport rep;
  double best = 0.0;
  cx lambda(1.0);
  double scale = 0.0;
  for (size_t i = 0; i < lhs.size(); ++i) {
    scale = std::max(scale, std::abs(rhs[i]));
    if (std::abs(rhs[i]) > best) {
      best = std::abs(rhs[i]);
      lambda = lhs[i] / rhs[i];
    }
  }
  if (scale == 0.0) {
    rep.note = "rhs identically zero";
    return rep;
  }
  double dev = 0.0;
  for (size_t i = 0; i < lhs.size(); ++i) dev = std::max(dev, std::abs(lhs[i] - lambda * rhs[i]));
  rep.lambda = lambda;
  rep.max_dev = dev / scale / std::max(1.0, std::abs(lambda));
  rep.phase_dev = std::abs(ipow(lambda, 2 * N) - 1.0);
  rep.ok = rep.max_dev <= dev_tol && rep.phase_dev <= phase_tol;
  return rep;
}

struct TransposedData {
  decor::ModuliTriple w;
  std::array<int, 3> c;
};

TransposedData transpose_data(const decor::ModuliTriple& w, const std::array<int, 3>& c,
                              int transposition) {
  TransposedData out;
  cx p0 = w.p0, p1 = w.p1, p2 = w.p2;
  if (!w.has_p) {
    p0 = 1.0 - w.w0;
    p1 = w.w0;
    p2 = -1.0;
  }
  if (transposition == 1) {  // (12): pairs permute (0<->2), moduli invert
    out.w.w0 = 1.0 / w.w2;
    out.w.w1 = 1.0 / w.w1;
    out.w.w2 = 1.0 / w.w0;
    out.w.p0 = -p2;
    out.w.p1 = -p1;
    out.w.p2 = -p0;
    out.c = {c[2], c[1], c[0]};
  } else {  // (01) and (23): pairs permute (1<->2), moduli invert
    out.w.w0 = 1.0 / w.w0;
    out.w.w1 = 1.0 / w.w2;
    out.w.w2 = 1.0 / w.w1;
    out.w.p0 = -p0;
    out.w.p1 = -p2;
    out.w.p2 = -p1;
    out.c = {c[0], c[2], c[1]};
  }
  out.w.has_p = true;
  return out;
}

}  // namespace

PhaseReport verify_symmetry(const RootContext& ctx, const decor::ModuliTriple& w,
                            const std::array<int, 3>& charge, int transposition) {
  const int N = ctx.N;
  const QTensor A = sym_tet_tensor(ctx, w, +1, charge);
  const TransposedData td = transpose_data(w, charge, transposition);
  const QTensor B = sym_tet_tensor(ctx, td.w, -1, td.c);
  const SmallMatrix S = S_matrix(ctx);
  const SmallMatrix T = T_matrix(ctx);
  const SmallMatrix Sinv = matinv(S);
  const SmallMatrix Tinv = matinv(T);

  std::vector<cx> lhs, rhs;
  lhs.reserve(static_cast<size_t>(N) * N * N * N);
  rhs.reserve(lhs.capacity());
  for (int al = 0; al < N; ++al)
    for (int be = 0; be < N; ++be)
      for (int g = 0; g < N; ++g)
        for (int d = 0; d < N; ++d) {
          cx sum = 0.0;
          cx lv = 0.0;
          if (transposition == 0) {
            // Rbar'(.)_{gamma,beta}^{alpha,delta} =
            //   sum_{a',g'} R'(.)_{a',beta}^{g',delta} T_{gamma,g'} Tinv_{alpha,a'}
            const int gp = modN(-g, N), ap = modN(-al, N);
            sum = A.entry(ap, be, gp, d) * T.at(g, gp) * Tinv.at(al, ap);
            lv = B.entry(al, d, g, be);
          } else if (transposition == 1) {
            // Rbar'(.)_{beta,delta}^{alpha,gamma} =
            //   sum_{a',d'} R'(.)_{a',beta}^{gamma,d'} T_{delta,d'} Sinv_{alpha,a'}
            const int dp = modN(-d, N);
            cx acc = 0.0;
            for (int ap = 0; ap < N; ++ap) acc += A.entry(ap, be, g, dp) * Sinv.at(al, ap);
            sum = acc * T.at(d, dp);
            lv = B.entry(al, g, be, d);
          } else {
            // Rbar'(.)_{alpha,delta}^{gamma,beta} =
            //   sum_{b',d'} R'(.)_{alpha,b'}^{gamma,d'} S_{delta,d'} Sinv_{beta,b'}
            cx acc = 0.0;
            for (int dp = 0; dp < N; ++dp) {
              const int bp = modN(g + dp, N);
              acc += A.entry(al, bp, g, dp) * S.at(d, dp) * Sinv.at(be, bp);
            }
            sum = acc;
            lv = B.entry(g, be, al, d);
          }
          lhs.push_back(lv);
          rhs.push_back(sum);
        }
  return fit_phase(lhs, rhs, N, 1e-8, 1e-8);
}

PhaseReport verify_unitarity(const RootContext& ctx, const decor::ModuliTriple& w,
                             const std::array<int, 3>& charge) {
  const int N = ctx.N;
  cx p0 = w.p0, p1 = w.p1, p2 = w.p2;
  if (!w.has_p) {
    p0 = 1.0 - w.w0;
    p1 = w.w0;
    p2 = -1.0;
  }
  const auto roots = cyclo::common_nth_roots(ctx, p0, p1, p2);
  const cx x = roots.r1, y = roots.r0, z = -roots.r2;
  const int a = modN(static_cast<long long>(ctx.p + 1) * charge[0], N);
  const int c = modN(static_cast<long long>(ctx.p + 1) * charge[1], N);
  const QTensor R = R_charged(ctx, x, y, z, a, c, true);
  const QTensor Rb = Rbar_charged(ctx, std::conj(x), std::conj(y), std::conj(z), a, c, true);

  std::vector<cx> lhs, rhs;
  for (int al = 0; al < N; ++al)
    for (int g = 0; g < N; ++g)
      for (int d = 0; d < N; ++d) {
        const int be = modN(g + d, N);
        // lhs: Rbar(conj | a,c)_{gamma,delta}^{alpha,beta}
        lhs.push_back(Rb.entry(al, be, g, d));
        // rhs: conj(R(| a,c)_{-alpha,-beta}^{-gamma,-delta})
        rhs.push_back(std::conj(R.entry(modN(-al, N), modN(-be, N), modN(-g, N), modN(-d, N))));
      }
  PhaseReport rep = fit_phase(lhs, rhs, N, 1e-10, 1e-8);
  // Unitarity is an exact entrywise identity: the fitted phase must be 1.
  if (rep.ok && std::abs(rep.lambda - 1.0) > 1e-8) {
    rep.ok = false;
    rep.note = "nontrivial phase in unitarity relation";
  }
  return rep;
}

PentagonConfig pentagon_config(cx x, cx y) {
  // Five points whose tetrahedral cross-ratios realize the 2<->3 pattern:
  //   omit 0 -> x, omit 1 -> y, omit 2 -> y/x,
  //   omit 3 -> y(1-x)/(x(1-y)), omit 4 -> (1-x)/(1-y).
  PentagonConfig cfg;
  auto cr = [](cx a, cx b, cx c, cx d) { return (c - b) * (d - a) / ((c - a) * (d - b)); };
  const cx u0 = 0.0, u1 = 1.0;
  // cr(u0,u1,u2,u3) = (1-x)/(1-y), cr(u0,u1,u2,u4) = y(1-x)/(x(1-y)):
  // fix u2 and solve the Moebius equations for u3 and u4.
  const cx u2 = cx(2.0, 0.9);
  auto solve_u3 = [&](cx w) {
    // w = ((u2-u1)(t-u0))/((u2-u0)(t-u1)) -> t
    const cx A = u2 - u1, D = u2 - u0;
    // w (D (t - u1)) = A (t - u0)
    return (w * D * u1 - A * u0) / (w * D - A);
  };
  const cx u3 = solve_u3((1.0 - x) / (1.0 - y));
  const cx u4 = solve_u3(y * (1.0 - x) / (x * (1.0 - y)));
  cfg.points = {u0, u1, u2, u3, u4};
  cfg.w0 = {cr(u1, u2, u3, u4), cr(u0, u2, u3, u4), cr(u0, u1, u3, u4), cr(u0, u1, u2, u4),
            cr(u0, u1, u2, u3)};
  return cfg;
}

namespace {

// N^3 x N^3 operator helpers for the pentagon identity. Matrices are stored
// row-major; rows index the *lower* pair/triple of the 6j symbols.
struct BigMatrix {
  int dim = 0;
  std::vector<cx> a;
  void init(int d) {
    dim = d;
    a.assign(static_cast<size_t>(d) * d, cx(0.0));
  }
  cx& at(int r, int c) { return a[static_cast<size_t>(r) * dim + c]; }
  const cx& at(int r, int c) const { return a[static_cast<size_t>(r) * dim + c]; }
};

BigMatrix bigmul(const BigMatrix& A, const BigMatrix& B) {
  BigMatrix C;
  C.init(A.dim);
  for (int i = 0; i < A.dim; ++i)
    for (int k = 0; k < A.dim; ++k) {
      const cx v = A.at(i, k);
      if (v == cx(0.0)) continue;
      for (int j = 0; j < A.dim; ++j)
        if (B.at(k, j) != cx(0.0)) C.at(i, j) += v * B.at(k, j);
    }
  return C;
}

// Embeds the 4-index tensor E as an operator on (C^N)^3 acting on channels
// (ch1, ch2), rows = lower indices of the formula (alpha, beta).
BigMatrix embed(const QTensor& t, int N, int ch1, int ch2) {
  BigMatrix M;
  M.init(N * N * N);
  auto idx = [&](int i1, int i2, int i3) { return (i1 * N + i2) * N + i3; };
  for (int al = 0; al < N; ++al)
    for (int g = 0; g < N; ++g)
      for (int d = 0; d < N; ++d) {
        const int be = modN(g + d, N);
        const cx v = t.at(al, g, d);
        if (v == cx(0.0)) continue;
        // spectate over the remaining channel
        for (int s = 0; s < N; ++s) {
          int row[3], col[3];
          row[ch1] = al;
          row[ch2] = be;
          col[ch1] = g;
          col[ch2] = d;
          const int ch3 = 3 - ch1 - ch2;
          row[ch3] = s;
          col[ch3] = s;
          M.at(idx(row[0], row[1], row[2]), idx(col[0], col[1], col[2])) += v;
        }
      }
  return M;
}

}  // namespace

PhaseReport verify_charged_pentagon(const RootContext& ctx, cx x, cx y,
                                    const std::array<int, 5>& charges) {
  const int N = ctx.N;
  const auto [i, j, k, l, m] = std::array<int, 5>{charges[0], charges[1], charges[2], charges[3],
                                                  charges[4]};
  const PentagonConfig cfg = pentagon_config(x, y);
  // x-parameter products from the points: interval [a,b] carries the
  // principal N-th root of u_b - u_a.
  auto xr = [&](int a, int b) {
    return cyclo::principal_nth_root(ctx, cfg.points[static_cast<size_t>(b)] - cfg.points[static_cast<size_t>(a)]);
  };
  // Tet omitting vertex `o` has ordered vertices (a,b,c,d); its R arguments:
  // X = x_{[a,d]} x_{[b,c]}, Y = x_{[a,b]} x_{[c,d]}, Z = x_{[a,c]} x_{[b,d]}.
  auto tet_args = [&](int o) {
    std::array<int, 4> v{};
    int q = 0;
    for (int g = 0; g < 5; ++g)
      if (g != o) v[static_cast<size_t>(q++)] = g;
    return std::array<cx, 3>{xr(v[0], v[3]) * xr(v[1], v[2]), xr(v[0], v[1]) * xr(v[2], v[3]),
                             xr(v[0], v[2]) * xr(v[1], v[3])};
  };
  auto charged = [&](int o, int c0, int c1) {
    const auto args = tet_args(o);
    const int a = modN(static_cast<long long>(ctx.p + 1) * c0, N);
    const int c = modN(static_cast<long long>(ctx.p + 1) * c1, N);
    return R_charged(ctx, args[0], args[1], args[2], a, c, true);
  };
  const QTensor t4 = charged(4, i, m - k);
  const QTensor t2 = charged(2, j, l + m);
  const QTensor t0 = charged(0, k, l - i);
  const QTensor t1 = charged(1, j + k, l);
  const QTensor t3 = charged(3, i + j, m);

  const BigMatrix lhsM = bigmul(bigmul(embed(t4, N, 0, 1), embed(t2, N, 0, 2)), embed(t0, N, 1, 2));
  const BigMatrix rhsM = bigmul(embed(t1, N, 1, 2), embed(t3, N, 0, 1));
  return fit_phase(lhsM.a, rhsM.a, N, 1e-9, 1e-8);
}

PhaseReport verify_factorization(const RootContext& ctx, const decor::ModuliTriple& w, int a,
                                 int c) {
  const int N = ctx.N;
  cx p0 = w.p0, p1 = w.p1, p2 = w.p2;
  if (!w.has_p) {
    p0 = 1.0 - w.w0;
    p1 = w.w0;
    p2 = -1.0;
  }
  const auto roots = cyclo::common_nth_roots(ctx, p0, p1, p2);
  const cx xx = roots.r1, yy = roots.r0, zz = -roots.r2;
  const int am = modN(a, N), cm = modN(c, N);
  const QTensor lhs = R_charged(ctx, xx, yy, zz, am, cm);
  const QTensor R0 = R_tensor(ctx, xx, yy, zz);
  const SmallMatrix Y = Y_matrix(ctx);
  const SmallMatrix Z = Z_matrix(ctx);
  const SmallMatrix Yma = matpow(Y, -am);
  const SmallMatrix Zmc = matpow(Z, -cm);
  const SmallMatrix Zc = matpow(Z, cm);
  const SmallMatrix Zma = matpow(Z, -am);
  const SmallMatrix L = matmul(Yma, Zmc);  // acts on the alpha (first lower) index

  std::vector<cx> lv, rv;
  for (int al = 0; al < N; ++al)
    for (int g = 0; g < N; ++g)
      for (int d = 0; d < N; ++d) {
        const int be = modN(g + d, N);
        lv.push_back(lhs.entry(al, be, g, d));
        // (Y1^{-a} Z1^{-c} R Z1^{c} Z2^{-a})_{al,be}^{g,d}
        cx acc = 0.0;
        for (int ap = 0; ap < N; ++ap) {
          const cx lf = L.at(al, ap);
          if (lf == cx(0.0)) continue;
          for (int gp = 0; gp < N; ++gp) {
            const cx zr = Zc.at(gp, g);
            if (zr == cx(0.0)) continue;
            for (int dp = 0; dp < N; ++dp) {
              const cx za = Zma.at(dp, d);
              if (za == cx(0.0)) continue;
              acc += lf * R0.entry(ap, be, gp, dp) * zr * za;
            }
          }
        }
        rv.push_back(acc);
      }
  return fit_phase(lv, rv, N, 1e-9, 1e-8);
}

RepOracleReport rep_oracle(const RootContext& ctx, const std::array<cx, 3>& t_params,
                           const std::array<cx, 3>& x_params, double tol) {
  const int N = ctx.N;
  RepOracleReport rep;
  // Standard representation data for rho, mu, nu and their products.
  struct Rep {
    cx t, x;
  };
  auto product = [&](const Rep& r1, const Rep& r2) -> Rep {
    const cx tN1 = ipow(r1.t, N), tN2 = ipow(r2.t, N);
    const cx xN = tN1 * ipow(r2.x, N) + ipow(r1.x, N) / tN2;
    if (std::abs(xN) < 1e-12) throw domain_error("NonRegularParameters", "product x-parameter vanishes");
    return Rep{r1.t * r2.t, cyclo::principal_nth_root(ctx, xN)};
  };
  const Rep rho{t_params[0], x_params[0]}, mu{t_params[1], x_params[1]}, nu{t_params[2], x_params[2]};
  for (const Rep& r : {rho, mu, nu})
    if (std::abs(r.x) < 1e-12 || std::abs(r.t) < 1e-12)
      throw domain_error("NonRegularParameters", "zero parameter");
  const Rep rhomu = product(rho, mu);
  const Rep munu = product(mu, nu);
  const Rep rhomunu = product(rho, munu);
  {
    const Rep check = product(rhomu, nu);
    (void)check;  // same t; x agrees up to N-th root choice, irrelevant below
  }

  const SmallMatrix X = X_matrix(ctx);
  const SmallMatrix Z = Z_matrix(ctx);
  auto repE = [&](const Rep& r) {
    SmallMatrix M = Z;
    for (auto& v : M.a) v *= r.t * r.t;
    return M;
  };
  auto repD = [&](const Rep& r) {
    SmallMatrix M = X;
    for (auto& v : M.a) v *= r.t * r.x;
    return M;
  };

  // K_alpha(r1,r2)_{(i,j),k} = zeta^{alpha j + alpha^2/2}
  //                            omega(t1 x2, x1/t2, x12 | i - alpha) delta(i+j-k)
  auto K = [&](const Rep& r1, const Rep& r2, const Rep& r12, int alpha) {
    std::vector<cx> M(static_cast<size_t>(N) * N * N, cx(0.0));
    const auto om = cyclo::omega_table(ctx, r1.t * r2.x, r1.x / r2.t, r12.x);
    for (int ii = 0; ii < N; ++ii)
      for (int jj = 0; jj < N; ++jj) {
        const int kk = modN(ii + jj, N);
        M[(static_cast<size_t>(ii) * N + jj) * N + kk] =
            ctx.zp(static_cast<long long>(alpha) * jj) *
            ctx.zp_half(static_cast<long long>(alpha) * alpha) *
            om[static_cast<size_t>(modN(ii - alpha, N))];
      }
    return M;  // (i,j) x k matrix, N^2 rows, N cols
  };

  // (i) Equivariance: (r1 (x) r2)(a) K_alpha = K_alpha (r1 r2)(a), a in {E,D}.
  double edev = 0.0;
  auto check_equivariance = [&](const Rep& r1, const Rep& r2, const Rep& r12) {
    const SmallMatrix E1 = repE(r1), E2 = repE(r2), D1 = repD(r1), D2 = repD(r2);
    const SmallMatrix E12 = repE(r12), D12 = repD(r12);
    for (int alpha = 0; alpha < N; ++alpha) {
      const auto Ka = K(r1, r2, r12, alpha);
      // left: (r1 x r2)(E) = E1 (x) E2 ; (r1 x r2)(D) = E1 (x) D2 + D1 (x) 1
      for (int ii = 0; ii < N; ++ii)
        for (int jj = 0; jj < N; ++jj)
          for (int kk = 0; kk < N; ++kk) {
            // E: (E1 x E2) K = K E12
            cx lhsE = 0.0;
            for (int i2 = 0; i2 < N; ++i2)
              for (int j2 = 0; j2 < N; ++j2)
                lhsE += E1.at(ii, i2) * E2.at(jj, j2) * Ka[(static_cast<size_t>(i2) * N + j2) * N + kk];
            cx rhsE = 0.0;
            for (int k2 = 0; k2 < N; ++k2)
              rhsE += Ka[(static_cast<size_t>(ii) * N + jj) * N + k2] * E12.at(k2, kk);
            edev = std::max(edev, std::abs(lhsE - rhsE));
            // D: (E1 x D2 + D1 x 1) K = K D12
            cx lhsD = 0.0;
            for (int i2 = 0; i2 < N; ++i2)
              for (int j2 = 0; j2 < N; ++j2)
                lhsD += (E1.at(ii, i2) * D2.at(jj, j2) +
                         D1.at(ii, i2) * (jj == j2 ? cx(1.0) : cx(0.0))) *
                        Ka[(static_cast<size_t>(i2) * N + j2) * N + kk];
            cx rhsD = 0.0;
            for (int k2 = 0; k2 < N; ++k2)
              rhsD += Ka[(static_cast<size_t>(ii) * N + jj) * N + k2] * D12.at(k2, kk);
            edev = std::max(edev, std::abs(lhsD - rhsD));
          }
    }
  };
  check_equivariance(rho, mu, rhomu);
  check_equivariance(mu, nu, munu);

  // (ii) The change-of-basis identity with normalized Clebsch-Gordan bases:
  // h(x12/(t1 x2)) enters each K; R comes from the Prop-6j closed form.
  const cx hx_rm = cyclo::h_func(ctx, rhomu.x / (rho.t * mu.x));
  const cx hx_rm_n = cyclo::h_func(ctx, rhomunu.x / (rhomu.t * nu.x));
  const cx hx_mn = cyclo::h_func(ctx, munu.x / (mu.t * nu.x));
  const cx hx_r_mn = cyclo::h_func(ctx, rhomunu.x / (rho.t * munu.x));

  const cx Xarg = rhomunu.x * mu.x;
  const cx Yarg = rho.x * nu.x;
  const cx Zarg = rhomu.x * munu.x;
  const QTensor R6j = R_tensor(ctx, Xarg, Yarg, Zarg);

  double sdev = 0.0;
  double scale = 0.0;
  // lhs_{(i,j,l),m} = sum_k K_alpha(rho,mu)_{(i,j),k} K_beta(rhomu,nu)_{(k,l),m}
  // rhs = sum_{gamma,delta} R_{alpha,beta}^{gamma,delta}
  //         sum_{k'} K_delta(mu,nu)_{(j,l),k'} K_gamma(rho,munu)_{(i,k'),m}
  for (int alpha = 0; alpha < N; ++alpha) {
    const auto Kal = K(rho, mu, rhomu, alpha);
    for (int beta = 0; beta < N; ++beta) {
      const auto Kbe = K(rhomu, nu, rhomunu, beta);
      // rhs pieces depend on gamma, delta: structural delta: gamma+delta = beta
      for (int ii = 0; ii < N; ++ii)
        for (int jj = 0; jj < N; ++jj)
          for (int ll = 0; ll < N; ++ll) {
            const int mm = modN(ii + jj + ll, N);
            cx lhs = 0.0;
            {
              const int kk = modN(ii + jj, N);
              lhs = Kal[(static_cast<size_t>(ii) * N + jj) * N + kk] *
                    Kbe[(static_cast<size_t>(kk) * N + ll) * N + mm];
              lhs *= hx_rm * hx_rm_n;
            }
            cx rhs = 0.0;
            for (int gamma = 0; gamma < N; ++gamma) {
              const int delta = modN(beta - gamma, N);
              const cx r = R6j.entry(alpha, beta, gamma, delta);
              if (r == cx(0.0)) continue;
              const auto Kde = K(mu, nu, munu, delta);
              const auto Kga = K(rho, munu, rhomunu, gamma);
              const int kp = modN(jj + ll, N);
              rhs += r * Kde[(static_cast<size_t>(jj) * N + ll) * N + kp] *
                     Kga[(static_cast<size_t>(ii) * N + kp) * N + mm] * hx_mn * hx_r_mn;
            }
            sdev = std::max(sdev, std::abs(lhs - rhs));
            scale = std::max(scale, std::abs(lhs));
          }
    }
  }
  rep.equivariance_dev = edev;
  rep.sixj_dev = scale > 0 ? sdev / scale : sdev;
  rep.ok = edev <= tol && rep.sixj_dev <= tol;
  return rep;
}

PhaseReport verify_orthogonality(const RootContext& ctx, const decor::ModuliTriple& w,
                                 const std::array<int, 3>& charge) {
  const int N = ctx.N;
  const QTensor A = sym_tet_tensor(ctx, w, +1, charge);
  // Mirror from a 0->2 transit: same branching order, opposite sign, same
  // moduli; charges: 2 - c on the axis pair (pair 0), negated elsewhere.
  const std::array<int, 3> cbar{2 - charge[0], -charge[1], -charge[2]};
  const QTensor B = sym_tet_tensor(ctx, w, -1, cbar);
  // Contract over the two shared faces (positions 0 and 1): A's delta with
  // B's delta, A's beta with B's beta; expect phase * delta(alpha) delta(gamma).
  std::vector<cx> lhs, rhs;
  for (int alA = 0; alA < N; ++alA)
    for (int gA = 0; gA < N; ++gA)
      for (int alB = 0; alB < N; ++alB)
        for (int gB = 0; gB < N; ++gB) {
          cx acc = 0.0;
          for (int d = 0; d < N; ++d) {
            const int beA = modN(gA + d, N);
            const int beB = modN(gB + d, N);
            if (beA != beB) continue;
            acc += A.at(alA, gA, d) * B.at(alB, gB, d);
          }
          lhs.push_back(acc);
          rhs.push_back(alA == alB && gA == gB ? cx(1.0) : cx(0.0));
        }
  return fit_phase(lhs, rhs, N, 1e-8, 1e-8);
}

}  // namespace qhi::qd
