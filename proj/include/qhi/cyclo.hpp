#pragma once

// Cyclotomic and special-function arithmetic at a fixed odd root of unity
// zeta = exp(2*pi*i/N).

#include <vector>

#include "qhi/common.hpp"

namespace qhi::cyclo {

struct RootContext {
  int N = 0;                 // odd, >= 3
  int p = 0;                 // N = 2p+1
  cx zeta;                   // exp(2 pi i / N)
  cx zeta_half;              // -exp(i pi / N) = zeta^{p+1}, squares to zeta
  double cut_epsilon = 1e-3; // branch-cut rotation used in g

  std::vector<cx> zeta_pow;  // zeta^k, k = 0..N-1

  // zeta^k for any integer k.
  cx zp(long long k) const {
    long long r = k % N;
    if (r < 0) r += N;
    return zeta_pow[static_cast<size_t>(r)];
  }
  // zeta^{k/2} realized as zeta_half^k (the paper's fixed determination).
  cx zp_half(long long k) const;
};

RootContext make_context(int N);

// omega(x,y,z | n) = prod_{j=1}^{n mod N} (y/z) / (1 - (x/z) zeta^j).
cx omega(const RootContext& ctx, cx x, cx y, cx z, long long n);

// All N values omega(x,y,z | 0..N-1) in one cumulative pass.
std::vector<cx> omega_table(const RootContext& ctx, cx x, cx y, cx z);

// g(x) = prod_{j=1}^{N-1} (1 - x zeta^j)^{j/N}, fractional powers via the
// principal log with the cut rotated by cut_epsilon.
cx g_func(const RootContext& ctx, cx x);

// h(x) = x^{-p} g(x) / g(1).
cx h_func(const RootContext& ctx, cx x);

// [x] = N^{-1} (1 - x^N) / (1 - x), with the removable singularity at x = 1.
cx bracket(const RootContext& ctx, cx x);

// N-periodic Kronecker delta: 1 iff n == 0 mod N.
int per_delta(const RootContext& ctx, long long n);

// Principal N-th roots of the three arguments (argument in (-pi/N, pi/N]).
struct RootTriple {
  cx r0, r1, r2;
};
RootTriple common_nth_roots(const RootContext& ctx, cx p0, cx p1, cx p2);
cx principal_nth_root(const RootContext& ctx, cx z);

}  // namespace qhi::cyclo
