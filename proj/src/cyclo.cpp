#include "qhi/cyclo.hpp"

#include <cmath>

namespace qhi::cyclo {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kPoleTol = 1e-13;

// Principal log with the branch cut rotated from arg = pi to arg = pi + eps.
cx log_rotated(cx w, double eps) {
  const cx shifted = std::log(w * std::polar(1.0, -eps));
  return shifted + cx(0.0, eps);
}

}  // namespace

cx RootContext::zp_half(long long k) const {
  long long r = k % (2LL * N);
  if (r < 0) r += 2LL * N;
  // zeta_half^{2N} = 1, zeta_half^2 = zeta.
  cx v = zeta_pow[static_cast<size_t>((r / 2) % N)];
  if (r % 2 != 0) v *= zeta_half;
  return v;
}

RootContext make_context(int N) {
  if (N % 2 == 0) throw domain_error("EvenN", "N must be odd, got " + std::to_string(N));
  if (N < 3) throw domain_error("TooSmall", "N must be >= 3, got " + std::to_string(N));
  RootContext ctx;
  ctx.N = N;
  ctx.p = (N - 1) / 2;
  ctx.zeta = std::polar(1.0, 2.0 * kPi / N);
  ctx.zeta_half = -std::polar(1.0, kPi / N);
  ctx.zeta_pow.resize(static_cast<size_t>(N));
  for (int k = 0; k < N; ++k) ctx.zeta_pow[static_cast<size_t>(k)] = std::polar(1.0, 2.0 * kPi * k / N);
  return ctx;
}

cx omega(const RootContext& ctx, cx x, cx y, cx z, long long n) {
  if (std::abs(z) == 0.0) throw domain_error("ZeroArgument", "omega requires z != 0");
  long long r = n % ctx.N;
  if (r < 0) r += ctx.N;
  const cx xz = x / z;
  const cx yz = y / z;
  cx acc = 1.0;
  for (long long j = 1; j <= r; ++j) {
    const cx den = 1.0 - xz * ctx.zp(j);
    if (std::abs(den) < kPoleTol) throw domain_error("PoleHit", "omega factor denominator vanished");
    acc *= yz / den;
  }
  return acc;
}

std::vector<cx> omega_table(const RootContext& ctx, cx x, cx y, cx z) {
  if (std::abs(z) == 0.0) throw domain_error("ZeroArgument", "omega requires z != 0");
  const cx xz = x / z;
  const cx yz = y / z;
  std::vector<cx> table(static_cast<size_t>(ctx.N));
  table[0] = 1.0;
  for (int j = 1; j < ctx.N; ++j) {
    const cx den = 1.0 - xz * ctx.zp(j);
    if (std::abs(den) < kPoleTol) throw domain_error("PoleHit", "omega factor denominator vanished");
    table[static_cast<size_t>(j)] = table[static_cast<size_t>(j - 1)] * yz / den;
  }
  return table;
}

cx g_func(const RootContext& ctx, cx x) {
  cx log_sum = 0.0;
  for (int j = 1; j < ctx.N; ++j) {
    const cx base = 1.0 - x * ctx.zp(j);
    if (std::abs(base) < kPoleTol) throw domain_error("PoleHit", "g factor vanished");
    log_sum += (static_cast<double>(j) / ctx.N) * log_rotated(base, ctx.cut_epsilon);
  }
  return std::exp(log_sum);
}

cx h_func(const RootContext& ctx, cx x) {
  if (std::abs(x) == 0.0) throw domain_error("ZeroArgument", "h requires x != 0");
  const cx xp = std::exp(-static_cast<double>(ctx.p) * std::log(x));
  return xp * g_func(ctx, x) / g_func(ctx, 1.0);
}

cx bracket(const RootContext& ctx, cx x) {
  if (std::abs(x - 1.0) < 1e-12) return 1.0;
  cx xn = 1.0;
  for (int j = 0; j < ctx.N; ++j) xn *= x;
  return (1.0 - xn) / (1.0 - x) / static_cast<double>(ctx.N);
}

int per_delta(const RootContext& ctx, long long n) {
  long long r = n % ctx.N;
  return r == 0 ? 1 : 0;
}

cx principal_nth_root(const RootContext& ctx, cx z) {
  if (std::abs(z) == 0.0) throw domain_error("ZeroArgument", "N-th root of zero");
  return std::polar(std::pow(std::abs(z), 1.0 / ctx.N), std::arg(z) / ctx.N);
}

RootTriple common_nth_roots(const RootContext& ctx, cx p0, cx p1, cx p2) {
  return {principal_nth_root(ctx, p0), principal_nth_root(ctx, p1), principal_nth_root(ctx, p2)};
}

}  // namespace qhi::cyclo
