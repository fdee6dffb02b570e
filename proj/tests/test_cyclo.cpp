#include <cmath>
#include <complex>
#include <random>

#include "doctest_main.hpp"
#include "qhi/cyclo.hpp"

using namespace qhi;
using cyclo::make_context;

namespace {

// Independent extended-precision re-evaluation of g via long double products.
std::complex<long double> g_oracle(int N, std::complex<long double> x, long double eps) {
  const long double pi = 3.14159265358979323846264338327950288L;
  std::complex<long double> log_sum = 0.0L;
  for (int j = 1; j < N; ++j) {
    const std::complex<long double> zj = std::polar(1.0L, 2.0L * pi * j / N);
    const std::complex<long double> base = 1.0L - x * zj;
    const std::complex<long double> rot = base * std::polar(1.0L, -eps);
    const std::complex<long double> lg =
        std::complex<long double>(std::log(std::abs(rot)), std::arg(rot)) +
        std::complex<long double>(0.0L, eps);
    log_sum += (static_cast<long double>(j) / N) * lg;
  }
  return std::exp(log_sum);
}

}  // namespace

TEST_CASE("make_context basics") {
  auto c3 = make_context(3);
  CHECK(c3.p == 1);
  CHECK(std::abs(c3.zeta - std::polar(1.0, 2.0 * 3.14159265358979323846 / 3)) < 1e-15);

  auto c5 = make_context(5);
  CHECK(c5.p == 2);
  // zeta^{p+1} = -exp(i pi / 5)
  cx zp1 = 1.0;
  for (int k = 0; k < c5.p + 1; ++k) zp1 *= c5.zeta;
  CHECK(std::abs(zp1 - c5.zeta_half) < 1e-14);
  CHECK(std::abs(c5.zeta_half - (-std::polar(1.0, 3.14159265358979323846 / 5))) < 1e-14);
  CHECK(std::abs(c5.zeta_half * c5.zeta_half - c5.zeta) < 1e-14);

  CHECK_THROWS_WITH_AS(make_context(4), doctest::Contains("EvenN"), domain_error);
  CHECK_THROWS_WITH_AS(make_context(1), doctest::Contains("TooSmall"), domain_error);
}

TEST_CASE("omega basics and periodicity") {
  auto ctx = make_context(3);
  CHECK(std::abs(cyclo::omega(ctx, cx(0.3, 0.1), cx(1.0, 0.4), cx(2.0, -0.2), 0) - 1.0) < 1e-15);
  // x = 0, y = z: every factor is 1
  CHECK(std::abs(cyclo::omega(ctx, cx(0.0), cx(1.3, 0.2), cx(1.3, 0.2), 2) - 1.0) < 1e-14);

  // On-curve N-periodicity: pick x,y free, z = (x^3+y^3)^{1/3}.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const cx x(d(rng), d(rng)), y(d(rng), d(rng));
    const cx zN = x * x * x + y * y * y;
    if (std::abs(zN) < 1e-3) continue;
    const cx z = cyclo::principal_nth_root(ctx, zN);
    for (int n = -3; n <= 5; ++n) {
      const cx a = cyclo::omega(ctx, x, y, z, n);
      const cx b = cyclo::omega(ctx, x, y, z, n + 3);
      CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a)));
    }
    // homogeneity
    const cx t(0.4, -0.9);
    const cx a = cyclo::omega(ctx, x, y, z, 2);
    const cx b = cyclo::omega(ctx, t * x, t * y, t * z, 2);
    CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
  }
  // omega_table agrees with direct evaluation
  auto ctx7 = make_context(7);
  const cx x(0.3, 0.4), y(-0.2, 1.0), z(1.4, 0.3);
  auto tab = cyclo::omega_table(ctx7, x, y, z);
  for (int n = 0; n < 7; ++n)
    CHECK(std::abs(tab[static_cast<size_t>(n)] - cyclo::omega(ctx7, x, y, z, n)) < 1e-13);
}

TEST_CASE("g: |g(1)|^2 = N and oracle match") {
  for (int N = 3; N <= 51; N += 2) {
    auto ctx = make_context(N);
    const cx g1 = cyclo::g_func(ctx, 1.0);
    CHECK(std::abs(std::norm(g1) - N) < 1e-12 * N);
  }
  // multiprecision-style oracle at N = 3
  auto ctx = make_context(3);
  const cx x(0.4, 0.1);
  const cx got = cyclo::g_func(ctx, x);
  const auto want = g_oracle(3, {0.4L, 0.1L}, ctx.cut_epsilon);
  CHECK(std::abs(got - cx(static_cast<double>(want.real()), static_cast<double>(want.imag()))) <
        1e-12);
  // stability under halving cut_epsilon
  auto ctx2 = ctx;
  ctx2.cut_epsilon = ctx.cut_epsilon / 2.0;
  CHECK(std::abs(cyclo::g_func(ctx, x) - cyclo::g_func(ctx2, x)) < 1e-12);
}

TEST_CASE("h") {
  auto ctx = make_context(3);
  CHECK(std::abs(cyclo::h_func(ctx, 1.0) - 1.0) < 1e-13);
  const cx x(0.4, 0.1);
  const cx expect = std::exp(-1.0 * std::log(x)) * cyclo::g_func(ctx, x) / cyclo::g_func(ctx, 1.0);
  CHECK(std::abs(cyclo::h_func(ctx, x) - expect) < 1e-13);
  CHECK_THROWS_WITH_AS(cyclo::h_func(ctx, 0.0), doctest::Contains("ZeroArgument"), domain_error);
}

TEST_CASE("bracket") {
  auto ctx = make_context(5);
  CHECK(std::abs(cyclo::bracket(ctx, 1.0) - 1.0) < 1e-14);
  CHECK(std::abs(cyclo::bracket(ctx, ctx.zeta)) < 1e-14);
  CHECK(std::abs(cyclo::bracket(ctx, 0.0) - 0.2) < 1e-14);
  // bracket(x)(1-x)N = 1 - x^N
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-1.5, 1.5);
  for (int i = 0; i < 30; ++i) {
    const cx x(d(rng), d(rng));
    if (std::abs(x - 1.0) < 0.1) continue;
    cx xn = 1.0;
    for (int k = 0; k < 5; ++k) xn *= x;
    const cx lhs = cyclo::bracket(ctx, x) * (1.0 - x) * 5.0;
    CHECK(std::abs(lhs - (1.0 - xn)) <= 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("per_delta") {
  auto ctx = make_context(5);
  CHECK(cyclo::per_delta(ctx, 0) == 1);
  CHECK(cyclo::per_delta(ctx, 5) == 1);
  CHECK(cyclo::per_delta(ctx, -5) == 1);
  CHECK(cyclo::per_delta(ctx, 1) == 0);
}

TEST_CASE("common_nth_roots") {
  auto ctx = make_context(3);
  auto r = cyclo::common_nth_roots(ctx, 1.0, 1.0, -2.0);
  CHECK(std::abs(r.r0 - 1.0) < 1e-14);
  CHECK(std::abs(r.r1 - 1.0) < 1e-14);
  // principal cube root of -2: modulus 2^{1/3}, argument pi/3
  CHECK(std::abs(r.r2 - std::polar(std::pow(2.0, 1.0 / 3.0), 3.14159265358979323846 / 3)) < 1e-14);

  auto r2 = cyclo::common_nth_roots(ctx, 8.0, -1.0, -7.0);
  CHECK(std::abs(r2.r0 - 2.0) < 1e-14);

  // rescaling by t^N multiplies each output by an N-th root determination of
  // t^N: all ratios share the modulus |t| and satisfy q^N = t^N
  const cx t(0.7, 0.45);
  cx tN = 1.0;
  for (int k = 0; k < 3; ++k) tN *= t;
  const cx a(0.3, 0.8), b(-1.2, 0.1), c(2.0, -0.7);
  auto base = cyclo::common_nth_roots(ctx, a, b, c);
  auto scaled = cyclo::common_nth_roots(ctx, tN * a, tN * b, tN * c);
  for (const cx q : {scaled.r0 / base.r0, scaled.r1 / base.r1, scaled.r2 / base.r2}) {
    CHECK(std::abs(std::abs(q) - std::abs(t)) < 1e-12);
    CHECK(std::abs(q * q * q - tN) < 1e-12);
  }

  CHECK_THROWS_AS(cyclo::common_nth_roots(ctx, 0.0, 1.0, 1.0), domain_error);
}
