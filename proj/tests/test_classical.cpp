#include <cmath>
#include <random>

#include "doctest_main.hpp"
#include "qhi/classical.hpp"

using namespace qhi;
using namespace qhi::classical;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Adaptive Simpson quadrature of the Rogers integrand along a straight path.
cx rogers_integrand(cx t) {
  return std::log(t) / (1.0 - t) + std::log(1.0 - t) / t;
}

cx simpson(cx a, cx b, int depth) {
  const cx m = 0.5 * (a + b);
  auto rule = [](cx x, cx y) {
    const cx mid = 0.5 * (x + y);
    return (y - x) / 6.0 * (rogers_integrand(x) + 4.0 * rogers_integrand(mid) + rogers_integrand(y));
  };
  const cx whole = rule(a, b);
  const cx halves = rule(a, m) + rule(m, b);
  if (depth <= 0 || std::abs(whole - halves) < 1e-13) return halves;
  return simpson(a, m, depth - 1) + simpson(m, b, depth - 1);
}

cx rogers_by_quadrature(cx x) {
  // Integrate 0 -> 1/2 -> x, with the series tail of the log singularity at
  // the lower endpoint expanded through a^3.
  const double a = 1e-5;
  const double la = std::log(a);
  const cx tail = a * la - 2.0 * a + a * a * (la / 2.0 - 0.5) + a * a * a * (la / 3.0 - 2.0 / 9.0);
  const cx part1 = simpson(cx(a), cx(0.5), 28);
  const cx part2 = simpson(cx(0.5), x, 28);
  return -kPi * kPi / 6.0 - 0.5 * (tail + part1 + part2);
}

}  // namespace

TEST_CASE("dilog reference values") {
  CHECK(std::abs(dilog(cx(1.0)) - cx(kPi * kPi / 6.0)) < 1e-14);
  CHECK(std::abs(dilog(cx(-1.0)) - cx(-kPi * kPi / 12.0)) < 1e-14);
  CHECK(std::abs(dilog(cx(0.5)) - cx(kPi * kPi / 12.0 - 0.5 * std::log(2.0) * std::log(2.0))) <
        1e-14);
}

TEST_CASE("rogers L") {
  CHECK(std::abs(rogers_L(cx(1.0))) < 1e-14);
  CHECK(std::abs(rogers_L(cx(0.0)) + kPi * kPi / 6.0) < 1e-14);
  CHECK(std::abs(rogers_L(cx(0.5)) - rogers_by_quadrature(cx(0.5))) < 1e-10);
  CHECK(std::abs(rogers_L(cx(0.3, 0.2)) - rogers_by_quadrature(cx(0.3, 0.2))) < 1e-9);
  CHECK_THROWS_WITH_AS(rogers_L(cx(-0.5)), doctest::Contains("OutOfDomain"), domain_error);
  CHECK_THROWS_WITH_AS(rogers_L(cx(1.5)), doctest::Contains("OutOfDomain"), domain_error);
}

TEST_CASE("five-term identity on 1000 admissible real pairs") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  int tested = 0;
  while (tested < 1000) {
    double x = d(rng), y = d(rng);
    if (!(0.0 < y && y < x && x < 1.0)) continue;
    if (y < 1e-3 || x > 1.0 - 1e-3 || x - y < 1e-3) continue;
    CHECK(five_term_residual(cx(x), cx(y)) <= 1e-10);
    ++tested;
  }
}

TEST_CASE("five-term identity, complex pairs in the 0-1-y triangle") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> d(0.05, 0.95);
  int tested = 0;
  while (tested < 100) {
    const cx y(d(rng), 0.2 + 0.5 * d(rng));
    // x strictly inside the triangle (0, 1, y): convex combination
    double u = d(rng), v = d(rng);
    if (u + v >= 0.95) continue;
    const cx x = u * 1.0 + v * y;
    if (std::abs(x) < 0.05 || std::abs(x - 1.0) < 0.05 || std::abs(x - y) < 0.05) continue;
    CHECK(five_term_residual(x, y) <= 1e-9);
    ++tested;
  }
}

TEST_CASE("bloch-wigner") {
  CHECK(bloch_wigner(cx(0.7)) == 0.0);
  CHECK(bloch_wigner(cx(-2.5)) == 0.0);
  const cx w(0.3, 0.6);
  const double D = bloch_wigner(w);
  CHECK(std::abs(D - bloch_wigner(1.0 - 1.0 / w)) < 1e-12);
  CHECK(std::abs(D - bloch_wigner(1.0 / (1.0 - w))) < 1e-12);
  CHECK(std::abs(bloch_wigner(std::polar(1.0, kPi / 3.0)) - 1.0149416064096536) < 1e-9);
  CHECK_THROWS_AS(bloch_wigner(cx(0.0)), domain_error);
}
