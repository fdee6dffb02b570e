#include "qhi/classical.hpp"

#include <cmath>

namespace qhi::classical {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kPi2_6 = kPi * kPi / 6.0;

// Power series, adequate for |z| <= 0.6.
cx dilog_series(cx z) {
  cx term = z;
  cx sum = z;
  for (int k = 2; k < 400; ++k) {
    term *= z;
    const cx add = term / static_cast<double>(k * k);
    sum += add;
    if (std::abs(add) < 1e-18 * (1.0 + std::abs(sum))) break;
  }
  return sum;
}

// Bernoulli-series expansion Li2(z) = sum B_n w^{n+1}/(n+1)!, w = -log(1-z);
// converges for |w| < 2pi, used near the unit circle away from 0 and 1.
cx dilog_bernoulli(cx z) {
  static const std::vector<double> B = [] {
    std::vector<double> b(64, 0.0);
    std::vector<double> binom_row;
    b[0] = 1.0;
    for (size_t m = 1; m < b.size(); ++m) {
      // sum_{j=0}^{m} C(m+1, j) B_j = 0
      double acc = 0.0;
      double c = 1.0;  // C(m+1, 0)
      for (size_t j = 0; j < m; ++j) {
        acc += c * b[j];
        c = c * static_cast<double>(m + 1 - j) / static_cast<double>(j + 1);
      }
      b[m] = -acc / c;
    }
    return b;
  }();
  const cx w = -std::log(1.0 - z);
  cx term = w;  // w^{n+1}/(n+1)! at n=0
  cx sum = 0.0;
  for (size_t n = 0; n < B.size(); ++n) {
    sum += B[n] * term;
    term *= w / static_cast<double>(n + 2);
    if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) break;
  }
  return sum;
}

bool on_ray(cx x) {
  if (x.imag() != 0.0) return false;
  return x.real() < 0.0 || x.real() > 1.0;
}

}  // namespace

cx dilog(cx z) {
  if (std::abs(z) <= 0.6) return dilog_series(z);
  if (std::abs(z) > 1.4) {
    // Li2(z) = -Li2(1/z) - pi^2/6 - log(-z)^2 / 2
    const cx l = std::log(-z);
    return -dilog(1.0 / z) - kPi2_6 - 0.5 * l * l;
  }
  if (std::abs(1.0 - z) <= 0.6) {
    // Li2(z) = pi^2/6 - log(z) log(1-z) - Li2(1-z)
    if (std::abs(1.0 - z) == 0.0) return cx(kPi2_6, 0.0);
    return kPi2_6 - std::log(z) * std::log(1.0 - z) - dilog(1.0 - z);
  }
  // Near the unit circle away from 0 and 1: |log(1-z)| stays well below 2pi.
  return dilog_bernoulli(z);
}

cx rogers_L(cx x) {
  if (on_ray(x)) throw domain_error("OutOfDomain", "Rogers L not defined on (-inf,0) u (1,+inf)");
  if (std::abs(x) == 0.0) return cx(-kPi2_6, 0.0);
  if (std::abs(x - 1.0) == 0.0) return cx(0.0, 0.0);
  return dilog(x) + 0.5 * std::log(x) * std::log(1.0 - x) - kPi2_6;
}

double five_term_residual(cx x, cx y) {
  const cx t1 = rogers_L(x);
  const cx t2 = rogers_L(y);
  const cx t3 = rogers_L(y / x);
  const cx t4 = rogers_L((1.0 - 1.0 / x) / (1.0 - 1.0 / y));
  const cx t5 = rogers_L((1.0 - x) / (1.0 - y));
  return std::abs(t1 - t2 + t3 - t4 + t5);
}

double bloch_wigner(cx w) {
  if (std::abs(w) == 0.0 || std::abs(w - 1.0) == 0.0)
    throw domain_error("Degenerate", "Bloch-Wigner requires w outside {0,1}");
  if (w.imag() == 0.0) return 0.0;
  return dilog(w).imag() + std::log(std::abs(w)) * std::arg(1.0 - w);
}

}  // namespace qhi::classical
