#include "qhi/moebius.hpp"

#include <cmath>

namespace qhi::moebius {

PSL2C PSL2C::from_matrix(cx a, cx b, cx c, cx d) {
  const cx det = a * d - b * c;
  if (std::abs(det) == 0.0) throw domain_error("Singular", "matrix has zero determinant");
  const cx s = std::sqrt(det);
  return {a / s, b / s, c / s, d / s};
}

PSL2C compose(const PSL2C& m1, const PSL2C& m2) {
  return PSL2C::from_matrix(m1.a * m2.a + m1.b * m2.c, m1.a * m2.b + m1.b * m2.d,
                            m1.c * m2.a + m1.d * m2.c, m1.c * m2.b + m1.d * m2.d);
}

PSL2C inverse(const PSL2C& m) { return {m.d, -m.b, -m.c, m.a}; }

PSL2C conjugate_entries(const PSL2C& m) {
  return {std::conj(m.a), std::conj(m.b), std::conj(m.c), std::conj(m.d)};
}

bool approx_equal(const PSL2C& m1, const PSL2C& m2, double tol) {
  auto close = [tol](const PSL2C& x, const PSL2C& y, double sign) {
    return std::abs(x.a - sign * y.a) <= tol && std::abs(x.b - sign * y.b) <= tol &&
           std::abs(x.c - sign * y.c) <= tol && std::abs(x.d - sign * y.d) <= tol;
  };
  return close(m1, m2, 1.0) || close(m1, m2, -1.0);
}

SpherePoint act(const PSL2C& m, const SpherePoint& u) {
  if (u.infinite) {
    if (std::abs(m.c) == 0.0) return SpherePoint::infinity();
    return SpherePoint::finite(m.a / m.c);
  }
  const cx num = m.a * u.value + m.b;
  const cx den = m.c * u.value + m.d;
  if (std::abs(den) == 0.0) return SpherePoint::infinity();
  return SpherePoint::finite(num / den);
}

double chordal_distance(const SpherePoint& u, const SpherePoint& v) {
  auto norm2 = [](cx z) { return std::norm(z); };
  if (u.infinite && v.infinite) return 0.0;
  if (u.infinite) return 2.0 / std::sqrt(1.0 + norm2(v.value));
  if (v.infinite) return 2.0 / std::sqrt(1.0 + norm2(u.value));
  return 2.0 * std::abs(u.value - v.value) /
         std::sqrt((1.0 + norm2(u.value)) * (1.0 + norm2(v.value)));
}

cx cross_ratio(cx v0, cx v1, cx v2, cx v3) {
  return (v2 - v1) * (v3 - v0) / ((v2 - v0) * (v3 - v1));
}

}  // namespace qhi::moebius
