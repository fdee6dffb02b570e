#pragma once

// PSL(2,C) elements and their Moebius action on the Riemann sphere.

#include <optional>

#include "qhi/common.hpp"

namespace qhi::moebius {

// 2x2 complex matrix normalized to det 1; m and -m compare equal.
struct PSL2C {
  cx a{1.0}, b{0.0}, c{0.0}, d{1.0};

  static PSL2C identity() { return {}; }
  // Normalizes an arbitrary invertible matrix to det 1.
  static PSL2C from_matrix(cx a, cx b, cx c, cx d);

  cx det() const { return a * d - b * c; }
};

PSL2C compose(const PSL2C& m1, const PSL2C& m2);
PSL2C inverse(const PSL2C& m);
PSL2C conjugate_entries(const PSL2C& m);
bool approx_equal(const PSL2C& m1, const PSL2C& m2, double tol = kEntryTol);

// Point of CP^1 = C u {inf}.
struct SpherePoint {
  cx value{0.0};
  bool infinite = false;

  static SpherePoint finite(cx v) { return {v, false}; }
  static SpherePoint infinity() { return {cx(0.0), true}; }
};

SpherePoint act(const PSL2C& m, const SpherePoint& u);

// Distance on the sphere that treats infinity uniformly with finite points.
double chordal_distance(const SpherePoint& u, const SpherePoint& v);

cx cross_ratio(cx v0, cx v1, cx v2, cx v3);

}  // namespace qhi::moebius
