#include <random>

#include "doctest_main.hpp"
#include "qhi/moebius.hpp"

using namespace qhi;
using namespace qhi::moebius;

namespace {

PSL2C random_psl(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  while (true) {
    const cx a(d(rng), d(rng)), b(d(rng), d(rng)), c(d(rng), d(rng)), dd(d(rng), d(rng));
    if (std::abs(a * dd - b * c) > 0.1) return PSL2C::from_matrix(a, b, c, dd);
  }
}

}  // namespace

TEST_CASE("compose and inverse") {
  std::mt19937_64 rng(3);
  const PSL2C id = PSL2C::identity();
  const PSL2C m = random_psl(rng);
  CHECK(approx_equal(compose(id, m), m));
  CHECK(approx_equal(compose(m, inverse(m)), id));

  const PSL2C p1 = PSL2C::from_matrix(1, 1, 0, 1);
  const PSL2C p2 = PSL2C::from_matrix(1, 2, 0, 1);
  CHECK(approx_equal(compose(p1, p2), PSL2C::from_matrix(1, 3, 0, 1)));
  CHECK(approx_equal(inverse(p1), PSL2C::from_matrix(1, -1, 0, 1)));
  CHECK(approx_equal(inverse(id), id));

  for (int i = 0; i < 20; ++i) {
    const PSL2C r = random_psl(rng);
    CHECK(approx_equal(compose(r, inverse(r)), id));
  }
  // up-to-sign equality
  PSL2C neg = m;
  neg.a = -neg.a;
  neg.b = -neg.b;
  neg.c = -neg.c;
  neg.d = -neg.d;
  CHECK(approx_equal(m, neg));
}

TEST_CASE("action on the sphere") {
  const PSL2C id = PSL2C::identity();
  CHECK(!act(id, SpherePoint::finite(0.0)).infinite);
  CHECK(std::abs(act(id, SpherePoint::finite(0.0)).value) < 1e-15);
  CHECK(std::abs(act(PSL2C::from_matrix(1, 1, 0, 1), SpherePoint::finite(0.0)).value - 1.0) <
        1e-15);
  CHECK(act(PSL2C::from_matrix(0, -1, 1, 0), SpherePoint::finite(0.0)).infinite);

  // act(compose(m1,m2), u) = act(m1, act(m2,u))
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    const PSL2C m1 = random_psl(rng), m2 = random_psl(rng);
    const SpherePoint u = SpherePoint::finite(cx(d(rng), d(rng)));
    const SpherePoint lhs = act(compose(m1, m2), u);
    const SpherePoint rhs = act(m1, act(m2, u));
    CHECK(chordal_distance(lhs, rhs) < 1e-10);
  }
  // cross-ratio invariance
  for (int i = 0; i < 50; ++i) {
    const PSL2C m = random_psl(rng);
    const cx v0(d(rng), d(rng)), v1(d(rng), d(rng)), v2(d(rng), d(rng)), v3(d(rng), d(rng));
    if (std::abs(v0 - v2) < 0.2 || std::abs(v1 - v3) < 0.2 || std::abs(v0 - v1) < 0.2 ||
        std::abs(v2 - v3) < 0.2)
      continue;
    const auto w0 = act(m, SpherePoint::finite(v0));
    const auto w1 = act(m, SpherePoint::finite(v1));
    const auto w2 = act(m, SpherePoint::finite(v2));
    const auto w3 = act(m, SpherePoint::finite(v3));
    if (w0.infinite || w1.infinite || w2.infinite || w3.infinite) continue;
    const cx before = cross_ratio(v0, v1, v2, v3);
    const cx after = cross_ratio(w0.value, w1.value, w2.value, w3.value);
    CHECK(std::abs(before - after) <= 1e-10 * std::max(1.0, std::abs(before)));
  }
}
