#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "imglab/errors.hpp"
#include "imglab/measure.hpp"

using namespace imglab::measure;
using imglab::InputError;
using imglab::PoleError;
using imglab::SingularAlgebraError;

namespace {

FiniteMeasure uniform() { return make_measure(0, 1.0 / 3, 1.0 / 3, 1.0 / 3); }

}  // namespace

TEST_CASE("measure construction") {
  CHECK_THROWS_AS(make_measure(0, 0.5, 0.5, 0.5), InputError);
  CHECK_THROWS_AS(make_measure(0, -0.1, 0.6, 0.5), InputError);
  CHECK(nondegenerate_on_generators(uniform()));
  CHECK(!nondegenerate_on_generators(make_measure(0.2, 0.3, 0.3, 0.2)));

  auto m = measure_from_json("{\"a\":0.5,\"b\":0.25,\"c\":0.25}");
  CHECK(m.e == 0.0);
  CHECK(m.a == 0.5);
  auto back = measure_from_json(measure_to_json(m));
  CHECK(back.a == m.a);
  CHECK_THROWS_AS(measure_from_json("{\"a\":1.0}"), InputError);
}

TEST_CASE("restriction to the 0 subtree") {
  FiniteMeasure r = restrict0(uniform());
  CHECK(r.e == doctest::Approx(2.0 / 9).epsilon(1e-14));
  CHECK(r.a == doctest::Approx(1.0 / 3).epsilon(1e-14));
  CHECK(r.b == doctest::Approx(1.0 / 3).epsilon(1e-14));
  CHECK(r.c == doctest::Approx(1.0 / 9).epsilon(1e-14));

  FiniteMeasure r2 = restrict0(make_measure(0, 0.5, 0.25, 0.25));
  CHECK(r2.e == doctest::Approx(3.0 / 8).epsilon(1e-14));
  CHECK(r2.a == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(r2.b == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(r2.c == doctest::Approx(1.0 / 8).epsilon(1e-14));

  CHECK_THROWS_AS(restrict0(make_measure(0.5, 0.2, 0.2, 0.1)),
                  SingularAlgebraError);
}

TEST_CASE("restriction sums to one on random simplex points") {
  std::mt19937_64 rng(19);
  auto u = [&rng] { return (rng() >> 11) * 0x1.0p-53; };
  int checked = 0;
  while (checked < 1000) {
    double a = u(), b = u(), c = u();
    const double s = a + b + c;
    a /= s;
    b /= s;
    c = 1.0 - a - b;
    if (a < 1e-3 || b < 1e-3 || c < 1e-3) continue;
    const double d = c * c - 2 * c + 1 - b * b;
    if (std::abs(d) < 1e-6) continue;
    FiniteMeasure r = restrict0({0, a, b, c});
    CHECK(r.e + r.a + r.b + r.c == doctest::Approx(1.0).epsilon(1e-10));
    ++checked;
  }
}

TEST_CASE("phi transform") {
  FiniteMeasure t = phi_transform(uniform());
  CHECK(t.e == 0.0);
  CHECK(t.a == doctest::Approx(3.0 / 7).epsilon(1e-14));
  CHECK(t.b == doctest::Approx(3.0 / 7).epsilon(1e-14));
  CHECK(t.c == doctest::Approx(1.0 / 7).epsilon(1e-14));

  // Preserves the open simplex wherever defined.
  std::mt19937_64 rng(23);
  auto u = [&rng] { return (rng() >> 11) * 0x1.0p-53; };
  int checked = 0;
  while (checked < 300) {
    double a = u(), b = u(), c = u();
    const double s = a + b + c;
    a /= s;
    b /= s;
    c = 1.0 - a - b;
    if (a < 1e-2 || b < 1e-2 || c < 1e-2) continue;
    if (std::abs(c * c - 2 * c + 1 - b * b) < 1e-6) continue;
    FiniteMeasure out = phi_transform({0, a, b, c});
    CHECK(out.a > 0.0);
    CHECK(out.b > 0.0);
    CHECK(out.c > 0.0);
    CHECK(out.a + out.b + out.c == doctest::Approx(1.0).epsilon(1e-10));
    ++checked;
  }
}

TEST_CASE("coefficient map") {
  auto img = coefficient_map(1.0 / 3, 1.0 / 3, 1.0 / 3);
  CHECK(img[0] == doctest::Approx(3.0 / 7).epsilon(1e-14));
  CHECK(img[1] == doctest::Approx(3.0 / 7).epsilon(1e-14));
  CHECK(img[2] == doctest::Approx(1.0 / 7).epsilon(1e-14));
  CHECK(img[0] + img[1] + img[2] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fixed point") {
  FixedPoint fp = fixed_point(1e-12);
  CHECK(std::abs(fp.x - 0.4786202932) <= 1e-9);
  CHECK(fp.cubic_residual <= 1e-12);
  CHECK(fp.map_residual <= 1e-10);
  CHECK(fp.y == doctest::Approx(0.3145962123).epsilon(1e-8));
  CHECK(fp.z == doctest::Approx(0.2067834945).epsilon(1e-8));
  CHECK(fp.x + fp.y + fp.z == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fp.alpha > 0.0);
  CHECK(fp.alpha < 1.0);

  // Phi fixes the measure: coefficient_map leaves (x*, y*, z*) in place.
  auto img = coefficient_map(fp.x, fp.y, fp.z);
  CHECK(img[0] == doctest::Approx(fp.x).epsilon(1e-12));
}

TEST_CASE("self affinity") {
  FixedPoint fp = fixed_point(1e-12);
  FiniteMeasure star = make_measure(0, fp.x, fp.y, fp.z);
  CHECK(self_affinity_check(star, 1e-10));
  CHECK(!self_affinity_check(uniform(), 1e-10));
  CHECK(!self_affinity_check(star, 0.0));  // strictness under tol = 0

  // restrict0(mu*) = alpha e + (1 - alpha) mu* componentwise.
  FiniteMeasure r = restrict0(star);
  CHECK(r.e == doctest::Approx(fp.alpha).epsilon(1e-12));
  CHECK(r.a == doctest::Approx((1 - fp.alpha) * fp.x).epsilon(1e-10));
  CHECK(r.b == doctest::Approx((1 - fp.alpha) * fp.y).epsilon(1e-10));
  CHECK(r.c == doctest::Approx((1 - fp.alpha) * fp.z).epsilon(1e-10));
}

TEST_CASE("uniqueness scan") {
  UniquenessReport report = uniqueness_scan(100);
  REQUIRE(report.interior_fixed_points.size() == 1);
  FixedPoint fp = fixed_point(1e-12);
  CHECK(report.interior_fixed_points[0][0] == doctest::Approx(fp.x).epsilon(1e-8));
  CHECK(report.interior_fixed_points[0][1] == doctest::Approx(fp.y).epsilon(1e-8));
  CHECK(std::abs(report.plus_branch_y - fp.y) <= 1e-9);
  CHECK_THROWS_AS(uniqueness_scan(50), InputError);
}

TEST_CASE("walk oracle against the closed form") {
  WalkReport report = walk_oracle(uniform(), 200000, 12345);
  FiniteMeasure expected = restrict0(uniform());
  CHECK(l1_distance(report.empirical, expected) <= 0.02);

  // Deterministic under the seed.
  WalkReport again = walk_oracle(uniform(), 200000, 12345);
  CHECK(report.tallies == again.tallies);
  WalkReport other = walk_oracle(uniform(), 200000, 54321);
  CHECK(report.tallies != other.tallies);

  // Stream-split runs are deterministic too and merge by index.
  WalkReport split = walk_oracle(uniform(), 200000, 12345, 4, 2);
  WalkReport split2 = walk_oracle(uniform(), 200000, 12345, 4, 4);
  CHECK(split.tallies == split2.tallies);
  CHECK(l1_distance(split.empirical, expected) <= 0.02);

  CHECK_THROWS_AS(walk_oracle(make_measure(0.5, 0.2, 0.2, 0.1), 10, 1),
                  SingularAlgebraError);
  CHECK_THROWS_AS(walk_oracle(uniform(), 0, 1), InputError);
}

TEST_CASE("walk oracle at the fixed point") {
  FixedPoint fp = fixed_point(1e-12);
  FiniteMeasure star = make_measure(0, fp.x, fp.y, fp.z);
  WalkReport report = walk_oracle(star, 200000, 777);
  CHECK(std::abs(report.empirical.e - fp.alpha) <= 0.02);
}
