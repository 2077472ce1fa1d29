#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace imglab::measure {

/// Probability measure supported on {e, a, b, c}; weights sum to 1 within
/// 1e-12. Nondegenerate on generators means w_e = 0 and w_a, w_b, w_c > 0.
struct FiniteMeasure {
  double e = 0.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

FiniteMeasure make_measure(double e, double a, double b, double c);
bool nondegenerate_on_generators(const FiniteMeasure& m);
double l1_distance(const FiniteMeasure& lhs, const FiniteMeasure& rhs);

std::string measure_to_json(const FiniteMeasure& m);
FiniteMeasure measure_from_json(const std::string& text);

/// Restriction mu|_0 of mu = xa + yb + zc in closed form:
/// (1-z)x^2/D . e + y . a + z . b + yx^2/D . c with D = z^2 - 2z + 1 - y^2.
FiniteMeasure restrict0(const FiniteMeasure& m);

/// Phi: mu -> (mu|_0 - mu|_0(e)) / (1 - mu|_0(e)); strips the identity mass.
FiniteMeasure phi_transform(const FiniteMeasure& m);

/// Coefficient form of Phi on the simplex: (x, y, z) -> (yD, zD, yx^2)/den
/// with den = D + (z-1)x^2.
std::array<double, 3> coefficient_map(double x, double y, double z);

struct FixedPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double alpha = 0.0;
  double cubic_residual = 0.0;
  double map_residual = 0.0;
};

/// The self-affine fixed point: x* is the root of Z^3 - 6Z^2 + 11Z - 4 in
/// (0, 1) by bisection + Newton, y* = x*^2 - 4x* + 2, z* = -1 + 3x* - x*^2,
/// alpha = (1-z*)x*^2/D*. Verified fixed under coefficient_map within 10*tol.
FixedPoint fixed_point(double tol);

/// restrict0(m) = alpha e + (1-alpha) m within tol in total variation, with
/// alpha = restrict0(m).e and 0 < alpha < 1.
bool self_affinity_check(const FiniteMeasure& m, double tol);

struct UniquenessReport {
  int grid = 0;
  std::vector<std::array<double, 3>> interior_fixed_points;  // deduplicated
  double plus_branch_y = 0.0;  // y(x*) on the plus branch
  double fixed_point_y = 0.0;
};

/// Multi-start damped-Newton search for fixed points of coefficient_map over
/// the open simplex; also evaluates the plus branch
/// y(x) = (-x^2 + x + x sqrt(x^2 - 10x + 9)) / 4 at x*.
UniquenessReport uniqueness_scan(int grid);

struct WalkReport {
  std::uint64_t returns = 0;
  std::uint64_t seed = 0;
  int streams = 1;
  std::array<std::uint64_t, 4> tallies{};  // e, a, b, c
  FiniteMeasure empirical;
  std::string rng = "mt19937_64/splitmix64-streams";
};

/// Monte-Carlo oracle for mu|_0: simulates the random walk with internal
/// degrees of freedom on (section accumulator, coordinate), tallying the
/// classified accumulator at each return to coordinate 0. Deterministic for
/// fixed (seed, streams); streams run independently and merge by index.
WalkReport walk_oracle(const FiniteMeasure& m, std::uint64_t returns,
                       std::uint64_t seed, int streams = 1, int threads = 1);

}  // namespace imglab::measure
