#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace imglab::spectral {

inline constexpr int kMaxLevel = 12;

// Scale-aware pole guard: a denominator counts as vanishing when
// |den| <= 1e-9 * (1 + |num|).
bool denominator_vanishes(double den, double num);

/// One generator restricted to a level space: a symmetric 0/1 permutation
/// matrix squaring to the identity.
struct LevelOperator {
  int level = 0;
  char role = 'a';
  Eigen::MatrixXd matrix;
};

struct LevelOps {
  int level = 0;
  Eigen::MatrixXd a, b, c;
};

// Operator recursion: a_0 = b_0 = c_0 = [1]; a_n antidiagonal identity
// blocks, b_n = diag(a_{n-1}, c_{n-1}), c_n = diag(b_{n-1}, I).
LevelOps level_ops(int n);
LevelOperator level_op(int n, char role);

// M_n = (a_n + b_n + c_n) / 3.
Eigen::MatrixXd markov(int n);

struct SpectrumReport {
  int level = 0;  // 2^level eigenvalues; -1 when the input is a bare matrix
  double tol = 0.0;
  std::vector<double> eigenvalues;  // ascending, with multiplicity

  // Consecutive eigenvalues within merge_tol collapse to (mean, count).
  std::vector<std::pair<double, int>> clustered(double merge_tol) const;
};

/// Dense symmetric eigensolve; verifies every recomputed eigenpair residual
/// ||Mv - lambda v|| <= tol * ||M||. Asymmetric input is rejected.
SpectrumReport eigenvalues(const Eigen::MatrixXd& m, double tol);

// CSV "eigenvalue,multiplicity" after clustering at merge_tol.
std::string spectrum_csv(const SpectrumReport& r, double merge_tol);

// CSV "lambda,count": equal-width bins over [-1, 1]; counts sum to the
// eigenvalue count.
std::string histogram_csv(const SpectrumReport& r, int bins);

struct Point3 {
  double y = 0.0;
  double z = 0.0;
  double lambda = 0.0;
};

// Pencil M~_n(y, z, lambda) = a_n + y b_n + z c_n - lambda I.
Eigen::MatrixXd pencil_matrix(int n, const Point3& p);

// The renormalization map F and its conjugate G = C o F o C^{-1}.
Point3 map_F(const Point3& p);  // PoleError when a denominator vanishes
Point3 map_G(const Point3& p);
Point3 conjugator_C(const Point3& p);

enum class Variety { P, Z1, Z2, Z3 };

// P: the plane 1 + y + z - lambda = 0. Z1: (z-lambda)^2 = y^2 (the D-block
// singularities). Z2: y = 0 with (1-(l-z)(l+z))(1-l+z)(1+l-z) = 0.
// Z3: Z2 together with its one nonempty F-preimage (z = 0).
bool variety_member(const Point3& p, Variety tag, double tol);

/// Max elementwise residual of (1/y) S_1(M~_n(p)) = M~_{n-1}(F(p)) with
/// S_1 = A - B D^{-1} C on the level-splitting blocks.
/// Throws VarietyError when p lies on Z1 (D singular), PoleError when y = 0.
double schur_identity_residual(int n, const Point3& p);
bool schur_identity_check(int n, const Point3& p, double tol);

/// All lambda in [-3, 3] whose iterate F^k(1, 1, lambda), k <= n, lands on
/// the plane P (sign scan plus bisection to `tol`), together with the
/// Z1-line points {0, 2}. Cells crossing poles are subdivided.
std::vector<double> line_spectrum_candidates(int n, int grid, double tol);

struct InclusionRow {
  double lambda = 0.0;
  int multiplicity = 1;
  int k = -1;           // iterate count of the hit, -1 when unaccounted
  char variety = '?';   // 'P', '1' (Z1), '2' (Z2), '3' (F^{-1}(Z2))
  double residual = 0.0;
  bool refined = false;  // hit required local refinement of lambda
  bool accounted = false;
  bool conjecture_hit = false;  // P-preimage or Z3 (the set A)
};

struct InclusionReport {
  int level = 0;
  double tol = 0.0;
  std::vector<InclusionRow> rows;  // one per distinct eigenvalue
  bool all_accounted = false;
  double conjecture_fraction = 0.0;
};

/// For every eigenvalue of a_n + b_n + c_n, finds the least k <= n with
/// F^k(1,1,lambda) within tol of P, Z1 or Z2, refining lambda locally when
/// needed. `inclusion_check` asserts nothing; callers test all_accounted.
InclusionReport inclusion_check(int n, double tol);

/// Same trajectory analysis, scored against the conjectured attractor
/// A = Z3 union of all F-preimages of P only; informational.
InclusionReport conjecture_report(int n, double tol);

/// 4 is an eigenvalue of (a_{n-1}+1)(c_{n-1}+1), checked on the symmetric
/// conjugate (c+1)(a+1)(c+1)/2 which shares its nonzero spectrum.
bool special_point_check(int n, double tol);

struct BoxBounds {
  double ymin = -3, ymax = 3;
  double zmin = -3, zmax = 3;
  double lmin = -3, lmax = 3;
};

/// Implicit-surface sampling of F^{-depth}(P): grid points where the plane
/// residual of the depth-th iterate changes sign across a cell edge, poles
/// excluded. Returns interpolated crossing points.
std::vector<Point3> attractor_cloud(int depth, int grid, const BoxBounds& box,
                                    double tol);

std::string points_csv(const std::vector<Point3>& points);

}  // namespace imglab::spectral
