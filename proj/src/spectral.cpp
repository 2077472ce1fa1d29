#include "imglab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "imglab/errors.hpp"
#include "imglab/format.hpp"

namespace imglab::spectral {

namespace {

constexpr double kPoleScale = 1e-9;

void check_level(int n) {
  if (n < 0 || n > kMaxLevel) {
    throw InputError("level must be 0.." + std::to_string(kMaxLevel));
  }
}

double plane_residual(const Point3& p) { return 1.0 + p.y + p.z - p.lambda; }

double z1_product(const Point3& p) {
  return (p.z - p.lambda - p.y) * (p.z - p.lambda + p.y);
}

double z2_factor(const Point3& p) {
  const double l = p.lambda, z = p.z;
  return (1.0 - (l - z) * (l + z)) * (1.0 - l + z) * (1.0 + l - z);
}

}  // namespace

bool denominator_vanishes(double den, double num) {
  return std::abs(den) <= kPoleScale * (1.0 + std::abs(num));
}

LevelOps level_ops(int n) {
  check_level(n);
  LevelOps ops;
  ops.level = n;
  ops.a = ops.b = ops.c = Eigen::MatrixXd::Ones(1, 1);
  for (int k = 1; k <= n; ++k) {
    const int m = 1 << (k - 1);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2 * m, 2 * m);
    a.block(0, m, m, m) = Eigen::MatrixXd::Identity(m, m);
    a.block(m, 0, m, m) = Eigen::MatrixXd::Identity(m, m);
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(2 * m, 2 * m);
    b.block(0, 0, m, m) = ops.a;
    b.block(m, m, m, m) = ops.c;
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(2 * m, 2 * m);
    c.block(0, 0, m, m) = ops.b;
    c.block(m, m, m, m) = Eigen::MatrixXd::Identity(m, m);
    ops.a = std::move(a);
    ops.b = std::move(b);
    ops.c = std::move(c);
  }
  return ops;
}

LevelOperator level_op(int n, char role) {
  LevelOps ops = level_ops(n);
  LevelOperator out;
  out.level = n;
  out.role = role;
  switch (role) {
    case 'a':
      out.matrix = std::move(ops.a);
      break;
    case 'b':
      out.matrix = std::move(ops.b);
      break;
    case 'c':
      out.matrix = std::move(ops.c);
      break;
    default:
      throw InputError("operator role must be a, b or c");
  }
  return out;
}

Eigen::MatrixXd markov(int n) {
  LevelOps ops = level_ops(n);
  return (ops.a + ops.b + ops.c) / 3.0;
}

std::vector<std::pair<double, int>> SpectrumReport::clustered(
    double merge_tol) const {
  std::vector<std::pair<double, int>> out;
  std::size_t i = 0;
  while (i < eigenvalues.size()) {
    std::size_t j = i + 1;
    double sum = eigenvalues[i];
    while (j < eigenvalues.size() &&
           eigenvalues[j] - eigenvalues[j - 1] <= merge_tol) {
      sum += eigenvalues[j];
      ++j;
    }
    out.emplace_back(sum / static_cast<double>(j - i), static_cast<int>(j - i));
    i = j;
  }
  return out;
}

SpectrumReport eigenvalues(const Eigen::MatrixXd& m, double tol) {
  if (m.rows() != m.cols()) throw InputError("matrix must be square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol * scale) {
    throw InputError("matrix is not symmetric within tolerance");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigensolver failed to converge");
  }
  const double norm = std::max(
      solver.eigenvalues().cwiseAbs().maxCoeff(), 1e-300);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double lambda = solver.eigenvalues()(i);
    const Eigen::VectorXd v = solver.eigenvectors().col(i);
    const double residual = (m * v - lambda * v).norm();
    if (residual > tol * norm) {
      throw std::runtime_error("eigenpair residual " + std::to_string(residual) +
                               " exceeds tolerance");
    }
  }
  SpectrumReport report;
  report.tol = tol;
  report.level = -1;
  const auto rows = static_cast<std::size_t>(m.rows());
  if ((rows & (rows - 1)) == 0) {
    int lvl = 0;
    while ((1u << lvl) < rows) ++lvl;
    report.level = lvl;
  }
  report.eigenvalues.assign(solver.eigenvalues().data(),
                            solver.eigenvalues().data() + m.rows());
  std::sort(report.eigenvalues.begin(), report.eigenvalues.end());
  return report;
}

std::string spectrum_csv(const SpectrumReport& r, double merge_tol) {
  std::ostringstream os;
  os << "eigenvalue,multiplicity\n";
  for (const auto& [value, count] : r.clustered(merge_tol)) {
    os << imglab::fmt_real(value) << ',' << count << '\n';
  }
  return os.str();
}

std::string histogram_csv(const SpectrumReport& r, int bins) {
  if (bins < 1) throw InputError("bins must be >= 1");
  std::vector<long> counts(bins, 0);
  for (double ev : r.eigenvalues) {
    int idx = static_cast<int>(std::floor((ev + 1.0) / 2.0 * bins));
    idx = std::clamp(idx, 0, bins - 1);  // lambda = 1 lands in the last bin
    ++counts[idx];
  }
  std::ostringstream os;
  os << "lambda,count\n";
  for (int i = 0; i < bins; ++i) {
    const double center = -1.0 + (i + 0.5) * 2.0 / bins;
    os << imglab::fmt_real(center) << ',' << counts[i] << '\n';
  }
  return os.str();
}

Eigen::MatrixXd pencil_matrix(int n, const Point3& p) {
  LevelOps ops = level_ops(n);
  const Eigen::Index dim = ops.a.rows();
  return ops.a + p.y * ops.b + p.z * ops.c -
         p.lambda * Eigen::MatrixXd::Identity(dim, dim);
}

Point3 map_F(const Point3& p) {
  const double q = -p.y * p.y + p.z * p.z - 2.0 * p.z * p.lambda +
                   p.lambda * p.lambda;
  const double n3 = -p.lambda * p.y * p.y + p.lambda * p.z * p.z -
                    2.0 * p.z * p.lambda * p.lambda +
                    p.lambda * p.lambda * p.lambda + p.z - p.lambda;
  if (denominator_vanishes(p.y, p.z)) throw PoleError("y", p.y);
  if (denominator_vanishes(q, 1.0)) throw PoleError("quadratic", q);
  if (denominator_vanishes(p.y * q, n3)) throw PoleError("y*quadratic", p.y * q);
  return {p.z / p.y, 1.0 / q, n3 / (p.y * q)};
}

Point3 map_G(const Point3& p) {
  if (denominator_vanishes(p.y, std::max(std::abs(p.z), std::abs(p.lambda)))) {
    throw PoleError("y", p.y);
  }
  if (denominator_vanishes(p.lambda, std::abs(p.y))) {
    throw PoleError("lambda", p.lambda);
  }
  return {p.z / p.y, (p.lambda / p.y) * (-2.0 + p.y * p.lambda),
          (-p.y + p.y * p.lambda * p.lambda - p.lambda) / p.lambda};
}

Point3 conjugator_C(const Point3& p) {
  if (denominator_vanishes(p.y, 1.0)) throw PoleError("y", p.y);
  if (denominator_vanishes(p.z, 1.0)) throw PoleError("z", p.z);
  return {1.0 / p.y, 1.0 / p.z, p.y + p.z - p.lambda};
}

bool variety_member(const Point3& p, Variety tag, double tol) {
  switch (tag) {
    case Variety::P:
      return std::abs(plane_residual(p)) <= tol;
    case Variety::Z1:
      return std::abs(z1_product(p)) <= tol;
    case Variety::Z2:
      return std::abs(p.y) <= tol && std::abs(z2_factor(p)) <= tol;
    case Variety::Z3: {
      if (variety_member(p, Variety::Z2, tol)) return true;
      if (std::abs(p.z) > tol) return false;
      try {
        Point3 image = map_F(p);
        image.y = 0.0;  // first coordinate z/y is 0 on the preimage
        return variety_member(image, Variety::Z2, tol);
      } catch (const PoleError&) {
        return false;
      }
    }
  }
  return false;
}

double schur_identity_residual(int n, const Point3& p) {
  if (n < 1 || n > kMaxLevel) {
    throw InputError("schur identity needs level 1.." +
                     std::to_string(kMaxLevel));
  }
  if (denominator_vanishes(p.y, 1.0)) throw PoleError("y", p.y);
  if (denominator_vanishes(z1_product(p), 1.0)) {
    throw VarietyError("point lies on Z1: y c + z - lambda is not invertible");
  }
  const Eigen::MatrixXd big = pencil_matrix(n, p);
  const Eigen::Index m = big.rows() / 2;
  const Eigen::MatrixXd a = big.topLeftCorner(m, m);
  const Eigen::MatrixXd b = big.topRightCorner(m, m);
  const Eigen::MatrixXd c = big.bottomLeftCorner(m, m);
  const Eigen::MatrixXd d = big.bottomRightCorner(m, m);
  const Eigen::MatrixXd schur = a - b * d.partialPivLu().solve(c);
  const Eigen::MatrixXd expected = pencil_matrix(n - 1, map_F(p));
  return ((schur / p.y) - expected).cwiseAbs().maxCoeff();
}

bool schur_identity_check(int n, const Point3& p, double tol) {
  return schur_identity_residual(n, p) <= tol;
}

namespace {

// Plane residual of the k-th F-iterate of (1, 1, lambda); nullopt on a pole.
std::optional<double> psi(int k, double lambda) {
  Point3 p{1.0, 1.0, lambda};
  for (int i = 0; i < k; ++i) {
    try {
      p = map_F(p);
    } catch (const PoleError&) {
      return std::nullopt;
    }
  }
  return plane_residual(p);
}

// Bisection for a sign change of psi_k on [lo, hi]; both endpoints valid.
// A simple pole also flips the sign, so the shrunken bracket is accepted
// only when |psi| there is genuinely small (a root refined to width `tol`
// stays bounded; a pole blows up like 1/width).
std::optional<double> bisect_psi(int k, double lo, double hi, double f_lo,
                                 double tol) {
  for (int iter = 0; iter < 200 && hi - lo > tol; ++iter) {
    const double mid = 0.5 * (lo + hi);
    auto f_mid = psi(k, mid);
    if (!f_mid.has_value()) return std::nullopt;  // pole inside the bracket
    if ((f_lo < 0) == (*f_mid < 0)) {
      lo = mid;
      f_lo = *f_mid;
    } else {
      hi = mid;
    }
  }
  const double root = 0.5 * (lo + hi);
  auto value = psi(k, root);
  if (!value.has_value() || std::abs(*value) > 1.0) return std::nullopt;
  return root;
}

}  // namespace

std::vector<double> line_spectrum_candidates(int n, int grid, double tol) {
  if (n < 0 || n > 10) throw InputError("level must be 0..10");
  if (grid < 2) throw InputError("grid must be >= 2");
  const double lo = -3.0, hi = 3.0;
  std::vector<double> roots = {0.0, 2.0};  // Z1 on the line y = z = 1

  for (int k = 0; k <= n; ++k) {
    std::optional<double> prev = psi(k, lo);
    double prev_x = lo;
    for (int i = 1; i <= grid; ++i) {
      const double x = lo + (hi - lo) * i / grid;
      std::optional<double> cur = psi(k, x);
      if (prev.has_value() && *prev == 0.0) roots.push_back(prev_x);
      if (cur.has_value() && *cur == 0.0) roots.push_back(x);
      if (prev.has_value() && cur.has_value()) {
        if (*prev != 0.0 && *cur != 0.0 && (*prev < 0) != (*cur < 0)) {
          if (auto root = bisect_psi(k, prev_x, x, *prev, tol)) {
            roots.push_back(*root);
          }
        }
      } else {
        // Pole-straddling cell: subdivide once at 16x resolution.
        std::optional<double> sp = prev;
        double sx = prev_x;
        for (int j = 1; j <= 16; ++j) {
          const double xx = prev_x + (x - prev_x) * j / 16.0;
          std::optional<double> sc = psi(k, xx);
          if (sp.has_value() && sc.has_value() && *sp != 0.0 && *sc != 0.0 &&
              (*sp < 0) != (*sc < 0)) {
            if (auto root = bisect_psi(k, sx, xx, *sp, tol)) {
              roots.push_back(*root);
            }
          }
          sp = sc;
          sx = xx;
        }
      }
      prev = cur;
      prev_x = x;
    }
  }

  std::sort(roots.begin(), roots.end());
  std::vector<double> merged;
  for (double r : roots) {
    if (merged.empty() || r - merged.back() > 1e-9) {
      merged.push_back(r);
    }
  }
  return merged;
}

namespace {

// Trajectory classification of one eigenvalue for inclusion/conjecture
// reports. Direct variety hits first; then local refinement of lambda
// against each psi_k for roots the floating eigenvalue only approximates.
InclusionRow classify_eigenvalue(int n, double lambda, int multiplicity,
                                 double tol) {
  InclusionRow row;
  row.lambda = lambda;
  row.multiplicity = multiplicity;

  Point3 p{1.0, 1.0, lambda};
  for (int k = 0; k <= n; ++k) {
    const double r_p = std::abs(plane_residual(p));
    if (r_p <= tol) {
      row.k = k;
      row.variety = 'P';
      row.residual = r_p;
      row.accounted = true;
      row.conjecture_hit = true;
      return row;
    }
    const double r_z2 = std::abs(z2_factor(p));
    if (std::abs(p.y) <= tol && r_z2 <= tol) {
      row.k = k;
      row.variety = '2';
      row.residual = r_z2;
      row.accounted = true;
      row.conjecture_hit = true;
      return row;
    }
    if (std::abs(p.z) <= tol) {
      // Candidate for F^{-1}(Z2); the image has first coordinate z/y -> 0.
      try {
        Point3 image = map_F(p);
        image.y = 0.0;
        if (std::abs(z2_factor(image)) <= tol) {
          row.k = k;
          row.variety = '3';
          row.residual = std::abs(z2_factor(image));
          row.accounted = true;
          row.conjecture_hit = true;
          return row;
        }
      } catch (const PoleError&) {
      }
    }
    const double r_z1 = std::abs(z1_product(p));
    if (r_z1 <= tol) {
      row.k = k;
      row.variety = '1';
      row.residual = r_z1;
      row.accounted = true;
      break;  // Z1 accounts for inclusion; refinement may still find P
    }
    if (k == n) break;
    try {
      p = map_F(p);
    } catch (const PoleError& e) {
      if (e.denominator == "y") {
        // y -> 0: end of the F-orbit; the Z2 test above already ran.
        break;
      }
      // Quadratic denominator vanishing is exactly Z1 membership.
      row.k = k;
      row.variety = '1';
      row.residual = std::abs(z1_product(p));
      row.accounted = true;
      break;
    }
  }

  // Local refinement: the eigenvalue is floating point, so a genuine root
  // of psi_k within `tol` of lambda counts as a P-preimage hit.
  const double radius = tol;
  constexpr int kScan = 64;
  for (int k = 0; k <= n && !row.conjecture_hit; ++k) {
    std::optional<double> best;
    double best_abs = std::numeric_limits<double>::infinity();
    std::optional<double> prev;
    double prev_x = 0.0;
    for (int i = -kScan; i <= kScan; ++i) {
      const double x = lambda + radius * i / kScan;
      std::optional<double> cur = psi(k, x);
      if (cur.has_value() && std::abs(*cur) < best_abs) {
        best_abs = std::abs(*cur);
        best = x;
      }
      if (prev.has_value() && cur.has_value() && *prev != 0.0 && *cur != 0.0 &&
          (*prev < 0) != (*cur < 0)) {
        if (auto root = bisect_psi(k, prev_x, x, *prev, 1e-14)) {
          auto value = psi(k, *root);
          if (value.has_value() && std::abs(*value) < best_abs) {
            best_abs = std::abs(*value);
            best = *root;
          }
        }
      }
      prev = cur;
      prev_x = x;
    }
    if (best.has_value() && best_abs <= tol) {
      if (!row.accounted || row.variety != 'P') {
        row.k = k;
        row.variety = 'P';
        row.residual = best_abs;
        row.refined = true;
      }
      row.accounted = true;
      row.conjecture_hit = true;
    }
  }
  return row;
}

InclusionReport trajectory_report(int n, double tol) {
  if (n < 1 || n > 8) throw InputError("inclusion level must be 1..8");
  LevelOps ops = level_ops(n);
  const Eigen::MatrixXd sum = ops.a + ops.b + ops.c;
  SpectrumReport spec = eigenvalues(sum, 1e-12);

  InclusionReport report;
  report.level = n;
  report.tol = tol;
  // Cluster numerically equal eigenvalues; one classification per value.
  for (const auto& [value, count] : spec.clustered(1e-9)) {
    report.rows.push_back(classify_eigenvalue(n, value, count, tol));
  }
  report.all_accounted = true;
  int conjecture_weight = 0;
  int total_weight = 0;
  for (const auto& row : report.rows) {
    if (!row.accounted) report.all_accounted = false;
    total_weight += row.multiplicity;
    if (row.conjecture_hit) conjecture_weight += row.multiplicity;
  }
  report.conjecture_fraction =
      total_weight == 0 ? 0.0
                        : static_cast<double>(conjecture_weight) / total_weight;
  return report;
}

}  // namespace

InclusionReport inclusion_check(int n, double tol) {
  return trajectory_report(n, tol);
}

InclusionReport conjecture_report(int n, double tol) {
  if (n > 6) throw InputError("conjecture report covers levels 1..6");
  return trajectory_report(n, tol);
}

bool special_point_check(int n, double tol) {
  if (n < 2 || n > kMaxLevel) {
    throw InputError("special point check needs level 2.." +
                     std::to_string(kMaxLevel));
  }
  LevelOps ops = level_ops(n - 1);
  const Eigen::Index dim = ops.a.rows();
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(dim, dim);
  // (c+1)^2 = 2(c+1), so (c+1)(a+1)(c+1)/2 has the same nonzero spectrum
  // as (a+1)(c+1) and is symmetric.
  const Eigen::MatrixXd b =
      (ops.c + eye) * (ops.a + eye) * (ops.c + eye) / 2.0;
  SpectrumReport spec = eigenvalues(b, 1e-10);
  for (double ev : spec.eigenvalues) {
    if (std::abs(ev - 4.0) <= tol) return true;
  }
  return false;
}

std::vector<Point3> attractor_cloud(int depth, int grid, const BoxBounds& box,
                                    double tol) {
  if (depth < 0 || depth > 6) throw InputError("attractor depth must be 0..6");
  if (grid < 2 || grid > 400) throw InputError("grid must be 2..400 per axis");
  if (!(box.ymax > box.ymin) || !(box.zmax > box.zmin) ||
      !(box.lmax > box.lmin)) {
    throw InputError("box bounds must be increasing");
  }

  const auto coord = [grid](double lo, double hi, int i) {
    return lo + (hi - lo) * i / (grid - 1);
  };
  const double nan = std::numeric_limits<double>::quiet_NaN();

  // Pole guard uses the same scale-aware test as map_F but with the caller's
  // tolerance feeding the minimum denominator magnitude.
  const auto value_at = [&](int iy, int iz, int il) -> double {
    Point3 p{coord(box.ymin, box.ymax, iy), coord(box.zmin, box.zmax, iz),
             coord(box.lmin, box.lmax, il)};
    for (int i = 0; i < depth; ++i) {
      const double q = -p.y * p.y + p.z * p.z - 2.0 * p.z * p.lambda +
                       p.lambda * p.lambda;
      if (std::abs(p.y) <= tol || std::abs(q) <= tol) return nan;
      try {
        p = map_F(p);
      } catch (const PoleError&) {
        return nan;
      }
    }
    return plane_residual(p);
  };

  std::vector<Point3> points;
  const auto emit = [&](int iy, int iz, int il, int axis, double t) {
    Point3 p{coord(box.ymin, box.ymax, iy), coord(box.zmin, box.zmax, iz),
             coord(box.lmin, box.lmax, il)};
    const double step_y = (box.ymax - box.ymin) / (grid - 1);
    const double step_z = (box.zmax - box.zmin) / (grid - 1);
    const double step_l = (box.lmax - box.lmin) / (grid - 1);
    if (axis == 0) p.y += t * step_y;
    if (axis == 1) p.z += t * step_z;
    if (axis == 2) p.lambda += t * step_l;
    points.push_back(p);
  };

  // Two lambda-slabs at a time keep memory at O(grid^2).
  std::vector<double> prev_slab(grid * grid), cur_slab(grid * grid);
  const auto at = [&](std::vector<double>& slab, int iy, int iz) -> double& {
    return slab[static_cast<std::size_t>(iy) * grid + iz];
  };
  for (int il = 0; il < grid; ++il) {
    for (int iy = 0; iy < grid; ++iy) {
      for (int iz = 0; iz < grid; ++iz) {
        at(cur_slab, iy, iz) = value_at(iy, iz, il);
      }
    }
    for (int iy = 0; iy < grid; ++iy) {
      for (int iz = 0; iz < grid; ++iz) {
        const double f = at(cur_slab, iy, iz);
        if (std::isnan(f)) continue;
        if (f == 0.0) {
          emit(iy, iz, il, 0, 0.0);
          continue;
        }
        // Edges in +y, +z and -lambda (towards the previous slab).
        if (iy + 1 < grid) {
          const double g = at(cur_slab, iy + 1, iz);
          if (!std::isnan(g) && g != 0.0 && (f < 0) != (g < 0)) {
            emit(iy, iz, il, 0, f / (f - g));
          }
        }
        if (iz + 1 < grid) {
          const double g = at(cur_slab, iy, iz + 1);
          if (!std::isnan(g) && g != 0.0 && (f < 0) != (g < 0)) {
            emit(iy, iz, il, 1, f / (f - g));
          }
        }
        if (il > 0) {
          const double g = at(prev_slab, iy, iz);
          if (!std::isnan(g) && g != 0.0 && (f < 0) != (g < 0)) {
            emit(iy, iz, il, 2, -f / (f - g));
          }
        }
      }
    }
    std::swap(prev_slab, cur_slab);
  }

  std::sort(points.begin(), points.end(), [](const Point3& l, const Point3& r) {
    if (l.y != r.y) return l.y < r.y;
    if (l.z != r.z) return l.z < r.z;
    return l.lambda < r.lambda;
  });
  points.erase(std::unique(points.begin(), points.end(),
                           [](const Point3& l, const Point3& r) {
                             return l.y == r.y && l.z == r.z &&
                                    l.lambda == r.lambda;
                           }),
               points.end());
  return points;
}

std::string points_csv(const std::vector<Point3>& points) {
  std::ostringstream os;
  os << "y,z,lambda\n";
  for (const Point3& p : points) {
    os << imglab::fmt_real(p.y) << ',' << imglab::fmt_real(p.z) << ','
       << imglab::fmt_real(p.lambda) << '\n';
  }
  return os.str();
}

}  // namespace imglab::spectral
