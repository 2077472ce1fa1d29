#include "imglab/measure.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <json.hpp>
#include <random>
#include <thread>

#include "imglab/errors.hpp"
#include "imglab/word.hpp"
#include "imglab/word_problem.hpp"

namespace imglab::measure {

namespace {

constexpr double kSimplexTol = 1e-12;

double cubic(double x) { return ((x - 6.0) * x + 11.0) * x - 4.0; }
double cubic_derivative(double x) { return (3.0 * x - 12.0) * x + 11.0; }

double denominator_d(double y, double z) {
  return z * z - 2.0 * z + 1.0 - y * y;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Uniform double in [0, 1); top 53 bits of the generator output.
double uniform01(std::uint64_t bits) { return (bits >> 11) * 0x1.0p-53; }

}  // namespace

FiniteMeasure make_measure(double e, double a, double b, double c) {
  for (double w : {e, a, b, c}) {
    if (!(w >= 0.0)) throw InputError("measure weights must be nonnegative");
  }
  if (std::abs(e + a + b + c - 1.0) > kSimplexTol) {
    throw InputError("measure weights must sum to 1 within 1e-12");
  }
  return {e, a, b, c};
}

bool nondegenerate_on_generators(const FiniteMeasure& m) {
  return m.e == 0.0 && m.a > 0.0 && m.b > 0.0 && m.c > 0.0;
}

double l1_distance(const FiniteMeasure& lhs, const FiniteMeasure& rhs) {
  return std::abs(lhs.e - rhs.e) + std::abs(lhs.a - rhs.a) +
         std::abs(lhs.b - rhs.b) + std::abs(lhs.c - rhs.c);
}

std::string measure_to_json(const FiniteMeasure& m) {
  nlohmann::json j{{"e", m.e}, {"a", m.a}, {"b", m.b}, {"c", m.c}};
  return j.dump();
}

FiniteMeasure measure_from_json(const std::string& text) {
  try {
    auto j = nlohmann::json::parse(text);
    return make_measure(j.value("e", 0.0), j.at("a").get<double>(),
                        j.at("b").get<double>(), j.at("c").get<double>());
  } catch (const nlohmann::json::exception& ex) {
    throw InputError(std::string("measure JSON: ") + ex.what());
  }
}

FiniteMeasure restrict0(const FiniteMeasure& m) {
  if (!nondegenerate_on_generators(m)) {
    throw SingularAlgebraError(
        "restriction needs a measure nondegenerate on the generators");
  }
  const double x = m.a, y = m.b, z = m.c;
  const double d = denominator_d(y, z);
  if (std::abs(d) <= 1e-9 * (1.0 + x * x)) {
    throw SingularAlgebraError("group-algebra denominator z^2-2z+1-y^2 vanishes");
  }
  FiniteMeasure out;
  out.e = (1.0 - z) * x * x / d;
  out.a = y;
  out.b = z;
  out.c = y * x * x / d;
  return out;
}

FiniteMeasure phi_transform(const FiniteMeasure& m) {
  FiniteMeasure r = restrict0(m);
  const double mass = 1.0 - r.e;
  if (mass <= 1e-12) {
    throw SingularAlgebraError("mu|_0 concentrates on the identity");
  }
  return {0.0, r.a / mass, r.b / mass, r.c / mass};
}

std::array<double, 3> coefficient_map(double x, double y, double z) {
  const double d = denominator_d(y, z);
  const double den = d + (z - 1.0) * x * x;
  const double scale =
      std::max({std::abs(y * d), std::abs(z * d), std::abs(y * x * x)});
  if (std::abs(den) <= 1e-9 * (1.0 + scale)) {
    throw PoleError("z^2-2z+1-y^2+x^2z-x^2", den);
  }
  return {y * d / den, z * d / den, y * x * x / den};
}

FixedPoint fixed_point(double tol) {
  if (!(tol > 0.0)) throw InputError("tolerance must be positive");
  double lo = 0.0, hi = 1.0;  // cubic(0) = -4 < 0 < 2 = cubic(1)
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (cubic(mid) < 0.0 ? lo : hi) = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 8 && std::abs(cubic(x)) > tol * 1e-3; ++i) {
    x -= cubic(x) / cubic_derivative(x);
  }

  FixedPoint fp;
  fp.x = x;
  fp.y = x * x - 4.0 * x + 2.0;
  fp.z = -1.0 + 3.0 * x - x * x;
  const double d = denominator_d(fp.y, fp.z);
  fp.alpha = (1.0 - fp.z) * x * x / d;
  fp.cubic_residual = std::abs(cubic(x));

  auto image = coefficient_map(fp.x, fp.y, fp.z);
  fp.map_residual = std::max({std::abs(image[0] - fp.x),
                              std::abs(image[1] - fp.y),
                              std::abs(image[2] - fp.z)});
  if (fp.map_residual > 10.0 * tol) {
    throw std::runtime_error("fixed point failed verification under Phi");
  }
  return fp;
}

bool self_affinity_check(const FiniteMeasure& m, double tol) {
  FiniteMeasure r = restrict0(m);
  const double alpha = r.e;
  if (!(alpha > 0.0 && alpha < 1.0)) return false;
  FiniteMeasure affine{alpha + (1.0 - alpha) * m.e, (1.0 - alpha) * m.a,
                       (1.0 - alpha) * m.b, (1.0 - alpha) * m.c};
  return 0.5 * l1_distance(r, affine) <= tol;
}

UniquenessReport uniqueness_scan(int grid) {
  if (grid < 100) throw InputError("uniqueness scan grid must be >= 100");

  UniquenessReport report;
  report.grid = grid;

  const auto residual = [](double x, double y) -> std::array<double, 2> {
    auto img = coefficient_map(x, y, 1.0 - x - y);
    return {img[0] - x, img[1] - y};
  };

  const double interior = 1e-6;
  for (int i = 1; i <= grid; ++i) {
    for (int j = 1; j <= grid; ++j) {
      double x = static_cast<double>(i) / (grid + 1);
      double y = static_cast<double>(j) / (grid + 1);
      if (x + y >= 1.0 - 1.0 / (grid + 1)) continue;  // boundary starts excluded

      bool converged = false;
      for (int iter = 0; iter < 60; ++iter) {
        std::array<double, 2> f;
        try {
          f = residual(x, y);
        } catch (const PoleError&) {
          break;
        }
        const double norm = std::max(std::abs(f[0]), std::abs(f[1]));
        if (norm <= 1e-12) {
          converged = true;
          break;
        }
        // Numeric Jacobian, central differences.
        const double h = 1e-7;
        std::array<double, 2> fx_p, fx_m, fy_p, fy_m;
        try {
          fx_p = residual(x + h, y);
          fx_m = residual(x - h, y);
          fy_p = residual(x, y + h);
          fy_m = residual(x, y - h);
        } catch (const PoleError&) {
          break;
        }
        const double j00 = (fx_p[0] - fx_m[0]) / (2 * h);
        const double j01 = (fy_p[0] - fy_m[0]) / (2 * h);
        const double j10 = (fx_p[1] - fx_m[1]) / (2 * h);
        const double j11 = (fy_p[1] - fy_m[1]) / (2 * h);
        const double det = j00 * j11 - j01 * j10;
        if (std::abs(det) < 1e-14) break;
        double dx = (-f[0] * j11 + f[1] * j01) / det;
        double dy = (-f[1] * j00 + f[0] * j10) / det;
        // Damping: halve the step until the residual decreases.
        double step = 1.0;
        bool improved = false;
        for (int halving = 0; halving < 20; ++halving) {
          const double nx = x + step * dx;
          const double ny = y + step * dy;
          if (nx > interior && ny > interior && nx + ny < 1.0 - interior) {
            try {
              auto g = residual(nx, ny);
              if (std::max(std::abs(g[0]), std::abs(g[1])) < norm) {
                x = nx;
                y = ny;
                improved = true;
                break;
              }
            } catch (const PoleError&) {
            }
          }
          step *= 0.5;
        }
        if (!improved) break;
      }

      if (!converged) continue;
      const double z = 1.0 - x - y;
      if (x <= interior || y <= interior || z <= interior) continue;
      bool known = false;
      for (const auto& p : report.interior_fixed_points) {
        if (std::abs(p[0] - x) < 1e-8 && std::abs(p[1] - y) < 1e-8) {
          known = true;
          break;
        }
      }
      if (!known) report.interior_fixed_points.push_back({x, y, z});
    }
  }

  FixedPoint fp = fixed_point(1e-12);
  report.fixed_point_y = fp.y;
  report.plus_branch_y =
      0.25 * (-fp.x * fp.x + fp.x +
              fp.x * std::sqrt(fp.x * fp.x - 10.0 * fp.x + 9.0));
  return report;
}

namespace {

struct StreamTally {
  std::array<std::uint64_t, 4> counts{};
};

StreamTally run_stream(const FiniteMeasure& m, std::uint64_t returns,
                       std::uint64_t stream_seed) {
  std::mt19937_64 rng(stream_seed);
  StreamTally tally;
  Word acc;
  int coordinate = 0;
  const double wa = m.a, wab = m.a + m.b;
  std::uint64_t done = 0;
  while (done < returns) {
    const double u = uniform01(rng());
    const char h = u < wa ? 'a' : (u < wab ? 'b' : 'c');
    // acc *= h|_coordinate ; coordinate = h(coordinate)
    switch (h) {
      case 'a':  // a = (1,1) swap
        coordinate = 1 - coordinate;
        break;
      case 'b':  // b = (a, c)
        acc.push(coordinate == 0 ? 'a' : 'c');
        break;
      case 'c':  // c = (b, 1)
        if (coordinate == 0) acc.push('b');
        break;
    }
    if (coordinate == 0) {
      // Classification: Gamma-reduction happened on the fly; compare against
      // the four candidates, falling back to the word problem.
      int bucket = -1;
      const std::string& s = acc.letters();
      if (s.empty()) {
        bucket = 0;
      } else if (s.size() == 1) {
        bucket = 1 + (s[0] - 'a');
      } else {
        for (int cand = 0; cand < 4 && bucket < 0; ++cand) {
          static const char* kNames[4] = {"e", "a", "b", "c"};
          if (equal_elements(acc, Word::parse(kNames[cand]))) bucket = cand;
        }
        if (bucket < 0) {
          throw SupportViolationError(
              "walk increment '" + acc.str() +
              "' lies outside the support {e, a, b, c} of mu|_0");
        }
      }
      ++tally.counts[bucket];
      acc.clear();
      ++done;
    }
  }
  return tally;
}

}  // namespace

WalkReport walk_oracle(const FiniteMeasure& m, std::uint64_t returns,
                       std::uint64_t seed, int streams, int threads) {
  if (!nondegenerate_on_generators(m)) {
    throw SingularAlgebraError(
        "walk oracle needs a measure nondegenerate on the generators");
  }
  if (returns < 1) throw InputError("returns must be >= 1");
  if (streams < 1) throw InputError("streams must be >= 1");
  if (threads < 1) threads = 1;

  WalkReport report;
  report.returns = returns;
  report.seed = seed;
  report.streams = streams;

  std::vector<std::uint64_t> quotas(streams, returns / streams);
  for (std::uint64_t i = 0; i < returns % streams; ++i) ++quotas[i];

  std::vector<StreamTally> tallies(streams);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      const int idx = next.fetch_add(1);
      if (idx >= streams) return;
      const std::uint64_t stream_seed =
          splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(idx) + 1));
      tallies[idx] = run_stream(m, quotas[idx], stream_seed);
    }
  };
  if (threads == 1 || streams == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    const int workers = std::min(threads, streams);
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (const auto& tally : tallies) {
    for (int i = 0; i < 4; ++i) report.tallies[i] += tally.counts[i];
  }
  const double total = static_cast<double>(returns);
  report.empirical = {report.tallies[0] / total, report.tallies[1] / total,
                      report.tallies[2] / total, report.tallies[3] / total};
  return report;
}

}  // namespace imglab::measure
