#ifndef HERGLOTZ_GROWTH_HPP
#define HERGLOTZ_GROWTH_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "herglotz/errors.hpp"
#include "herglotz/pairing.hpp"
#include "herglotz/parallel.hpp"
#include "herglotz/random.hpp"
#include "herglotz/types.hpp"

namespace herglotz {

inline constexpr std::size_t kDefaultGrowthSamples = 200'000;
inline constexpr double kBoundedSlope = 0.1;
inline constexpr double kPoleClamp = 1e-12;

inline std::vector<double> default_growth_grid() { return {0.5, 0.9, 0.99, 0.999}; }

/// n i.i.d. uniform points on the unit sphere of C^d. Sample i depends only
/// on (seed, i / 1024), so prefixes agree across n.
inline std::vector<Point> sphere_sample(std::size_t d, std::size_t n, std::uint64_t seed) {
  if (d < 1) throw DomainError("sphere dimension must be positive");
  if (n < 1) throw DomainError("sphere_sample needs n >= 1");
  std::vector<Point> out(n);
  const std::size_t blocks = (n + detail::kSamplesPerBlock - 1) / detail::kSamplesPerBlock;
  for_each_block(blocks, [&](std::size_t b) {
    auto eng = stream_engine(seed, b);
    const std::size_t hi = std::min(n, (b + 1) * detail::kSamplesPerBlock);
    for (std::size_t i = b * detail::kSamplesPerBlock; i < hi; ++i)
      out[i] = random_unit_vector(eng, static_cast<Eigen::Index>(d));
  });
  return out;
}

/// Function evaluated on spheres, with optional boundary poles zeta_0 near
/// which samples are not evaluated.
struct Evaluable {
  ScalarFunction f;
  std::size_t d = 0;
  std::vector<Point> poles;
};

struct RadialMean {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;  // samples that entered the mean
  std::size_t clamped = 0;  // samples skipped as near-singular or non-finite
};

/// Monte-Carlo estimate of int |f(r zeta)|^p dsigma(zeta). Samples with
/// |1 - <r zeta, zeta_0>| < 1e-12 for a listed pole, or with a non-finite
/// value, are skipped and counted.
inline RadialMean hp_radial_mean(const Evaluable& f, double p, double r, std::size_t n, std::uint64_t seed) {
  if (!(p > 0.0)) throw DomainError("H^p exponent must be positive");
  if (!(r > 0.0 && r < 1.0)) throw DomainError("radius must lie in (0, 1)");
  if (n < 2) throw DomainError("hp_radial_mean needs at least two samples");
  const std::size_t blocks = (n + detail::kSamplesPerBlock - 1) / detail::kSamplesPerBlock;
  std::vector<double> sum(blocks, 0.0), sq(blocks, 0.0);
  std::vector<std::size_t> used(blocks, 0), skipped(blocks, 0);
  for_each_block(blocks, [&](std::size_t b) {
    auto eng = stream_engine(seed, b);
    const std::size_t hi = std::min(n, (b + 1) * detail::kSamplesPerBlock);
    for (std::size_t i = b * detail::kSamplesPerBlock; i < hi; ++i) {
      const Point z = r * random_unit_vector(eng, static_cast<Eigen::Index>(f.d));
      const bool near_pole =
          std::any_of(f.poles.begin(), f.poles.end(), [&](const Point& q) { return std::abs(1.0 - inner(z, q)) < kPoleClamp; });
      double v = std::numeric_limits<double>::quiet_NaN();
      if (!near_pole) v = std::pow(std::abs(f.f(z)), p);
      if (!std::isfinite(v)) {
        ++skipped[b];
        continue;
      }
      sum[b] += v;
      sq[b] += v * v;
      ++used[b];
    }
  });
  RadialMean out;
  double s = 0.0, s2 = 0.0;
  for (std::size_t b = 0; b < blocks; ++b) {
    s += sum[b];
    s2 += sq[b];
    out.samples += used[b];
    out.clamped += skipped[b];
  }
  if (out.samples < 2) throw DomainError("too few finite samples for a radial mean");
  const double m = static_cast<double>(out.samples);
  out.value = s / m;
  out.std_error = std::sqrt(std::max(0.0, (s2 - m * out.value * out.value) / (m - 1.0)) / m);
  return out;
}

struct GrowthProfile {
  double p = 1.0;
  std::vector<double> grid;
  std::vector<double> means;
  std::vector<double> std_errors;
  double slope = 0.0;     // d log M / d log(1/(1-r)) over the last two radii
  double slope_se = 0.0;  // delta-method standard error of the slope
  std::string verdict;    // "bounded", "divergent" or "inconclusive"
  std::size_t clamped = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

/// Radial means over an increasing grid. The same sphere sample is used at
/// every radius. Verdict: bounded when every mean is finite and the tail slope
/// is at most 0.1; divergent when the slope exceeds 0.1 by three standard
/// errors; inconclusive otherwise.
inline GrowthProfile growth_profile(const Evaluable& f, double p, const std::vector<double>& grid, std::size_t n,
                                    std::uint64_t seed) {
  if (grid.size() < 2) throw DomainError("growth profile needs at least two radii");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0 && grid[i] < 1.0)) throw DomainError("radii must lie in (0, 1)");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw DomainError("radius grid must be strictly increasing");
  }
  GrowthProfile g;
  g.p = p;
  g.grid = grid;
  g.samples = n;
  g.seed = seed;
  for (double r : grid) {
    const RadialMean m = hp_radial_mean(f, p, r, n, seed);
    g.means.push_back(m.value);
    g.std_errors.push_back(m.std_error);
    g.clamped += m.clamped;
  }
  const std::size_t k = grid.size() - 1;
  const double dx = std::log((1.0 - grid[k - 1]) / (1.0 - grid[k]));
  const double m1 = g.means[k - 1], m2 = g.means[k];
  const bool finite = std::all_of(g.means.begin(), g.means.end(), [](double v) { return std::isfinite(v) && v > 0.0; });
  if (!finite) {
    g.slope = std::numeric_limits<double>::infinity();
    g.verdict = "divergent";
    return g;
  }
  g.slope = std::log(m2 / m1) / dx;
  g.slope_se = std::hypot(g.std_errors[k - 1] / m1, g.std_errors[k] / m2) / dx;
  if (g.slope <= kBoundedSlope)
    g.verdict = "bounded";
  else if (g.slope - 3.0 * g.slope_se > kBoundedSlope)
    g.verdict = "divergent";
  else
    g.verdict = "inconclusive";
  return g;
}

}  // namespace herglotz

#endif  // HERGLOTZ_GROWTH_HPP
