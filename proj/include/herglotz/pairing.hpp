#ifndef HERGLOTZ_PAIRING_HPP
#define HERGLOTZ_PAIRING_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "herglotz/errors.hpp"
#include "herglotz/parallel.hpp"
#include "herglotz/random.hpp"
#include "herglotz/series.hpp"
#include "herglotz/types.hpp"

namespace herglotz {

enum class Support { boundary, interior };

/// Finite positive combination of point masses in the closed ball.
struct AtomicMeasure {
  std::vector<Point> points;
  std::vector<double> weights;
  Support support = Support::boundary;

  std::size_t dim() const { return points.empty() ? 0 : static_cast<std::size_t>(points.front().size()); }
  double mass() const {
    double m = 0.0;
    for (double w : weights) m += w;
    return m;
  }

  /// Throws DomainError unless weights are positive and every point sits
  /// where the support flag says (|p| = 1 to 1e-12, or |p| <= 1 - 1e-9).
  void validate() const {
    if (points.size() != weights.size()) throw DomainError("measure needs one weight per point");
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (!(weights[j] > 0.0) || !std::isfinite(weights[j])) throw DomainError("measure weights must be positive and finite");
      if (static_cast<std::size_t>(points[j].size()) != dim()) throw DimensionMismatch("measure points have mixed dimensions");
      const double n = points[j].norm();
      if (support == Support::boundary && std::abs(n - 1.0) > 1e-12)
        throw DomainError("boundary measure has an atom off the sphere");
      if (support == Support::interior && n > 1.0 - 1e-9) throw DomainError("interior measure has an atom too close to the sphere");
    }
  }

  static AtomicMeasure dirac(const Point& p, double w = 1.0, Support s = Support::boundary) {
    AtomicMeasure m{{p}, {w}, s};
    m.validate();
    return m;
  }
};

struct QuadratureSpec {
  int radial_nodes = 64;
  int sphere_samples = 20000;
  std::uint64_t seed = 1;
};

/// Monte-Carlo style estimate with a standard-error proxy.
struct Estimate {
  cplx value;
  double std_error;
};

/// The r grid used for duality sweeps: 0.05, 0.10, ..., 0.95 and 0.99.
inline std::vector<double> default_r_grid() {
  std::vector<double> g;
  for (int i = 1; i <= 19; ++i) g.push_back(0.05 * i);
  g.push_back(0.99);
  return g;
}

/// Q_r(f,g) = sum_alpha c_alpha conj(d_alpha) r^{|alpha|} alpha!/|alpha|! + f(0) conj(g(0)).
/// The alpha = 0 term appears twice. Both arguments are cut to their common
/// degree. r = 1 is allowed only when one side is analytic past the boundary.
inline cplx qr_pair(const TruncatedSeries& f, const TruncatedSeries& g, double r) {
  detail::require_same_dim(f, g);
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("pairing radius must lie in [0, 1]");
  if (r == 1.0 && !f.analytic_past_boundary() && !g.analytic_past_boundary())
    throw DomainError("Q at r = 1 requires one argument holomorphic past the closed ball");
  const int N = std::min(f.degree(), g.degree());
  const SeriesLayout& lay = *layout_for(f.dim(), N);
  cplx sum = 0.0;
  for (int k = N; k >= 0; --k) {
    cplx grade = 0.0;
    const auto kk = static_cast<std::size_t>(k);
    for (std::size_t i = lay.grade_begin[kk]; i < lay.grade_begin[kk + 1]; ++i)
      grade += f[i] * std::conj(g[i]) / static_cast<double>(weight(lay.indices[i]));
    sum = sum * r + grade;
  }
  return sum + f.constant_term() * std::conj(g.constant_term());
}

/// Drury-Arveson inner product from coefficients: sum c_alpha conj(d_alpha) alpha!/|alpha|!.
inline cplx h2d_inner_series(const TruncatedSeries& f, const TruncatedSeries& g) {
  detail::require_same_dim(f, g);
  if (f.degree() != g.degree()) throw DimensionMismatch("series inner product needs equal truncation degrees");
  cplx sum = 0.0;
  const SeriesLayout& lay = f.layout();
  for (std::size_t i = 0; i < f.size(); ++i) sum += f[i] * std::conj(g[i]) / static_cast<double>(weight(lay.indices[i]));
  return sum;
}

/// Gauss-Legendre nodes and weights on [-1, 1].
inline void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw DomainError("quadrature needs at least one node");
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  const auto un = static_cast<unsigned>(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      const double p = std::legendre(un, x);
      const double pm = n > 1 ? std::legendre(un - 1, x) : 1.0;
      dp = n * (x * p - pm) / (x * x - 1.0);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double p = std::legendre(un, x);
    const double pm = n > 1 ? std::legendre(un - 1, x) : 1.0;
    dp = n * (x * p - pm) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[static_cast<std::size_t>(i)] = -x;
    nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    weights[static_cast<std::size_t>(i)] = w;
    weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
}

namespace detail {

// c_alpha -> |alpha| (|alpha|+1) ... (|alpha|+d-1) c_alpha. For d = 1 this is
// the radial derivative itself.
inline TruncatedSeries radial_rising_factorial(const TruncatedSeries& f) {
  TruncatedSeries out = f;
  const SeriesLayout& lay = f.layout();
  for (std::size_t i = 0; i < out.size(); ++i) {
    double m = 1.0;
    for (std::size_t j = 0; j < f.dim(); ++j) m *= static_cast<double>(lay.order[i]) + static_cast<double>(j);
    out[i] *= m;
  }
  return out;
}

inline constexpr std::size_t kSamplesPerBlock = 1024;

}  // namespace detail

/// Integral form of the Drury-Arveson inner product,
///   f(0) conj(g(0)) + (1/d!) int_B (D f)(z) conj(g(z)) |z|^{-2d} dnu(z),
/// with D = R (R+1) ... (R+d-1) and nu normalized volume measure. In polar
/// coordinates dnu = 2d r^{2d-1} dr dsigma, so the singular factor cancels
/// and the radial integrand is a polynomial, integrated with Gauss-Legendre.
/// Sphere directions are uniform; each direction is averaged over its circle
/// of phase rotations, which removes the cross-grade terms exactly and leaves
/// sum_k radial_k (D f)_k(zeta) conj(g_k(zeta)). The standard error is the
/// sample standard deviation of the per-direction values over sqrt(n).
inline Estimate h2d_inner_integral(const TruncatedSeries& f, const TruncatedSeries& g, const QuadratureSpec& q = {}) {
  detail::require_same_dim(f, g);
  if (q.radial_nodes < 1 || q.sphere_samples < 2) throw DomainError("quadrature sizes too small");
  const std::size_t d = f.dim();
  const int N = std::min(f.degree(), g.degree());
  const TruncatedSeries df = detail::radial_rising_factorial(f.truncated(N));
  const TruncatedSeries gt = g.truncated(N);

  std::vector<double> x, w;
  gauss_legendre(q.radial_nodes, x, w);
  // Radial weights for each grade k >= 1: 2d/d! * int_0^1 r^{2k-1} dr by quadrature.
  std::vector<double> radial(static_cast<std::size_t>(N) + 1, 0.0);
  double dfact = 1.0;
  for (std::size_t j = 2; j <= d; ++j) dfact *= static_cast<double>(j);
  for (int k = 1; k <= N; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = 0.5 * (x[i] + 1.0);
      s += 0.5 * w[i] * std::pow(r, 2 * k - 1);
    }
    radial[static_cast<std::size_t>(k)] = 2.0 * static_cast<double>(d) / dfact * s;
  }

  const auto n = static_cast<std::size_t>(q.sphere_samples);
  const std::size_t blocks = (n + detail::kSamplesPerBlock - 1) / detail::kSamplesPerBlock;
  std::vector<cplx> block_sum(blocks);
  std::vector<double> block_sq(blocks);
  for_each_block(blocks, [&](std::size_t b) {
    auto eng = stream_engine(q.seed, b);
    const std::size_t lo = b * detail::kSamplesPerBlock;
    const std::size_t hi = std::min(n, lo + detail::kSamplesPerBlock);
    cplx s = 0.0;
    double sq = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const Point zeta = random_unit_vector(eng, static_cast<Eigen::Index>(d));
      const std::vector<cplx> a = grade_values(df, zeta);
      const std::vector<cplx> c = grade_values(gt, zeta);
      cplx y = 0.0;
      for (int k = 1; k <= N; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        y += radial[kk] * a[kk] * std::conj(c[kk]);
      }
      s += y;
      sq += std::norm(y);
    }
    block_sum[b] = s;
    block_sq[b] = sq;
  });
  cplx total = 0.0;
  double total_sq = 0.0;
  for (std::size_t b = 0; b < blocks; ++b) {
    total += block_sum[b];
    total_sq += block_sq[b];
  }
  const double nn = static_cast<double>(n);
  const cplx mean = total / nn;
  const double var = std::max(0.0, (total_sq - nn * std::norm(mean)) / (nn - 1.0));
  return {f.constant_term() * std::conj(g.constant_term()) + mean, std::sqrt(var / nn)};
}

enum class KernelNormalization {
  full,  // sum_j w_j (1 + <z,p_j>)/(1 - <z,p_j>)
  half   // one half of the above, the representer of integration against mu
};

/// Herglotz transform of an atomic measure, expanded to degree N:
/// c_0 = s * mass + i t and c_alpha = 2 s w(alpha) sum_j w_j conj(p_j)^alpha,
/// with s = 1 (full) or 1/2 (half). Interior-supported measures give a
/// function holomorphic past the closed ball, which the result records.
inline TruncatedSeries herglotz_of_measure(const AtomicMeasure& mu, double imag_const, int N,
                                           KernelNormalization mode = KernelNormalization::full,
                                           std::size_t dim_if_empty = 0) {
  mu.validate();
  const std::size_t d = mu.points.empty() ? dim_if_empty : mu.dim();
  if (d == 0) throw DomainError("cannot infer dimension of an empty measure");
  const double s = mode == KernelNormalization::full ? 1.0 : 0.5;
  TruncatedSeries out(d, N);
  const SeriesLayout& lay = out.layout();
  for (std::size_t j = 0; j < mu.points.size(); ++j) {
    const Point pc = mu.points[j].conjugate();
    std::vector<cplx> mono(out.size());
    mono[0] = 1.0;
    for (std::size_t i = 1; i < out.size(); ++i) mono[i] = mono[lay.pred[i]] * pc[static_cast<Eigen::Index>(lay.var[i])];
    out[0] += s * mu.weights[j];
    for (std::size_t i = 1; i < out.size(); ++i)
      out[i] += 2.0 * s * static_cast<double>(weight(lay.indices[i])) * mu.weights[j] * mono[i];
  }
  out[0] += cplx(0.0, imag_const);
  if (mu.support == Support::interior) out.mark_analytic_past_boundary();
  return out;
}

/// Closed-form value of the full-kernel Herglotz transform at z.
inline cplx herglotz_of_measure_at(const AtomicMeasure& mu, double imag_const, const Point& z) {
  cplx v(0.0, imag_const);
  for (std::size_t j = 0; j < mu.points.size(); ++j) {
    const cplx a = inner(z, mu.points[j]);
    v += mu.weights[j] * (1.0 + a) / (1.0 - a);
  }
  return v;
}

/// |Q_r(f, g_mu) - 2 sum_j w_j f(r p_j)| with g_mu the full-kernel transform
/// of mu (imaginary constant 0). The factor 2 comes from the full kernel:
/// the half kernel gives the plain integral of f_r.
inline double pairing_vs_measure_check(const TruncatedSeries& f, const AtomicMeasure& mu, double r) {
  const TruncatedSeries g = herglotz_of_measure(mu, 0.0, f.degree(), KernelNormalization::full, f.dim());
  const cplx lhs = qr_pair(f, g, r);
  cplx rhs = 0.0;
  for (std::size_t j = 0; j < mu.points.size(); ++j) rhs += 2.0 * mu.weights[j] * evaluate(f, r * mu.points[j]);
  return std::abs(lhs - rhs);
}

}  // namespace herglotz

#endif  // HERGLOTZ_PAIRING_HPP
