#ifndef HERGLOTZ_SERIES_HPP
#define HERGLOTZ_SERIES_HPP

#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "herglotz/errors.hpp"
#include "herglotz/multi_index.hpp"
#include "herglotz/types.hpp"

namespace herglotz {

inline constexpr int kDefaultDegree = 10;
inline constexpr int kMaxDegree = 16;
inline constexpr std::size_t kMaxSeriesDim = 4;

/// Shared coefficient layout for series in d variables truncated at degree N.
/// pred[i] is the rank of alpha_i - e_{var[i]}, where var[i] is the first
/// nonzero coordinate of alpha_i; it drives monomial evaluation.
struct SeriesLayout {
  std::size_t d = 0;
  int N = 0;
  std::vector<MultiIndex> indices;
  std::vector<int> order;
  std::vector<std::size_t> pred;
  std::vector<std::size_t> var;
  std::vector<std::size_t> grade_begin;  // size N+2

  SeriesLayout(std::size_t dim, int degree) : d(dim), N(degree), indices(enumerate_multiindices(dim, degree)) {
    const std::size_t n = indices.size();
    order.resize(n);
    pred.assign(n, 0);
    var.assign(n, 0);
    grade_begin.assign(static_cast<std::size_t>(N) + 2, n);
    for (std::size_t i = 0; i < n; ++i) {
      const MultiIndex& a = indices[i];
      order[i] = a.order();
      if (grade_begin[static_cast<std::size_t>(order[i])] == n) grade_begin[static_cast<std::size_t>(order[i])] = i;
      if (i == 0) continue;
      std::size_t j = 0;
      while (a[j] == 0) ++j;
      std::vector<int> e = a.exponents();
      --e[j];
      pred[i] = graded_rank(MultiIndex(std::move(e)));
      var[i] = j;
    }
  }
};

inline std::shared_ptr<const SeriesLayout> layout_for(std::size_t d, int N) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, int>, std::shared_ptr<const SeriesLayout>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{d, N}];
  if (!slot) slot = std::make_shared<const SeriesLayout>(d, N);
  return slot;
}

/// Holomorphic germ truncated at total degree N: dense coefficients c_alpha
/// over the simplex |alpha| <= N in graded order.
class TruncatedSeries {
 public:
  TruncatedSeries(std::size_t d, int N) : layout_(checked_layout(d, N)), coeffs_(layout_->indices.size(), cplx{}) {}

  static TruncatedSeries constant(std::size_t d, int N, cplx c) {
    TruncatedSeries s(d, N);
    s.coeffs_[0] = c;
    return s;
  }
  /// The coordinate function z_j (0-based j).
  static TruncatedSeries coordinate(std::size_t d, int N, std::size_t j) {
    TruncatedSeries s(d, N);
    if (N >= 1) s.set(MultiIndex::unit(d, j), 1.0);
    return s;
  }

  std::size_t dim() const { return layout_->d; }
  int degree() const { return layout_->N; }
  std::size_t size() const { return coeffs_.size(); }
  const SeriesLayout& layout() const { return *layout_; }
  const std::vector<MultiIndex>& indices() const { return layout_->indices; }

  cplx operator[](std::size_t rank) const { return coeffs_[rank]; }
  cplx& operator[](std::size_t rank) { return coeffs_[rank]; }
  const std::vector<cplx>& coeffs() const { return coeffs_; }

  /// Coefficient of z^alpha; zero for |alpha| > N.
  cplx coeff(const MultiIndex& a) const {
    if (a.dim() != dim()) throw DimensionMismatch("multi-index dimension does not match series");
    if (a.order() > degree()) return {};
    return coeffs_[graded_rank(a)];
  }
  void set(const MultiIndex& a, cplx c) {
    if (a.dim() != dim()) throw DimensionMismatch("multi-index dimension does not match series");
    if (a.order() > degree()) throw DegreeLimit("coefficient above truncation degree");
    coeffs_[graded_rank(a)] = c;
  }

  cplx constant_term() const { return coeffs_[0]; }

  /// Marks the represented function as holomorphic across the closed ball,
  /// which is what licenses the r = 1 pairing.
  bool analytic_past_boundary() const { return analytic_past_boundary_; }
  TruncatedSeries& mark_analytic_past_boundary(bool v = true) {
    analytic_past_boundary_ = v;
    return *this;
  }

  /// Restriction (or zero-padding) to degree M.
  TruncatedSeries truncated(int M) const {
    TruncatedSeries r(dim(), M);
    const std::size_t n = std::min(r.size(), size());
    for (std::size_t i = 0; i < n; ++i) r.coeffs_[i] = coeffs_[i];
    r.analytic_past_boundary_ = analytic_past_boundary_;
    return r;
  }

  /// Largest coefficient modulus.
  double max_abs() const {
    double m = 0.0;
    for (const cplx& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
  }

 private:
  static std::shared_ptr<const SeriesLayout> checked_layout(std::size_t d, int N) {
    if (d < 1 || d > kMaxSeriesDim) throw DegreeLimit("series dimension must lie in [1, 4]");
    if (N < 0 || N > kMaxDegree) throw DegreeLimit("series degree must lie in [0, 16]");
    return layout_for(d, N);
  }

  std::shared_ptr<const SeriesLayout> layout_;
  std::vector<cplx> coeffs_;
  bool analytic_past_boundary_ = false;
};

enum class SeriesOp { add, scale, multiply };

namespace detail {

inline void require_same_dim(const TruncatedSeries& f, const TruncatedSeries& g) {
  if (f.dim() != g.dim()) throw DimensionMismatch("series dimensions differ");
}

}  // namespace detail

inline TruncatedSeries add(const TruncatedSeries& f, const TruncatedSeries& g) {
  detail::require_same_dim(f, g);
  TruncatedSeries r = f.degree() >= g.degree() ? f : g;
  const TruncatedSeries& other = f.degree() >= g.degree() ? g : f;
  for (std::size_t i = 0; i < other.size(); ++i) r[i] += other[i];
  r.mark_analytic_past_boundary(f.analytic_past_boundary() && g.analytic_past_boundary());
  return r;
}

inline TruncatedSeries scale(const TruncatedSeries& f, cplx s) {
  TruncatedSeries r = f;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] *= s;
  return r;
}

/// Cauchy product truncated at min(N_f, N_g).
inline TruncatedSeries multiply(const TruncatedSeries& f, const TruncatedSeries& g) {
  detail::require_same_dim(f, g);
  const int N = std::min(f.degree(), g.degree());
  TruncatedSeries r(f.dim(), N);
  const SeriesLayout& lay = r.layout();
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (f[i] == cplx{}) continue;
    const int ki = lay.order[i];
    for (std::size_t j = 0; j < lay.grade_begin[static_cast<std::size_t>(N - ki) + 1]; ++j) {
      if (g[j] == cplx{}) continue;
      r[graded_rank(lay.indices[i] + lay.indices[j])] += f[i] * g[j];
    }
  }
  r.mark_analytic_past_boundary(f.analytic_past_boundary() && g.analytic_past_boundary());
  return r;
}

inline TruncatedSeries operator+(const TruncatedSeries& f, const TruncatedSeries& g) { return add(f, g); }
inline TruncatedSeries operator-(const TruncatedSeries& f, const TruncatedSeries& g) { return add(f, scale(g, -1.0)); }
inline TruncatedSeries operator*(const TruncatedSeries& f, const TruncatedSeries& g) { return multiply(f, g); }
inline TruncatedSeries operator*(cplx s, const TruncatedSeries& f) { return scale(f, s); }

/// Dispatcher over the three arithmetic forms; `s` is only used by scale.
inline TruncatedSeries series_arith(const TruncatedSeries& f, const TruncatedSeries& g, SeriesOp op, cplx s = 1.0) {
  switch (op) {
    case SeriesOp::add: return add(f, g);
    case SeriesOp::scale: return scale(f, s);
    case SeriesOp::multiply: return multiply(f, g);
  }
  throw DomainError("unknown series operation");
}

/// f_r(z) = f(rz): c_alpha -> r^{|alpha|} c_alpha.
inline TruncatedSeries dilate(const TruncatedSeries& f, double r) {
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("dilation radius must lie in [0, 1]");
  TruncatedSeries out = f;
  const SeriesLayout& lay = f.layout();
  std::vector<double> powers(static_cast<std::size_t>(f.degree()) + 1, 1.0);
  for (std::size_t k = 1; k < powers.size(); ++k) powers[k] = powers[k - 1] * r;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= powers[static_cast<std::size_t>(lay.order[i])];
  if (r < 1.0) out.mark_analytic_past_boundary();
  return out;
}

/// conj(f(conj z)): coefficientwise conjugation.
inline TruncatedSeries reflect(const TruncatedSeries& f) {
  TruncatedSeries out = f;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::conj(out[i]);
  return out;
}

/// sum_alpha c_alpha z^alpha. Monomials are built from their graded
/// predecessors and summed grade by grade from the top.
inline cplx evaluate(const TruncatedSeries& f, const Point& z) {
  if (static_cast<std::size_t>(z.size()) != f.dim()) throw DimensionMismatch("point dimension does not match series");
  const SeriesLayout& lay = f.layout();
  thread_local std::vector<cplx> mono;
  mono.resize(f.size());
  mono[0] = 1.0;
  for (std::size_t i = 1; i < f.size(); ++i) mono[i] = mono[lay.pred[i]] * z[static_cast<Eigen::Index>(lay.var[i])];
  cplx acc = 0.0;
  for (int k = f.degree(); k >= 0; --k) {
    cplx grade = 0.0;
    const auto kk = static_cast<std::size_t>(k);
    for (std::size_t i = lay.grade_begin[kk]; i < lay.grade_begin[kk + 1]; ++i) grade += f[i] * mono[i];
    acc += grade;
  }
  return acc;
}

/// Values of the homogeneous components: out[k] = sum_{|alpha|=k} c_alpha z^alpha.
inline std::vector<cplx> grade_values(const TruncatedSeries& f, const Point& z) {
  if (static_cast<std::size_t>(z.size()) != f.dim()) throw DimensionMismatch("point dimension does not match series");
  const SeriesLayout& lay = f.layout();
  std::vector<cplx> mono(f.size());
  mono[0] = 1.0;
  for (std::size_t i = 1; i < f.size(); ++i) mono[i] = mono[lay.pred[i]] * z[static_cast<Eigen::Index>(lay.var[i])];
  std::vector<cplx> out(static_cast<std::size_t>(f.degree()) + 1, cplx{});
  for (std::size_t i = 0; i < f.size(); ++i) out[static_cast<std::size_t>(lay.order[i])] += f[i] * mono[i];
  return out;
}

/// Radial derivative sum_j z_j d/dz_j: c_alpha -> |alpha| c_alpha.
inline TruncatedSeries radial_derivative(const TruncatedSeries& f) {
  TruncatedSeries out = f;
  const SeriesLayout& lay = f.layout();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= static_cast<double>(lay.order[i]);
  return out;
}

/// a / b by grade-recursive back-substitution, truncated at min degree.
inline TruncatedSeries divide(const TruncatedSeries& a, const TruncatedSeries& b) {
  detail::require_same_dim(a, b);
  const cplx b0 = b.constant_term();
  if (std::abs(b0) < 1e-14) throw DivisionPole("series division by a series with vanishing constant term");
  const int N = std::min(a.degree(), b.degree());
  TruncatedSeries q(a.dim(), N);
  const SeriesLayout& lay = q.layout();
  for (std::size_t g = 0; g < q.size(); ++g) {
    cplx s = a[g];
    const MultiIndex& gamma = lay.indices[g];
    for (std::size_t beta = 1; beta < lay.grade_begin[static_cast<std::size_t>(lay.order[g]) + 1]; ++beta) {
      if (b[beta] == cplx{} || !lay.indices[beta].divides(gamma)) continue;
      std::vector<int> diff = gamma.exponents();
      for (std::size_t j = 0; j < diff.size(); ++j) diff[j] -= lay.indices[beta][j];
      s -= b[beta] * q[graded_rank(MultiIndex(std::move(diff)))];
    }
    q[g] = s / b0;
  }
  return q;
}

enum class CayleyDirection { schur_to_herglotz, herglotz_to_schur };

/// schur_to_herglotz: (1+phi)/(1-phi); herglotz_to_schur: (f-1)/(f+1).
inline TruncatedSeries cayley(const TruncatedSeries& f, CayleyDirection dir) {
  const TruncatedSeries one = TruncatedSeries::constant(f.dim(), f.degree(), 1.0);
  if (dir == CayleyDirection::schur_to_herglotz) {
    if (std::abs(f.constant_term() - 1.0) < 1e-14) throw DivisionPole("Cayley transform undefined: phi(0) = 1");
    return divide(one + f, one - f);
  }
  if (std::abs(f.constant_term() + 1.0) < 1e-14) throw DivisionPole("inverse Cayley transform undefined: f(0) = -1");
  return divide(f - one, f + one);
}

/// h(phi(z)) for a univariate h, truncated at the degree of phi.
/// Exact on truncations when phi(0) = 0; otherwise limited by the degree of h.
inline TruncatedSeries compose_univariate(const TruncatedSeries& h, const TruncatedSeries& phi) {
  if (h.dim() != 1) throw DimensionMismatch("outer function of a composition must be univariate");
  if (std::abs(phi.constant_term()) >= 1.0) throw DomainError("composition diverges: |phi(0)| >= 1");
  if (h.degree() < phi.degree()) throw DegreeLimit("outer series must be given to at least the inner degree");
  TruncatedSeries acc = TruncatedSeries::constant(phi.dim(), phi.degree(), h[static_cast<std::size_t>(h.degree())]);
  for (int k = h.degree() - 1; k >= 0; --k) {
    acc = multiply(acc, phi);
    acc[0] += h[static_cast<std::size_t>(k)];
  }
  return acc;
}

}  // namespace herglotz

#endif  // HERGLOTZ_SERIES_HPP
