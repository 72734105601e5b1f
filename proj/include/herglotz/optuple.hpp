#ifndef HERGLOTZ_OPTUPLE_HPP
#define HERGLOTZ_OPTUPLE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "herglotz/errors.hpp"
#include "herglotz/multi_index.hpp"
#include "herglotz/random.hpp"
#include "herglotz/series.hpp"
#include "herglotz/types.hpp"

namespace herglotz {

/// d-tuple of n x n complex matrices.
class OperatorTuple {
 public:
  OperatorTuple() = default;
  explicit OperatorTuple(std::vector<Matrix> mats) : mats_(std::move(mats)) {
    if (mats_.empty()) throw DomainError("operator tuple needs at least one matrix");
    const Eigen::Index n = mats_.front().rows();
    for (const Matrix& m : mats_)
      if (m.rows() != n || m.cols() != n) throw DimensionMismatch("tuple matrices must share one square size");
  }

  std::size_t d() const { return mats_.size(); }
  Eigen::Index n() const { return mats_.empty() ? 0 : mats_.front().rows(); }
  const Matrix& operator[](std::size_t j) const { return mats_[j]; }
  const std::vector<Matrix>& matrices() const { return mats_; }

  /// <z, T> = sum_j z_j T_j.
  Matrix pencil(const Point& z) const {
    if (static_cast<std::size_t>(z.size()) != d()) throw DimensionMismatch("point dimension does not match tuple");
    Matrix a = Matrix::Zero(n(), n());
    for (std::size_t j = 0; j < d(); ++j) a += z[static_cast<Eigen::Index>(j)] * mats_[j];
    return a;
  }

  OperatorTuple scaled(cplx s) const {
    std::vector<Matrix> m = mats_;
    for (Matrix& x : m) x *= s;
    return OperatorTuple(std::move(m));
  }

  /// Row block [T_1 ... T_d].
  Matrix row() const {
    Matrix r(n(), n() * static_cast<Eigen::Index>(d()));
    for (std::size_t j = 0; j < d(); ++j) r.middleCols(static_cast<Eigen::Index>(j) * n(), n()) = mats_[j];
    return r;
  }

  /// Scalar tuple (n = 1) with entries c.
  static OperatorTuple scalar(const Point& c) {
    std::vector<Matrix> m;
    for (Eigen::Index j = 0; j < c.size(); ++j) m.push_back(Matrix::Constant(1, 1, c[j]));
    return OperatorTuple(std::move(m));
  }

 private:
  std::vector<Matrix> mats_;
};

/// Generator of f(z) = <H(z,T) xi, xi> + i t.
struct HerglotzDatum {
  OperatorTuple tuple;
  Vector xi;
  double t = 0.0;

  void validate() const {
    if (xi.size() != tuple.n()) throw DimensionMismatch("xi length must equal the matrix size");
  }
};

struct PredicateReport {
  bool holds = false;
  double value = 0.0;  // min eigenvalue, sup estimate or max commutator norm
};

/// Smallest eigenvalue of I - sum T_j T_j^*; holds iff >= -tol.
inline PredicateReport is_row_contraction(const OperatorTuple& T, double tol = 1e-10) {
  Matrix defect = Matrix::Identity(T.n(), T.n());
  for (const Matrix& m : T.matrices()) defect -= m * m.adjoint();
  Eigen::SelfAdjointEigenSolver<Matrix> es(defect, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  return {lo >= -tol, lo};
}

struct WeakBudget {
  int samples = 2000;
  int refine_steps = 50;
  int starts = 10;
  std::uint64_t seed = 7;
};

struct WeakReport {
  bool holds = false;
  double sup_estimate = 0.0;
  Point worst_zeta;
};

namespace detail {

inline double top_singular(const Matrix& a, Vector* u = nullptr, Vector* v = nullptr) {
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (u) *u = svd.matrixU().col(0);
  if (v) *v = svd.matrixV().col(0);
  return svd.singularValues()(0);
}

}  // namespace detail

/// Estimates sup over unit zeta of ||<zeta, T>||. Random sphere directions
/// are followed by alternating ascent from the best few: with top singular
/// vectors (u, v) of <zeta,T>, the next zeta is the normalized conjugate of
/// (u^* T_j v)_j. A violation found is conclusive; a pass is evidence only.
inline WeakReport is_weak_row_contraction(const OperatorTuple& T, double tol = 1e-10, const WeakBudget& budget = {}) {
  if (budget.samples < 1) throw DomainError("weak row contraction budget must be positive");
  auto eng = stream_engine(budget.seed, 0);
  const auto d = static_cast<Eigen::Index>(T.d());
  std::vector<std::pair<double, Point>> seen;
  seen.reserve(static_cast<std::size_t>(budget.samples) + d);
  for (Eigen::Index j = 0; j < d; ++j) {
    Point e = Point::Zero(d);
    e[j] = 1.0;
    seen.emplace_back(detail::top_singular(T.pencil(e)), e);
  }
  for (int s = 0; s < budget.samples; ++s) {
    Point z = random_unit_vector(eng, d);
    seen.emplace_back(detail::top_singular(T.pencil(z)), std::move(z));
  }
  const std::size_t keep = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, budget.starts)), seen.size());
  std::partial_sort(seen.begin(), seen.begin() + static_cast<std::ptrdiff_t>(keep), seen.end(),
                    [](const auto& a, const auto& b) { return a.first > b.first; });
  WeakReport best{false, seen.front().first, seen.front().second};
  for (std::size_t s = 0; s < keep; ++s) {
    Point z = seen[s].second;
    double val = seen[s].first;
    for (int it = 0; it < budget.refine_steps; ++it) {
      Vector u, v;
      detail::top_singular(T.pencil(z), &u, &v);
      Point g(d);
      for (Eigen::Index j = 0; j < d; ++j) g[j] = std::conj(u.dot(T[static_cast<std::size_t>(j)] * v));
      if (g.norm() == 0.0) break;
      z = g / g.norm();
      const double nv = detail::top_singular(T.pencil(z));
      if (nv <= val + 1e-15) {
        val = std::max(val, nv);
        break;
      }
      val = nv;
    }
    if (val > best.sup_estimate) best = {false, val, z};
  }
  best.holds = best.sup_estimate <= 1.0 + tol;
  return best;
}

/// max_{i<j} ||T_i T_j - T_j T_i|| (spectral norm).
inline PredicateReport is_commuting(const OperatorTuple& T, double tol = 1e-10) {
  double worst = 0.0;
  for (std::size_t i = 0; i < T.d(); ++i)
    for (std::size_t j = i + 1; j < T.d(); ++j) {
      const Matrix c = T[i] * T[j] - T[j] * T[i];
      worst = std::max(worst, detail::top_singular(c));
    }
  return {worst <= tol, worst};
}

namespace detail {

inline Eigen::PartialPivLU<Matrix> resolvent_lu(const Point& z, const OperatorTuple& T) {
  const Matrix m = Matrix::Identity(T.n(), T.n()) - T.pencil(z);
  Eigen::PartialPivLU<Matrix> lu(m);
  if (!(lu.rcond() > 1e-14)) throw SingularPencil("I - <z,T> is numerically singular");
  return lu;
}

}  // namespace detail

/// H(z,T) = 2 (I - <z,T>)^{-1} - I, via an LU solve.
inline Matrix herglotz_kernel(const Point& z, const OperatorTuple& T) {
  const auto lu = detail::resolvent_lu(z, T);
  const Matrix id = Matrix::Identity(T.n(), T.n());
  return 2.0 * lu.solve(id) - id;
}

/// (H + H^*)/2.
inline Matrix re_herglotz_kernel(const Point& z, const OperatorTuple& T) {
  const Matrix h = herglotz_kernel(z, T);
  return 0.5 * (h + h.adjoint());
}

/// (I - A)^{-1} (I - A A^*) (I - A^*)^{-1} with A = <z,T>; equals Re H(z,T).
inline Matrix re_herglotz_factored(const Point& z, const OperatorTuple& T) {
  const Matrix a = T.pencil(z);
  const Matrix id = Matrix::Identity(T.n(), T.n());
  const auto lu = detail::resolvent_lu(z, T);
  const Matrix left = lu.solve(id);
  return left * (id - a * a.adjoint()) * left.adjoint();
}

/// <H(z,T) xi, xi> + i t.
inline cplx herglotz_transform(const HerglotzDatum& D, const Point& z) {
  D.validate();
  const auto lu = detail::resolvent_lu(z, D.tuple);
  const Vector y = lu.solve(D.xi);
  return 2.0 * D.xi.dot(y) - D.xi.squaredNorm() + cplx(0.0, D.t);
}

/// Taylor coefficients of the Herglotz transform: c_0 = |xi|^2 + i t and
/// c_alpha = 2 <U_alpha, xi> with U_0 = xi, U_alpha = sum_j T_j U_{alpha - e_j}.
/// U_alpha is the sum over all words of content alpha applied to xi.
inline TruncatedSeries herglotz_taylor(const HerglotzDatum& D, int N) {
  D.validate();
  TruncatedSeries out(D.tuple.d(), N);
  const SeriesLayout& lay = out.layout();
  std::vector<Vector> u(out.size());
  u[0] = D.xi;
  out[0] = cplx(D.xi.squaredNorm(), D.t);
  for (std::size_t i = 1; i < out.size(); ++i) {
    const MultiIndex& a = lay.indices[i];
    Vector acc = Vector::Zero(D.tuple.n());
    for (std::size_t j = 0; j < D.tuple.d(); ++j) {
      if (a[j] == 0) continue;
      std::vector<int> e = a.exponents();
      --e[j];
      acc += D.tuple[j] * u[graded_rank(MultiIndex(std::move(e)))];
    }
    out[i] = 2.0 * D.xi.dot(acc);
    u[i] = std::move(acc);
  }
  return out;
}

inline constexpr int kDefaultWordCap = 12;

/// (alpha!/|alpha|!) sum over distinct words with content alpha of T_{i_1} ... T_{i_k}.
inline Matrix sym_monomial(const MultiIndex& a, const OperatorTuple& T, int word_cap = kDefaultWordCap) {
  if (a.dim() != T.d()) throw DimensionMismatch("multi-index dimension does not match tuple");
  if (a.order() > word_cap) throw DegreeLimit("symmetrized monomial exceeds the word cap");
  std::vector<std::size_t> word;
  for (std::size_t j = 0; j < a.dim(); ++j) word.insert(word.end(), static_cast<std::size_t>(a[j]), j);
  Matrix sum = Matrix::Zero(T.n(), T.n());
  std::uint64_t count = 0;
  do {
    Matrix p = Matrix::Identity(T.n(), T.n());
    for (std::size_t letter : word) p = p * T[letter];
    sum += p;
    ++count;
  } while (std::next_permutation(word.begin(), word.end()));
  return sum / static_cast<double>(count);
}

/// p^sym(T) = sum_alpha c_alpha (z^alpha)^sym(T).
inline Matrix sym_poly(const TruncatedSeries& p, const OperatorTuple& T, int word_cap = kDefaultWordCap) {
  if (p.dim() != T.d()) throw DimensionMismatch("polynomial dimension does not match tuple");
  Matrix sum = Matrix::Zero(T.n(), T.n());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == cplx{}) continue;
    sum += p[i] * sym_monomial(p.indices()[i], T, word_cap);
  }
  return sum;
}

/// sum_alpha c_alpha T^alpha for a commuting tuple, with monomials built from
/// their graded predecessors.
inline Matrix commuting_calculus(const TruncatedSeries& p, const OperatorTuple& T, double tol = 1e-10) {
  if (p.dim() != T.d()) throw DimensionMismatch("polynomial dimension does not match tuple");
  double scale = 1.0;
  for (const Matrix& m : T.matrices()) scale = std::max(scale, m.squaredNorm());
  if (!is_commuting(T, tol * scale).holds) throw DomainError("commuting functional calculus needs a commuting tuple");
  const SeriesLayout& lay = p.layout();
  std::vector<Matrix> mono(p.size());
  mono[0] = Matrix::Identity(T.n(), T.n());
  Matrix sum = p[0] * mono[0];
  for (std::size_t i = 1; i < p.size(); ++i) {
    mono[i] = T[lay.var[i]] * mono[lay.pred[i]];
    sum += p[i] * mono[i];
  }
  return sum;
}

/// Gaussian tuple scaled so the row block [T_1 ... T_d] has norm drawn
/// uniformly from [0.3, 1].
inline OperatorTuple random_row_contraction(std::size_t d, Eigen::Index n, std::uint64_t seed) {
  auto eng = stream_engine(seed, 0x5200);
  std::vector<Matrix> m;
  for (std::size_t j = 0; j < d; ++j) m.push_back(complex_normal_matrix(eng, n, n));
  OperatorTuple T(std::move(m));
  const double norm = detail::top_singular(T.row());
  std::uniform_real_distribution<double> u(0.3, 1.0);
  return T.scaled(u(eng) / norm);
}

enum class CommutingFamily { diagonal, nilpotent };

/// Commuting row contraction: a jointly unitarily conjugated diagonal tuple
/// whose rows lie in the closed ball, or a nilpotent pair family (a E_12, b E_12, ...)
/// with |a|^2 + |b|^2 + ... <= 1 (requires n >= 2).
inline OperatorTuple random_commuting_tuple(std::size_t d, Eigen::Index n, std::uint64_t seed, CommutingFamily family) {
  auto eng = stream_engine(seed, 0xC044);
  std::vector<Matrix> m(d, Matrix::Zero(n, n));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (family == CommutingFamily::diagonal) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const Point row = random_ball_point(eng, static_cast<Eigen::Index>(d), 1.0);
      for (std::size_t j = 0; j < d; ++j) m[j](i, i) = row[static_cast<Eigen::Index>(j)];
    }
  } else {
    if (n < 2) throw DomainError("nilpotent commuting family needs n >= 2");
    const Point c = random_ball_point(eng, static_cast<Eigen::Index>(d), 1.0);
    for (std::size_t j = 0; j < d; ++j) m[j](0, 1) = c[static_cast<Eigen::Index>(j)];
  }
  const Matrix q = random_unitary(eng, n);
  for (Matrix& x : m) x = q * x * q.adjoint();
  return OperatorTuple(std::move(m));
}

}  // namespace herglotz

#endif  // HERGLOTZ_OPTUPLE_HPP
