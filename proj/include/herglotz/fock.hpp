#ifndef HERGLOTZ_FOCK_HPP
#define HERGLOTZ_FOCK_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <vector>

#include <Eigen/SVD>

#include "herglotz/errors.hpp"
#include "herglotz/multi_index.hpp"
#include "herglotz/random.hpp"
#include "herglotz/series.hpp"
#include "herglotz/types.hpp"

namespace herglotz {

inline constexpr std::size_t kMaxFockBasis = 1'000'000;

using Word = std::vector<std::size_t>;  // 0-based letters

/// All words over {0..d-1} of length <= L, graded then lexicographic; the
/// empty word (vacuum) has index 0. Words are indexed arithmetically, not stored.
class FockBasis {
 public:
  FockBasis(std::size_t d, int L) : d_(d), L_(L) {
    if (d < 1) throw DomainError("Fock alphabet must be nonempty");
    if (L < 0) throw DomainError("word length must be nonnegative");
    offsets_.push_back(0);
    std::uint64_t block = 1;
    for (int k = 0; k <= L; ++k) {
      offsets_.push_back(offsets_.back() + block);
      if (offsets_.back() > kMaxFockBasis) throw ResourceCap("Fock basis exceeds 10^6 words");
      block *= d;
    }
  }

  std::size_t d() const { return d_; }
  int max_length() const { return L_; }
  std::size_t size() const { return static_cast<std::size_t>(offsets_.back()); }
  /// Index of the first word of length k.
  std::size_t offset(int k) const { return static_cast<std::size_t>(offsets_.at(static_cast<std::size_t>(k))); }

  std::size_t index(const Word& w) const {
    if (w.size() > static_cast<std::size_t>(L_)) throw DomainError("word longer than the truncation");
    std::size_t r = 0;
    for (std::size_t letter : w) {
      if (letter >= d_) throw DomainError("letter outside the alphabet");
      r = r * d_ + letter;
    }
    return offset(static_cast<int>(w.size())) + r;
  }

  Word word(std::size_t idx) const {
    if (idx >= size()) throw DomainError("Fock index out of range");
    int k = 0;
    while (offset(k + 1) <= idx) ++k;
    std::size_t r = idx - offset(k);
    Word w(static_cast<std::size_t>(k));
    for (int i = k - 1; i >= 0; --i) {
      w[static_cast<std::size_t>(i)] = r % d_;
      r /= d_;
    }
    return w;
  }

 private:
  std::size_t d_;
  int L_;
  std::vector<std::uint64_t> offsets_;
};

/// Partial isometry with at most one unit entry per column: column c maps to
/// row target[c], or to zero when target[c] < 0.
class ColumnMap {
 public:
  explicit ColumnMap(std::vector<std::int64_t> target) : target_(std::move(target)) {}

  std::size_t size() const { return target_.size(); }
  std::int64_t target(std::size_t c) const { return target_[c]; }

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(x.size());
    for (std::size_t c = 0; c < target_.size(); ++c)
      if (target_[c] >= 0) y[target_[c]] += x[static_cast<Eigen::Index>(c)];
    return y;
  }
  Eigen::VectorXd apply_adjoint(const Eigen::VectorXd& y) const {
    Eigen::VectorXd x(y.size());
    for (std::size_t c = 0; c < target_.size(); ++c)
      x[static_cast<Eigen::Index>(c)] = target_[c] >= 0 ? y[target_[c]] : 0.0;
    return x;
  }

 private:
  std::vector<std::int64_t> target_;
};

/// Truncated left creation operators: L_j sends word w to j.w when |w| < L and
/// to zero on the top grade. This is the compression to a co-invariant
/// subspace, so products of the L_j compress products of the full operators.
inline std::vector<ColumnMap> creation_operators(const FockBasis& basis) {
  if (basis.d() < 2 || basis.max_length() < 1) throw DomainError("creation operators need d >= 2 and L >= 1");
  std::vector<ColumnMap> ops;
  for (std::size_t j = 0; j < basis.d(); ++j) {
    std::vector<std::int64_t> t(basis.size(), -1);
    std::size_t grade_size = 1;
    for (int k = 0; k < basis.max_length(); ++k) {
      for (std::size_t r = 0; r < grade_size; ++r)
        t[basis.offset(k) + r] = static_cast<std::int64_t>(basis.offset(k + 1) + j * grade_size + r);
      grade_size *= basis.d();
    }
    ops.emplace_back(std::move(t));
  }
  return ops;
}

/// Orthonormal monomial basis of the symmetric Fock space truncated at degree N:
/// e_alpha = z^alpha / ||z^alpha|| with ||z^alpha||^2 = alpha!/|alpha|!.
struct SymFockBasis {
  std::size_t d;
  int N;
  std::shared_ptr<const SeriesLayout> layout;

  SymFockBasis(std::size_t dim, int degree) : d(dim), N(degree), layout(layout_for(dim, degree)) {}
  std::size_t size() const { return layout->indices.size(); }
  double norm(std::size_t rank) const { return 1.0 / std::sqrt(static_cast<double>(weight(layout->indices[rank]))); }
};

/// Coordinate multipliers on the truncated Drury-Arveson space in the
/// orthonormal basis: S_j e_alpha = sqrt((alpha_j + 1)/(|alpha| + 1)) e_{alpha+e_j},
/// top grade to zero.
inline std::vector<Eigen::MatrixXd> dshift_operators(const SymFockBasis& basis) {
  if (basis.d < 1 || basis.N < 1) throw DomainError("d-shift needs d >= 1 and N >= 1");
  const auto n = static_cast<Eigen::Index>(basis.size());
  std::vector<Eigen::MatrixXd> ops(basis.d, Eigen::MatrixXd::Zero(n, n));
  const SeriesLayout& lay = *basis.layout;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const MultiIndex& a = lay.indices[i];
    if (lay.order[i] == basis.N) continue;
    for (std::size_t j = 0; j < basis.d; ++j) {
      const double c = std::sqrt((a[j] + 1.0) / (lay.order[i] + 1.0));
      ops[j](static_cast<Eigen::Index>(graded_rank(a.plus_unit(j))), static_cast<Eigen::Index>(i)) = c;
    }
  }
  return ops;
}

/// Matrix-free real operator given by its action and the action of its adjoint.
struct LinearMap {
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> apply;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> apply_adjoint;
};

struct PowerOptions {
  int max_iters = 5000;
  double tol = 1e-10;
  std::uint64_t seed = 11;
};

struct NormResult {
  double value = 0.0;
  int iterations = 0;
  double residual = 0.0;  // ||A^*A x - lambda x|| / lambda at exit
  bool converged = false;
};

/// Largest singular value from a dense SVD.
template <class Derived>
double operator_norm_dense(const Eigen::MatrixBase<Derived>& a) {
  if (a.size() == 0) return 0.0;
  using Plain = typename Derived::PlainObject;
  Eigen::BDCSVD<Plain> svd(a.derived());
  return svd.singularValues()(0);
}

/// Power iteration on A^*A; stops when the Rayleigh quotient changes by less
/// than tol relative. Non-convergence is reported, not thrown.
inline NormResult operator_norm_power(const LinearMap& a, const PowerOptions& opt = {}) {
  auto eng = stream_engine(opt.seed, 0);
  std::normal_distribution<double> nd;
  Eigen::VectorXd x(a.cols);
  for (Eigen::Index i = 0; i < a.cols; ++i) x[i] = nd(eng);
  x.normalize();
  NormResult res;
  double lambda = 0.0;
  for (int it = 1; it <= opt.max_iters; ++it) {
    const Eigen::VectorXd z = a.apply_adjoint(a.apply(x));
    const double next = x.dot(z);
    res.iterations = it;
    if (next <= 0.0) {
      res.value = 0.0;
      res.converged = true;
      return res;
    }
    res.residual = (z - next * x).norm() / next;
    x = z / z.norm();
    const bool done = std::abs(next - lambda) <= opt.tol * next;
    lambda = next;
    if (done) {
      res.converged = true;
      break;
    }
  }
  res.value = std::sqrt(lambda);
  return res;
}

struct DavidsonPittsReport {
  int L_full = 0;
  int N_sym = 0;
  double norm_sym_shift = 0.0;     // ||p(S)|| on the truncated symmetric Fock space
  double norm_sym_calculus = 0.0;  // ||p^sym(L)|| on the truncated full Fock space
  int iters = 0;
  double residual = 0.0;
  bool converged = false;
};

/// Norm of p(S) = S_1 + S_1 S_2 on SymFockBasis(2, N_sym).
inline double davidson_pitts_shift_norm(int N_sym) {
  const SymFockBasis basis(2, N_sym);
  const auto s = dshift_operators(basis);
  const Eigen::MatrixXd p = s[0] + s[0] * s[1];
  return operator_norm_dense(p);
}

/// p^sym(L) = L_1 + (L_1 L_2 + L_2 L_1)/2 on FockBasis(2, L_full) as a matrix-free map.
inline LinearMap davidson_pitts_calculus_map(const FockBasis& basis) {
  if (basis.d() != 2) throw DomainError("the p = z1 + z1 z2 experiment lives in two variables");
  auto ops = std::make_shared<std::vector<ColumnMap>>(creation_operators(basis));
  LinearMap m;
  m.rows = m.cols = static_cast<Eigen::Index>(basis.size());
  m.apply = [ops](const Eigen::VectorXd& x) {
    const ColumnMap& l1 = (*ops)[0];
    const ColumnMap& l2 = (*ops)[1];
    return Eigen::VectorXd(l1.apply(x) + 0.5 * (l1.apply(l2.apply(x)) + l2.apply(l1.apply(x))));
  };
  m.apply_adjoint = [ops](const Eigen::VectorXd& y) {
    const ColumnMap& l1 = (*ops)[0];
    const ColumnMap& l2 = (*ops)[1];
    return Eigen::VectorXd(l1.apply_adjoint(y) +
                           0.5 * (l2.apply_adjoint(l1.apply_adjoint(y)) + l1.apply_adjoint(l2.apply_adjoint(y))));
  };
  return m;
}

/// The full-Fock limit of ||p^sym(L)||: (p^sym)^*(p^sym) = (3/2) I + (V_2 + V_2^*)/2
/// for Cuntz isometries, so the norm is sqrt(5/2).
inline double davidson_pitts_limit() { return std::sqrt(2.5); }

inline DavidsonPittsReport davidson_pitts(int L_full, int N_sym, const PowerOptions& opt = {}) {
  DavidsonPittsReport rep;
  rep.L_full = L_full;
  rep.N_sym = N_sym;
  rep.norm_sym_shift = davidson_pitts_shift_norm(N_sym);
  const FockBasis basis(2, L_full);
  const NormResult nr = operator_norm_power(davidson_pitts_calculus_map(basis), opt);
  rep.norm_sym_calculus = nr.value;
  rep.iters = nr.iterations;
  rep.residual = nr.residual;
  rep.converged = nr.converged;
  return rep;
}

namespace detail {

inline void require_unit(const Point& zeta) {
  if (std::abs(zeta.norm() - 1.0) > 1e-12) throw DomainError("Cuntz state needs a unit vector zeta");
}

}  // namespace detail

/// omega_zeta(V_{i_1}...V_{i_m} V_{j_1}^*...V_{j_n}^*) = zeta_{i_1}...zeta_{i_m} conj(zeta_{j_1})...conj(zeta_{j_n}).
inline cplx cuntz_state_word(const Point& zeta, const Word& i_word, const Word& j_word) {
  detail::require_unit(zeta);
  cplx v = 1.0;
  for (std::size_t i : i_word) v *= zeta[static_cast<Eigen::Index>(i)];
  for (std::size_t j : j_word) v *= std::conj(zeta[static_cast<Eigen::Index>(j)]);
  return v;
}

/// Partial sums 2 sum_{k<=K} omega(<z,V>^k) - 1 in the Cuntz state that
/// represents h_zeta. Under the word formula above, omega_c(<z,V>) = sum_j z_j c_j,
/// so the representing state is omega_{conj(zeta)} and each term is <z,zeta>^k.
/// The state is multiplicative on words, which collapses each grade to a power.
inline cplx cuntz_state_herglotz(const Point& zeta, const Point& z, int K) {
  detail::require_unit(zeta);
  if (z.size() != zeta.size()) throw DimensionMismatch("point and zeta dimensions differ");
  if (K < 0) throw DomainError("truncation must be nonnegative");
  const Point state = zeta.conjugate();
  cplx s = 0.0;
  for (Eigen::Index j = 0; j < z.size(); ++j) s += z[j] * cuntz_state_word(state, {static_cast<std::size_t>(j)}, {});
  if (std::abs(s) >= 1.0) throw DomainError("Cuntz-state series diverges: |<z,zeta>| >= 1");
  cplx sum = 0.0, term = 1.0;
  for (int k = 0; k <= K; ++k) {
    sum += term;
    term *= s;
  }
  return 2.0 * sum - 1.0;
}

}  // namespace herglotz

#endif  // HERGLOTZ_FOCK_HPP
