#ifndef HERGLOTZ_MULTI_INDEX_HPP
#define HERGLOTZ_MULTI_INDEX_HPP

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <string>
#include <vector>

#include "herglotz/errors.hpp"

namespace herglotz {

/// Largest |alpha| for which factorials and weights are computed exactly.
inline constexpr int kMaxExactOrder = 20;

/// Exponent vector alpha = (alpha_1, ..., alpha_d) with nonnegative entries.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t d) : exps_(d, 0) {}
  MultiIndex(std::initializer_list<int> exps) : exps_(exps) { check(); }
  explicit MultiIndex(std::vector<int> exps) : exps_(std::move(exps)) { check(); }

  static MultiIndex unit(std::size_t d, std::size_t j) {
    MultiIndex e(d);
    e.exps_.at(j) = 1;
    return e;
  }

  std::size_t dim() const { return exps_.size(); }
  int operator[](std::size_t j) const { return exps_[j]; }
  const std::vector<int>& exponents() const { return exps_; }

  int order() const { return std::accumulate(exps_.begin(), exps_.end(), 0); }
  bool is_zero() const { return order() == 0; }

  MultiIndex plus_unit(std::size_t j) const {
    MultiIndex r = *this;
    ++r.exps_.at(j);
    return r;
  }
  MultiIndex operator+(const MultiIndex& o) const {
    if (o.dim() != dim()) throw DimensionMismatch("multi-index dimension mismatch");
    MultiIndex r = *this;
    for (std::size_t j = 0; j < dim(); ++j) r.exps_[j] += o.exps_[j];
    return r;
  }
  /// Componentwise alpha <= beta.
  bool divides(const MultiIndex& o) const {
    for (std::size_t j = 0; j < dim(); ++j)
      if (exps_[j] > o.exps_[j]) return false;
    return true;
  }

  bool operator==(const MultiIndex& o) const = default;

  std::string str() const {
    std::string s = "(";
    for (std::size_t j = 0; j < exps_.size(); ++j) {
      if (j) s += ",";
      s += std::to_string(exps_[j]);
    }
    return s + ")";
  }

 private:
  void check() const {
    for (int a : exps_)
      if (a < 0) throw DomainError("multi-index entries must be nonnegative");
  }

  std::vector<int> exps_;
};

namespace detail {

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  __extension__ using u128 = unsigned __int128;
  u128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  if (r > UINT64_MAX) throw DegreeLimit("binomial coefficient overflows 64 bits");
  return static_cast<std::uint64_t>(r);
}

// Number of m-tuples of nonnegative integers summing to s.
inline std::uint64_t compositions(std::size_t m, int s) {
  if (m == 0) return s == 0 ? 1 : 0;
  return binomial(static_cast<std::uint64_t>(s) + m - 1, m - 1);
}

}  // namespace detail

inline std::uint64_t factorial(int n) {
  if (n < 0) throw DomainError("factorial of a negative number");
  if (n > kMaxExactOrder) throw DegreeLimit("factorial beyond exact range (|alpha| <= 20)");
  std::uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

/// alpha! = alpha_1! ... alpha_d!
inline std::uint64_t multi_factorial(const MultiIndex& a) {
  if (a.order() > kMaxExactOrder) throw DegreeLimit("multi-index order beyond exact range (|alpha| <= 20)");
  std::uint64_t r = 1;
  for (int e : a.exponents()) r *= factorial(e);
  return r;
}

/// w(alpha) = |alpha|!/alpha!, the number of words with letter content alpha.
/// Computed as a product of binomials so no intermediate exceeds the result.
inline std::uint64_t weight(const MultiIndex& a) {
  if (a.order() > kMaxExactOrder) throw DegreeLimit("weight requested beyond |alpha| = 20");
  std::uint64_t w = 1;
  std::uint64_t partial = 0;
  for (int e : a.exponents()) {
    partial += static_cast<std::uint64_t>(e);
    w *= detail::binomial(partial, static_cast<std::uint64_t>(e));
  }
  return w;
}

/// Number of multi-indices in d variables with |alpha| <= N, i.e. C(N+d, d).
inline std::size_t simplex_size(std::size_t d, int N) {
  return static_cast<std::size_t>(detail::binomial(static_cast<std::uint64_t>(N) + d, d));
}

/// Position of alpha in the graded order: by |alpha|, then lexicographically
/// descending within a grade, so (1,0) precedes (0,1).
inline std::size_t graded_rank(const MultiIndex& a) {
  const std::size_t d = a.dim();
  int k = a.order();
  std::size_t rank = k == 0 ? 0 : simplex_size(d, k - 1);
  for (std::size_t j = 0; j + 1 < d; ++j) {
    for (int hi = k; hi > a[j]; --hi) rank += detail::compositions(d - j - 1, k - hi);
    k -= a[j];
  }
  return rank;
}

/// All multi-indices with |alpha| <= N in graded order; length C(N+d, d).
inline std::vector<MultiIndex> enumerate_multiindices(std::size_t d, int N) {
  if (d < 1) throw DomainError("dimension must be at least 1");
  if (N < 0) throw DomainError("degree must be nonnegative");
  std::vector<MultiIndex> out;
  out.reserve(simplex_size(d, N));
  std::vector<int> cur(d, 0);
  // Descending-lex enumeration of compositions of k into d parts.
  auto fill = [&](auto&& self, std::size_t j, int remaining) -> void {
    if (j + 1 == d) {
      cur[j] = remaining;
      out.emplace_back(cur);
      return;
    }
    for (int a = remaining; a >= 0; --a) {
      cur[j] = a;
      self(self, j + 1, remaining - a);
    }
  };
  for (int k = 0; k <= N; ++k) fill(fill, 0, k);
  return out;
}

}  // namespace herglotz

#endif  // HERGLOTZ_MULTI_INDEX_HPP
