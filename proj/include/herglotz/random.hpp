#ifndef HERGLOTZ_RANDOM_HPP
#define HERGLOTZ_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <random>

#include "herglotz/types.hpp"

namespace herglotz {

/// Engine for stream `counter` of a run seeded with `seed`. Streams are
/// independent of each other, so work split by counter is reproducible
/// under any partition.
inline std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t counter) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(counter), static_cast<std::uint32_t>(counter >> 32), 0x48e7u};
  return std::mt19937_64(seq);
}

/// Standard complex Gaussian, E|w|^2 = 1.
template <class Engine>
cplx complex_normal(Engine& eng) {
  std::normal_distribution<double> n(0.0, std::sqrt(0.5));
  const double re = n(eng);
  const double im = n(eng);
  return {re, im};
}

template <class Engine>
Vector complex_normal_vector(Engine& eng, Eigen::Index n) {
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = complex_normal(eng);
  return v;
}

template <class Engine>
Matrix complex_normal_matrix(Engine& eng, Eigen::Index rows, Eigen::Index cols) {
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = complex_normal(eng);
  return m;
}

/// Uniform point on the unit sphere of C^n (normalized complex Gaussian).
template <class Engine>
Vector random_unit_vector(Engine& eng, Eigen::Index n) {
  Vector v;
  do {
    v = complex_normal_vector(eng, n);
  } while (v.norm() == 0.0);
  return v / v.norm();
}

/// Uniform point in the ball of radius `cap` in C^n.
template <class Engine>
Vector random_ball_point(Engine& eng, Eigen::Index n, double cap) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double radius = cap * std::pow(u(eng), 1.0 / (2.0 * static_cast<double>(n)));
  return radius * random_unit_vector(eng, n);
}

/// Haar-distributed unitary via QR of a Gaussian matrix with phase fix.
template <class Engine>
Matrix random_unitary(Engine& eng, Eigen::Index n) {
  Matrix g = complex_normal_matrix(eng, n, n);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i) {
    const cplx d = r(i, i);
    const double a = std::abs(d);
    if (a > 0.0) q.col(i) *= d / a;
  }
  return q;
}

}  // namespace herglotz

#endif  // HERGLOTZ_RANDOM_HPP
