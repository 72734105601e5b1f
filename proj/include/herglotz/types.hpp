#ifndef HERGLOTZ_TYPES_HPP
#define HERGLOTZ_TYPES_HPP

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace herglotz {

using cplx = std::complex<double>;
using Point = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Anything that can be evaluated at a point of the ball.
using ScalarFunction = std::function<cplx(const Point&)>;

/// <z, w> = sum_j z_j conj(w_j).
inline cplx inner(const Point& z, const Point& w) { return w.dot(z); }

}  // namespace herglotz

#endif  // HERGLOTZ_TYPES_HPP
