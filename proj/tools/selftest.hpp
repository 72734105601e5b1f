#ifndef HERGLOTZ_TOOLS_SELFTEST_HPP
#define HERGLOTZ_TOOLS_SELFTEST_HPP

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "herglotz/herglotz.hpp"
#include "herglotz/json_io.hpp"

namespace herglotz::cli {

struct SelfCheck {
  std::string name;
  std::function<bool()> run;
};

namespace st {

inline TruncatedSeries z(std::size_t d, int N, std::size_t j) { return TruncatedSeries::coordinate(d, N, j); }
inline TruncatedSeries c(std::size_t d, int N, cplx v) { return TruncatedSeries::constant(d, N, v); }

inline Point pt(cplx a, cplx b) {
  Point p(2);
  p << a, b;
  return p;
}

inline double dist(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.dim() != b.dim() || a.degree() != b.degree()) return std::numeric_limits<double>::infinity();
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double dist(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

inline TruncatedSeries seeded_series(std::size_t d, int N, std::uint64_t seed) {
  auto eng = stream_engine(seed, 0);
  TruncatedSeries f(d, N);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = complex_normal(eng);
  return f;
}

// Polynomial with coefficient l1 norm `l1`, hence |phi| <= l1 on the ball.
inline TruncatedSeries schur_polynomial(std::size_t d, int N, std::uint64_t seed, double l1) {
  TruncatedSeries f = seeded_series(d, N, seed);
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += std::abs(f[i]);
  return cplx(l1 / s) * f;
}

inline TruncatedSeries kernel_1d(int N) {
  TruncatedSeries h(1, N);
  h[0] = 1.0;
  for (int k = 1; k <= N; ++k) h[static_cast<std::size_t>(k)] = 2.0;
  return h;
}

}  // namespace st

inline std::vector<SelfCheck> selftest_checks() {
  using namespace st;
  const Point zeta = pt(0.6, cplx(0.0, 0.8));
  const Point e1 = pt(1.0, 0.0);
  std::vector<SelfCheck> v;

  // multi-indices and weights
  v.push_back({"enumerate d=1 N=2", [] {
                 const auto a = enumerate_multiindices(1, 2);
                 return a.size() == 3 && a[0] == MultiIndex({0}) && a[1] == MultiIndex({1}) && a[2] == MultiIndex({2});
               }});
  v.push_back({"enumerate d=2 N=1 graded-lex", [] {
                 const auto a = enumerate_multiindices(2, 1);
                 return a.size() == 3 && a[0] == MultiIndex({0, 0}) && a[1] == MultiIndex({1, 0}) && a[2] == MultiIndex({0, 1});
               }});
  v.push_back({"enumerate d=2 N=2 size 6", [] { return enumerate_multiindices(2, 2).size() == 6; }});
  v.push_back({"weight (1,1) = 2", [] { return weight(MultiIndex({1, 1})) == 2; }});
  v.push_back({"weight (3,0) = 1", [] { return weight(MultiIndex({3, 0})) == 1; }});

  // series arithmetic
  v.push_back({"(1+z1)(1-z1) = 1 - z1^2", [] {
                 const auto p = (c(2, 2, 1.0) + z(2, 2, 0)) * (c(2, 2, 1.0) - z(2, 2, 0));
                 return dist(p, c(2, 2, 1.0) - z(2, 2, 0) * z(2, 2, 0)) == 0.0;
               }});
  v.push_back({"add z1 + z2", [] {
                 const auto s = add(z(2, 3, 0), z(2, 3, 1));
                 return s.coeff(MultiIndex({1, 0})) == 1.0 && s.coeff(MultiIndex({0, 1})) == 1.0 && s.max_abs() == 1.0;
               }});
  v.push_back({"dilate z1z2 by r", [] {
                 const auto m = z(2, 3, 0) * z(2, 3, 1);
                 return dist(dilate(m, 0.3), cplx(0.09) * m) < 1e-16;
               }});
  v.push_back({"dilate by 1 is identity", [] {
                 const auto f = seeded_series(3, 5, 1);
                 return dist(dilate(f, 1.0), f) == 0.0;
               }});
  v.push_back({"dilation semigroup", [] {
                 const auto f = seeded_series(3, 6, 2);
                 return dist(dilate(dilate(f, 0.7), 0.4), dilate(f, 0.28)) < 1e-14;
               }});
  v.push_back({"reflect i z1 = -i z1", [] {
                 return dist(reflect(cplx(0.0, 1.0) * z(2, 2, 0)), cplx(0.0, -1.0) * z(2, 2, 0)) == 0.0;
               }});
  v.push_back({"reflect is an involution", [] {
                 const auto f = seeded_series(2, 6, 3);
                 return dist(reflect(reflect(f)), f) == 0.0;
               }});
  v.push_back({"reflect fixes real coefficients", [] {
                 auto f = seeded_series(2, 6, 4);
                 for (std::size_t i = 0; i < f.size(); ++i) f[i] = f[i].real();
                 return dist(reflect(f), f) == 0.0;
               }});
  v.push_back({"evaluate 1+z1 at (0.5,0)", [] {
                 return std::abs(evaluate(c(2, 2, 1.0) + z(2, 2, 0), pt(0.5, 0.0)) - 1.5) < 1e-15;
               }});
  v.push_back({"evaluate at 0 gives c0", [] {
                 const auto f = seeded_series(3, 5, 5);
                 return evaluate(f, Point::Zero(3)) == f[0];
               }});
  v.push_back({"radial derivative of z1z2", [] {
                 const auto m = z(2, 3, 0) * z(2, 3, 1);
                 return dist(radial_derivative(m), cplx(2.0) * m) == 0.0;
               }});
  v.push_back({"radial derivative of a constant", [] { return radial_derivative(c(2, 3, 4.0)).max_abs() == 0.0; }});
  v.push_back({"Cayley of 0 is 1", [] {
                 return dist(cayley(c(2, 5, 0.0), CayleyDirection::schur_to_herglotz), c(2, 5, 1.0)) == 0.0;
               }});
  v.push_back({"Cayley of <z,zeta> is h_zeta", [zeta] {
                 TruncatedSeries phi(2, 8);
                 phi.set(MultiIndex({1, 0}), std::conj(zeta[0]));
                 phi.set(MultiIndex({0, 1}), std::conj(zeta[1]));
                 return dist(cayley(phi, CayleyDirection::schur_to_herglotz), extreme_h(zeta, 8)) < 1e-12;
               }});
  v.push_back({"Cayley round trip", [] {
                 for (std::uint64_t s = 0; s < 10; ++s) {
                   const auto phi = schur_polynomial(2, 8, 10 + s, 0.9);
                   const auto back =
                       cayley(cayley(phi, CayleyDirection::schur_to_herglotz), CayleyDirection::herglotz_to_schur);
                   if (dist(back, phi) > 1e-12) return false;
                 }
                 return true;
               }});
  v.push_back({"compose with identity", [] {
                 TruncatedSeries id(1, 6);
                 id[1] = 1.0;
                 const auto phi = schur_polynomial(2, 6, 6, 0.9);
                 return dist(compose_univariate(id, phi), phi) < 1e-14;
               }});
  v.push_back({"compose kernel with z1", [] {
                 TruncatedSeries want(2, 6);
                 want[0] = 1.0;
                 for (int k = 1; k <= 6; ++k) want.set(MultiIndex({k, 0}), 2.0);
                 return dist(compose_univariate(kernel_1d(6), z(2, 6, 0)), want) < 1e-14;
               }});

  // pairing and inner products
  v.push_back({"Q_r(1,1) = 2", [] {
                 for (double r : default_r_grid())
                   if (std::abs(qr_pair(c(2, 3, 1.0), c(2, 3, 1.0), r) - 2.0) > 1e-15) return false;
                 return true;
               }});
  v.push_back({"Q_r(z1,z1) = r", [] {
                 for (double r : default_r_grid())
                   if (std::abs(qr_pair(z(2, 3, 0), z(2, 3, 0), r) - r) > 1e-15) return false;
                 return true;
               }});
  v.push_back({"Q_r(z1z2,z1z2) = r^2/2", [] {
                 const auto m = z(2, 3, 0) * z(2, 3, 1);
                 for (double r : default_r_grid())
                   if (std::abs(qr_pair(m, m, r) - r * r / 2.0) > 1e-15) return false;
                 return true;
               }});
  v.push_back({"<z1z2,z1z2> = 1/2", [] {
                 const auto m = z(2, 3, 0) * z(2, 3, 1);
                 return h2d_inner_series(m, m) == 0.5;
               }});
  v.push_back({"<1,1> = 1", [] { return h2d_inner_series(c(2, 3, 1.0), c(2, 3, 1.0)) == 1.0; }});
  v.push_back({"<z1^2,z1z2> = 0", [] {
                 return h2d_inner_series(z(2, 3, 0) * z(2, 3, 0), z(2, 3, 0) * z(2, 3, 1)) == 0.0;
               }});
  v.push_back({"integral form <1,1> = 1", [] {
                 return std::abs(h2d_inner_integral(c(2, 3, 1.0), c(2, 3, 1.0)).value - 1.0) < 1e-14;
               }});
  v.push_back({"integral form <z1z2,z1z2> = 1/2", [] {
                 const auto m = z(2, 3, 0) * z(2, 3, 1);
                 const Estimate e = h2d_inner_integral(m, m);
                 return std::abs(e.value - 0.5) <= 3.0 * e.std_error;
               }});
  v.push_back({"measure transform of a point mass is h_zeta", [zeta] {
                 return dist(herglotz_of_measure(AtomicMeasure::dirac(zeta), 0.0, 10), extreme_h(zeta, 10)) < 1e-12;
               }});
  v.push_back({"empty measure gives i t", [] {
                 const auto g = herglotz_of_measure(AtomicMeasure{}, 0.7, 4, KernelNormalization::full, 2);
                 return dist(g, c(2, 4, cplx(0.0, 0.7))) == 0.0;
               }});
  v.push_back({"half kernel reproduces point values", [] {
                 const Point w0 = pt(cplx(0.3, -0.2), cplx(0.1, 0.5));
                 const auto g = herglotz_of_measure(AtomicMeasure::dirac(w0, 1.0, Support::interior), 0.0, 6,
                                                    KernelNormalization::half);
                 const auto f = seeded_series(2, 6, 7);
                 return std::abs(qr_pair(f, g, 1.0) - evaluate(f, w0)) < 1e-10;
               }});
  v.push_back({"measure check residual for f = 1", [zeta] {
                 return pairing_vs_measure_check(c(2, 4, 1.0), AtomicMeasure::dirac(zeta), 0.5) < 1e-15;
               }});

  // operator tuples
  v.push_back({"zero tuple is a row contraction", [] {
                 const auto r = is_row_contraction(OperatorTuple({Matrix::Zero(2, 2), Matrix::Zero(2, 2)}));
                 return r.holds && std::abs(r.value - 1.0) < 1e-15;
               }});
  v.push_back({"(1/sqrt2, 1/sqrt2) is a row contraction with defect 0", [] {
                 const auto r = is_row_contraction(OperatorTuple::scalar(pt(std::sqrt(0.5), std::sqrt(0.5))));
                 return r.holds && std::abs(r.value) < 1e-15;
               }});
  v.push_back({"row contractions are weak row contractions", [] {
                 for (std::uint64_t s = 0; s < 5; ++s)
                   if (!is_weak_row_contraction(random_row_contraction(2, 3, 20 + s)).holds) return false;
                 return true;
               }});
  v.push_back({"diagonal tuples commute", [] {
                 Matrix a = Matrix::Zero(3, 3), b = Matrix::Zero(3, 3);
                 a.diagonal() << 0.1, cplx(0.0, 0.4), -0.3;
                 b.diagonal() << 0.5, 0.2, cplx(0.3, 0.3);
                 return is_commuting(OperatorTuple({a, b})).holds;
               }});
  v.push_back({"d=1 tuples commute", [] { return is_commuting(random_row_contraction(1, 4, 9)).holds; }});
  v.push_back({"H(0,T) = I", [] {
                 const auto T = random_row_contraction(2, 3, 11);
                 return dist(herglotz_kernel(Point::Zero(2), T), Matrix::Identity(3, 3)) < 1e-15;
               }});
  v.push_back({"H(0.5, (1)) = 3", [] {
                 Point one(1), half(1);
                 one << 1.0;
                 half << 0.5;
                 return std::abs(herglotz_kernel(half, OperatorTuple::scalar(one))(0, 0) - 3.0) < 1e-15;
               }});
  v.push_back({"Re H factorization", [] {
                 auto eng = stream_engine(12, 0);
                 for (std::uint64_t s = 0; s < 10; ++s) {
                   const auto T = random_row_contraction(2, 4, 30 + s);
                   const Point x = random_ball_point(eng, 2, 0.95);
                   const Matrix a = re_herglotz_kernel(x, T);
                   if (dist(a, re_herglotz_factored(x, T)) > 1e-12 * (1.0 + a.cwiseAbs().maxCoeff())) return false;
                 }
                 return true;
               }});
  v.push_back({"zero tuple transform is constant 1", [] {
                 Vector xi(2);
                 xi << 0.6, cplx(0.0, 0.8);
                 const HerglotzDatum D{OperatorTuple({Matrix::Zero(2, 2), Matrix::Zero(2, 2)}), xi, 0.0};
                 return std::abs(herglotz_transform(D, pt(0.3, 0.4)) - 1.0) < 1e-15;
               }});
  v.push_back({"scalar tuple conj(zeta) gives h_zeta", [zeta] {
                 Vector xi(1);
                 xi << 1.0;
                 const HerglotzDatum D{OperatorTuple::scalar(zeta.conjugate()), xi, 0.0};
                 const Point x = pt(cplx(0.2, 0.1), cplx(-0.3, 0.4));
                 return std::abs(herglotz_transform(D, x) - extreme_h_at(zeta, x)) < 1e-14;
               }});
  v.push_back({"zero tuple Taylor series is |xi|^2 + i t", [] {
                 Vector xi(2);
                 xi << 1.0, 2.0;
                 const HerglotzDatum D{OperatorTuple({Matrix::Zero(2, 2), Matrix::Zero(2, 2)}), xi, 0.5};
                 return dist(herglotz_taylor(D, 5), c(2, 5, cplx(5.0, 0.5))) < 1e-15;
               }});
  v.push_back({"sym_monomial (1,1) averages orderings", [] {
                 const auto T = random_row_contraction(2, 3, 13);
                 return dist(sym_monomial(MultiIndex({1, 1}), T), 0.5 * (T[0] * T[1] + T[1] * T[0])) < 1e-15;
               }});
  v.push_back({"sym_monomial (2,0) = T1^2", [] {
                 const auto T = random_row_contraction(2, 3, 14);
                 return dist(sym_monomial(MultiIndex({2, 0}), T), T[0] * T[0]) < 1e-15;
               }});
  v.push_back({"sym_monomial on commuting tuples is the product", [] {
                 const auto C = random_commuting_tuple(2, 3, 15, CommutingFamily::diagonal);
                 return dist(sym_monomial(MultiIndex({2, 1}), C), C[0] * C[0] * C[1]) < 1e-14;
               }});
  v.push_back({"sym_poly of z1 + z1z2", [] {
                 const auto T = random_row_contraction(2, 3, 16);
                 const auto p = z(2, 2, 0) + z(2, 2, 0) * z(2, 2, 1);
                 return dist(sym_poly(p, T), T[0] + 0.5 * (T[0] * T[1] + T[1] * T[0])) < 1e-15;
               }});
  v.push_back({"sym_poly of a constant", [] {
                 const auto T = random_row_contraction(2, 3, 17);
                 return dist(sym_poly(c(2, 2, cplx(2.0, -1.0)), T), cplx(2.0, -1.0) * Matrix::Identity(3, 3)) < 1e-15;
               }});
  v.push_back({"sym_poly on commuting tuples is plain evaluation", [] {
                 const auto C = random_commuting_tuple(2, 3, 18, CommutingFamily::diagonal);
                 const auto p = z(2, 2, 0) + z(2, 2, 0) * z(2, 2, 1);
                 return dist(sym_poly(p, C), C[0] + C[0] * C[1]) < 1e-14;
               }});
  v.push_back({"commuting calculus of z1 is T1", [] {
                 const auto C = random_commuting_tuple(2, 3, 19, CommutingFamily::nilpotent);
                 return dist(commuting_calculus(z(2, 3, 0), C), C[0]) < 1e-15;
               }});
  v.push_back({"commuting calculus agrees with sym_poly", [] {
                 const auto C = random_commuting_tuple(2, 4, 21, CommutingFamily::diagonal);
                 const auto p = seeded_series(2, 5, 22);
                 return dist(commuting_calculus(p, C), sym_poly(p, C)) < 1e-12;
               }});

  // Fock space
  v.push_back({"L1 of the vacuum is the word 1", [] {
                 const FockBasis b(2, 3);
                 const auto L = creation_operators(b);
                 return L[0].target(0) == static_cast<std::int64_t>(b.index({0}));
               }});
  v.push_back({"Li* Lj = delta_ij below the top grade", [] {
                 const FockBasis b(2, 4);
                 const auto L = creation_operators(b);
                 const std::size_t low = b.offset(4);
                 for (std::size_t i = 0; i < 2; ++i)
                   for (std::size_t j = 0; j < 2; ++j)
                     for (std::size_t col = 0; col < low; ++col) {
                       Eigen::VectorXd e = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(b.size()));
                       e[static_cast<Eigen::Index>(col)] = 1.0;
                       const Eigen::VectorXd y = L[i].apply_adjoint(L[j].apply(e));
                       Eigen::VectorXd want = Eigen::VectorXd::Zero(y.size());
                       if (i == j) want[static_cast<Eigen::Index>(col)] = 1.0;
                       if ((y - want).cwiseAbs().maxCoeff() != 0.0) return false;
                     }
                 return true;
               }});
  v.push_back({"d=1 shift has unit entries", [] {
                 const auto S = dshift_operators(SymFockBasis(1, 6));
                 for (Eigen::Index k = 0; k < 6; ++k)
                   if (S[0](k + 1, k) != 1.0) return false;
                 return S[0].sum() == 6.0;
               }});
  v.push_back({"S1 e_(0,1) = e_(1,1)/sqrt2", [] {
                 const auto S = dshift_operators(SymFockBasis(2, 3));
                 const auto from = static_cast<Eigen::Index>(graded_rank(MultiIndex({0, 1})));
                 const auto to = static_cast<Eigen::Index>(graded_rank(MultiIndex({1, 1})));
                 return std::abs(S[0](to, from) - std::sqrt(0.5)) < 1e-15 && S[0].col(from).cwiseAbs().sum() == S[0](to, from);
               }});
  v.push_back({"norm of the identity", [] { return std::abs(operator_norm_dense(Eigen::MatrixXd::Identity(5, 5)) - 1.0) < 1e-15; }});
  v.push_back({"norm of a rank-one map", [] {
                 Eigen::VectorXd u(3), w(4);
                 u << 1, 2, 2;
                 w << 1, 1, 1, 1;
                 return std::abs(operator_norm_dense(Eigen::MatrixXd(u * w.transpose())) - 6.0) < 1e-13;
               }});
  v.push_back({"||p(S)|| < sqrt2 at N = 12", [] { return davidson_pitts_shift_norm(12) < 1.41421; }});
  v.push_back({"||p(S)|| < sqrt2 at N = 16", [] { return davidson_pitts_shift_norm(16) < 1.41421; }});
  v.push_back({"||p^sym(L)|| nondecreasing over L = 4..16", [] {
                 double prev = 0.0;
                 for (int L = 4; L <= 16; ++L) {
                   const double n = operator_norm_power(davidson_pitts_calculus_map(FockBasis(2, L))).value;
                   if (n < prev) return false;
                   prev = n;
                 }
                 return true;
               }});
  v.push_back({"Cuntz state of V1", [zeta] { return cuntz_state_word(zeta, {0}, {}) == zeta[0]; }});
  v.push_back({"Cuntz state of I", [zeta] { return cuntz_state_word(zeta, {}, {}) == 1.0; }});
  v.push_back({"Cuntz state of V1 V2*", [zeta] {
                 return std::abs(cuntz_state_word(zeta, {0}, {1}) - zeta[0] * std::conj(zeta[1])) < 1e-16;
               }});
  v.push_back({"Cuntz partial sums at z = 0", [zeta] { return cuntz_state_herglotz(zeta, Point::Zero(2), 10) == 1.0; }});
  v.push_back({"Cuntz partial sums along e1", [e1] {
                 return std::abs(cuntz_state_herglotz(e1, pt(0.5, 0.0), 200) - 3.0) < 1e-14;
               }});

  // positive classes
  v.push_back({"constant kernel is PSD with min-eig 0", [] {
                 const auto r = gram_min_eig("one", [](const Point&, const Point&) { return cplx(1.0); },
                                             random_point_set(2, 25, 1));
                 return r.pass && std::abs(r.min_eig) < 1e-12;
               }});
  v.push_back({"Fantappie kernel is PSD", [] {
                 return gram_min_eig("fantappie", [](const Point& a, const Point& b) { return 1.0 / (1.0 - inner(a, b)); },
                                     random_point_set(3, 25, 2))
                     .pass;
               }});
  v.push_back({"kernel -1 fails with a witness", [] {
                 const auto r = gram_min_eig("minus one", [](const Point&, const Point&) { return cplx(-1.0); },
                                             random_point_set(2, 25, 3));
                 return !r.pass && r.min_eig < 0.0 && r.witness.has_value();
               }});
  v.push_back({"f = 1 passes the S+ test", [] { return splus_test(c(2, 6, 1.0), random_point_set(2, 25, 4)).pass; }});
  v.push_back({"phi = 0 passes the Schur test", [] { return schur_test(c(2, 6, 0.0), random_point_set(2, 25, 5)).pass; }});
  v.push_back({"T = 0 passes the k_T test", [] {
                 return kT_test(OperatorTuple({Matrix::Zero(2, 2), Matrix::Zero(2, 2)}), random_point_set(2, 25, 6)).pass;
               }});
  v.push_back({"one-atom M+ member is h_zeta type", [] {
                 MemberSize one;
                 one.atoms_max = 1;
                 const ClassMember m = generate_member(PositiveClass::M, 7, one);
                 const auto& mu = m.measure()->mu;
                 const Point x = pt(cplx(0.3, 0.1), cplx(0.2, -0.4));
                 return std::abs(m.evaluate(x) - mu.weights[0] * extreme_h_at(mu.points[0], x)) < 1e-14 &&
                        std::abs(m.evaluate(0.5 * x) - mu.weights[0] * extreme_h_at(mu.points[0], 0.5 * x)) < 1e-14;
               }});
  v.push_back({"sweep of 1 against 1 has minimum 2", [] {
                 const ClassMember one{PositiveClass::O, 2, PolynomialForm{c(2, 2, 1.0)}};
                 return std::abs(duality_sweep({one}, {one}).min_re - 2.0) < 1e-15;
               }});
  v.push_back({"h_e1 = 1 + 2 z1 + 2 z1^2 + ...", [e1] {
                 TruncatedSeries want(2, 6);
                 want[0] = 1.0;
                 for (int k = 1; k <= 6; ++k) want.set(MultiIndex({k, 0}), 2.0);
                 return dist(extreme_h(e1, 6), want) == 0.0;
               }});
  v.push_back({"extreme_h matches the point-mass transform", [zeta] {
                 return dist(extreme_h(zeta, 12), herglotz_of_measure(AtomicMeasure::dirac(zeta), 0.0, 12)) < 1e-10;
               }});
  v.push_back({"Schwarz probe finds nothing for z1", [] { return !schwarz_probe(z(2, 4, 0)).violation; }});

  // growth
  v.push_back({"sphere samples have unit norm", [] {
                 for (const Point& p : sphere_sample(3, 2000, 1))
                   if (std::abs(p.norm() - 1.0) > 1e-14) return false;
                 return true;
               }});
  v.push_back({"d=1 sphere samples are unimodular", [] {
                 for (const Point& p : sphere_sample(1, 2000, 2))
                   if (std::abs(std::abs(p[0]) - 1.0) > 1e-14) return false;
                 return true;
               }});
  v.push_back({"radial mean of 1 is 1", [] {
                 const Evaluable one{[](const Point&) { return cplx(1.0); }, 2, {}};
                 return hp_radial_mean(one, 1.0, 0.9, 1000, 3).value == 1.0;
               }});
  v.push_back({"constant function has a flat profile", [] {
                 const Evaluable f{[](const Point&) { return cplx(2.0); }, 2, {}};
                 const auto g = growth_profile(f, 1.0, default_growth_grid(), 1000, 4);
                 return g.slope == 0.0 && g.verdict == "bounded";
               }});
  v.push_back({"kernel composed with a Schur polynomial is bounded at p = 1", [] {
                 const auto phi = schur_polynomial(2, 8, 40, 0.9);
                 const auto g = compose_univariate(kernel_1d(8), phi);
                 const Evaluable f{[g](const Point& x) { return evaluate(g, x); }, 2, {}};
                 return growth_profile(f, 1.0, default_growth_grid(), 20000, 5).verdict == "bounded";
               }});
  return v;
}

}  // namespace herglotz::cli

#endif  // HERGLOTZ_TOOLS_SELFTEST_HPP
