#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "herglotz/pairing.hpp"
#include "oracles.hpp"

using namespace herglotz;

namespace {

TruncatedSeries z(std::size_t d, int N, std::size_t j) { return TruncatedSeries::coordinate(d, N, j); }

Point unit(std::size_t d, std::size_t j) {
  Point p = Point::Zero(static_cast<Eigen::Index>(d));
  p[static_cast<Eigen::Index>(j)] = 1.0;
  return p;
}

AtomicMeasure random_boundary_measure(std::mt19937_64& eng, std::size_t d, int atoms) {
  AtomicMeasure mu;
  std::uniform_real_distribution<double> u(0.1, 1.0);
  for (int j = 0; j < atoms; ++j) {
    mu.points.push_back(oracle::random_point(eng, d, 1.0));
    mu.weights.push_back(u(eng));
  }
  return mu;
}

}  // namespace

TEST(Pairing, QrExamples) {
  const auto c = TruncatedSeries::constant(2, 4, 1.0);
  for (double r : default_r_grid()) {
    EXPECT_NEAR(std::abs(qr_pair(c, c, r) - 2.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(qr_pair(z(2, 4, 0), z(2, 4, 0), r) - r), 0.0, 1e-15);
    const auto m = z(2, 4, 0) * z(2, 4, 1);
    EXPECT_NEAR(std::abs(qr_pair(m, m, r) - r * r / 2.0), 0.0, 1e-15);
  }
}

TEST(Pairing, QrGuards) {
  const auto f = z(2, 3, 0);
  EXPECT_THROW(qr_pair(f, z(3, 3, 0), 0.5), DimensionMismatch);
  EXPECT_THROW(qr_pair(f, f, 1.0), DomainError);
  EXPECT_THROW(qr_pair(f, f, -0.1), DomainError);
  EXPECT_NO_THROW(qr_pair(f, dilate(f, 0.5), 1.0));
}

TEST(Pairing, DefaultGrid) {
  const auto g = default_r_grid();
  ASSERT_EQ(g.size(), 20u);
  EXPECT_NEAR(g.front(), 0.05, 1e-15);
  EXPECT_NEAR(g[18], 0.95, 1e-15);
  EXPECT_EQ(g.back(), 0.99);
}

TEST(Pairing, HermitianAndDilationIdentity) {
  std::mt19937_64 eng(61);
  for (int t = 0; t < 40; ++t) {
    const std::size_t d = 1 + static_cast<std::size_t>(t % 3);
    const int N = 1 + t % 8;
    const auto f = oracle::random_series(eng, d, N);
    const auto g = oracle::random_series(eng, d, N);
    for (double r : {0.1, 0.5, 0.99}) {
      EXPECT_EQ(qr_pair(f, g, r), std::conj(qr_pair(g, f, r)));
      const double s = std::sqrt(r);
      const cplx rhs = h2d_inner_series(dilate(f, s), dilate(g, s)) + f.constant_term() * std::conj(g.constant_term());
      EXPECT_NEAR(std::abs(qr_pair(f, g, r) - rhs), 0.0, 1e-12 * (1.0 + std::abs(rhs)));
    }
  }
}

TEST(Pairing, GradeTailsAreGeometric) {
  // For bounded coefficients the grade-k contribution is at most C * r^k times the number of terms.
  std::mt19937_64 eng(67);
  const auto f = oracle::random_series(eng, 2, 16);
  const auto g = oracle::random_series(eng, 2, 16);
  const double r = 0.6;
  for (int k = 5; k <= 16; ++k) {
    const double inc = std::abs(qr_pair(f.truncated(k), g.truncated(k), r) - qr_pair(f.truncated(k - 1), g.truncated(k - 1), r));
    const double bound = std::pow(r, k) * f.max_abs() * g.max_abs() * (k + 1);
    EXPECT_LE(inc, bound);
  }
}

TEST(Pairing, SeriesInnerProductExamples) {
  const auto m = z(2, 3, 0) * z(2, 3, 1);
  EXPECT_DOUBLE_EQ(h2d_inner_series(m, m).real(), 0.5);
  const auto one = TruncatedSeries::constant(2, 3, 1.0);
  EXPECT_DOUBLE_EQ(h2d_inner_series(one, one).real(), 1.0);
  EXPECT_EQ(h2d_inner_series(z(2, 3, 0) * z(2, 3, 0), m), cplx(0.0));
  EXPECT_THROW(h2d_inner_series(m, m.truncated(4)), DimensionMismatch);
}

TEST(Pairing, SeriesInnerProductMatchesMonomialNorms) {
  for (std::size_t d = 1; d <= 4; ++d)
    for (const MultiIndex& a : enumerate_multiindices(d, 6)) {
      TruncatedSeries f(d, 6);
      f.set(a, 1.0);
      EXPECT_NEAR(h2d_inner_series(f, f).real(), oracle::monomial_norm_sq(a.exponents()), 1e-14);
    }
}

TEST(Pairing, GaussLegendre) {
  std::vector<double> x, w;
  gauss_legendre(64, x, w);
  double s = 0.0, s2 = 0.0, s63 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += w[i];
    s2 += w[i] * x[i] * x[i];
    s63 += w[i] * std::pow(0.5 * (x[i] + 1.0), 126);
  }
  EXPECT_NEAR(s, 2.0, 1e-14);
  EXPECT_NEAR(s2, 2.0 / 3.0, 1e-14);
  EXPECT_NEAR(0.5 * s63, 1.0 / 127.0, 1e-14);
  gauss_legendre(1, x, w);
  EXPECT_NEAR(x[0], 0.0, 1e-15);
  EXPECT_NEAR(w[0], 2.0, 1e-15);
  EXPECT_THROW(gauss_legendre(0, x, w), DomainError);
}

TEST(Pairing, IntegralInnerProductExamples) {
  const auto one = TruncatedSeries::constant(2, 3, 1.0);
  const Estimate e1 = h2d_inner_integral(one, one);
  EXPECT_NEAR(std::abs(e1.value - 1.0), 0.0, 1e-14);

  const Estimate ez = h2d_inner_integral(z(2, 3, 0), z(2, 3, 0));
  EXPECT_LE(std::abs(ez.value - 1.0), 3.0 * ez.std_error + 1e-12);

  const auto m = z(2, 3, 0) * z(2, 3, 1);
  const Estimate em = h2d_inner_integral(m, m);
  EXPECT_LE(std::abs(em.value - 0.5), 3.0 * em.std_error + 1e-12);
  EXPECT_GT(em.std_error, 0.0);
}

TEST(Pairing, IntegralInnerProductOneVariableIsExact) {
  // On the circle every direction gives the same grade values, so the estimate is exact.
  std::mt19937_64 eng(71);
  const auto f = oracle::random_series(eng, 1, 6);
  const auto g = oracle::random_series(eng, 1, 6);
  const Estimate e = h2d_inner_integral(f, g, {64, 100, 5});
  EXPECT_NEAR(std::abs(e.value - h2d_inner_series(f, g)), 0.0, 1e-12);
}

TEST(Pairing, IntegralInnerProductDeterministic) {
  std::mt19937_64 eng(73);
  const auto f = oracle::random_series(eng, 3, 4);
  const Estimate a = h2d_inner_integral(f, f, {64, 5000, 9});
  const Estimate b = h2d_inner_integral(f, f, {64, 5000, 9});
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.std_error, b.std_error);
  EXPECT_THROW(h2d_inner_integral(f, f, {0, 10, 1}), DomainError);
}

TEST(Pairing, HerglotzOfMeasureExamples) {
  const std::size_t d = 2;
  Point zeta(2);
  zeta << cplx(0.6, 0.0), cplx(0.0, 0.8);
  const auto h = herglotz_of_measure(AtomicMeasure::dirac(zeta), 0.0, 8);
  std::mt19937_64 eng(79);
  for (int t = 0; t < 10; ++t) {
    const Point x = oracle::random_point(eng, d, 0.5);
    const cplx s = inner(x, zeta);
    cplx want = 1.0, p = 1.0;
    for (int k = 1; k <= 8; ++k) {
      p *= s;
      want += 2.0 * p;
    }
    EXPECT_NEAR(std::abs(evaluate(h, x) - want), 0.0, 1e-13);
  }
  EXPECT_FALSE(h.analytic_past_boundary());

  const AtomicMeasure empty;
  const auto c = herglotz_of_measure(empty, 0.7, 4, KernelNormalization::full, 3);
  EXPECT_EQ(c[0], cplx(0.0, 0.7));
  for (std::size_t i = 1; i < c.size(); ++i) EXPECT_EQ(c[i], cplx(0.0));
  EXPECT_THROW(herglotz_of_measure(empty, 0.0, 4), DomainError);
}

TEST(Pairing, HerglotzOfMeasureMatchesClosedForm) {
  std::mt19937_64 eng(83);
  const auto mu = random_boundary_measure(eng, 3, 5);
  const auto g = herglotz_of_measure(mu, 0.3, 16);
  for (int t = 0; t < 5; ++t) {
    const Point x = oracle::random_point(eng, 3, 0.3);
    // Geometric tail of the degree-16 truncation.
    const double rho = x.norm();
    const double tail = 2.0 * mu.mass() * std::pow(rho, 17) / (1.0 - rho);
    EXPECT_NEAR(std::abs(evaluate(g, x) - herglotz_of_measure_at(mu, 0.3, x)), 0.0, tail + 1e-13);
  }
}

TEST(Pairing, ReproducingIdentityForInteriorDirac) {
  std::mt19937_64 eng(89);
  for (int t = 0; t < 20; ++t) {
    const std::size_t d = 1 + static_cast<std::size_t>(t % 3);
    const auto f = oracle::random_series(eng, d, 6);
    const Point w0 = oracle::random_point(eng, d, 0.8);
    const auto g = herglotz_of_measure(AtomicMeasure::dirac(w0, 1.0, Support::interior), 0.0, 6, KernelNormalization::half);
    EXPECT_TRUE(g.analytic_past_boundary());
    EXPECT_NEAR(std::abs(qr_pair(f, g, 1.0) - oracle::naive_eval(f, w0)), 0.0, 1e-10);
  }
}

TEST(Pairing, MeasureValidation) {
  EXPECT_THROW(AtomicMeasure::dirac(0.5 * unit(2, 0)), DomainError);
  EXPECT_THROW(AtomicMeasure::dirac(unit(2, 0), 1.0, Support::interior), DomainError);
  EXPECT_THROW(AtomicMeasure::dirac(unit(2, 0), -1.0), DomainError);
  EXPECT_NO_THROW(AtomicMeasure::dirac(0.5 * unit(2, 0), 1.0, Support::interior));
  AtomicMeasure mixed;
  mixed.points = {unit(2, 0), unit(3, 0)};
  mixed.weights = {1.0, 1.0};
  EXPECT_THROW(mixed.validate(), Error);
  AtomicMeasure short_w;
  short_w.points = {unit(2, 0)};
  EXPECT_THROW(short_w.validate(), Error);
}

TEST(Pairing, PairingVsMeasureCheck) {
  const auto one = TruncatedSeries::constant(2, 4, 1.0);
  EXPECT_NEAR(pairing_vs_measure_check(one, AtomicMeasure::dirac(unit(2, 0)), 0.7), 0.0, 1e-15);
  EXPECT_LE(pairing_vs_measure_check(z(2, 4, 0), AtomicMeasure::dirac(unit(2, 0)), 0.5), 1e-12);

  std::mt19937_64 eng(97);
  for (int t = 0; t < 20; ++t) {
    const auto f = oracle::random_series(eng, 3, 6);
    const auto mu = random_boundary_measure(eng, 3, 5);
    double norm = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) norm = std::max(norm, std::abs(f[i]));
    for (double r : default_r_grid()) EXPECT_LE(pairing_vs_measure_check(f, mu, r), 1e-10 * (1.0 + mu.mass()) * norm);
  }
}
