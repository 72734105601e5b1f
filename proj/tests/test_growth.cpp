#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "herglotz/classes.hpp"
#include "herglotz/growth.hpp"
#include "oracles.hpp"

using namespace herglotz;

namespace {

Point e1(std::size_t d) {
  Point p = Point::Zero(static_cast<Eigen::Index>(d));
  p[0] = 1.0;
  return p;
}

Evaluable kernel_e1(std::size_t d) {
  return {[](const Point& x) { return (1.0 + x[0]) / (1.0 - x[0]); }, d, {e1(d)}};
}

}  // namespace

TEST(Growth, SphereSample) {
  const auto s = sphere_sample(3, 3000, 4);
  for (const Point& p : s) EXPECT_NEAR(p.norm(), 1.0, 1e-14);
  const auto t = sphere_sample(3, 1000, 4);
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_EQ((s[i] - t[i]).norm(), 0.0);
  for (const Point& p : sphere_sample(1, 50, 1)) EXPECT_NEAR(std::abs(p[0]), 1.0, 1e-15);
  EXPECT_THROW(sphere_sample(2, 0, 1), DomainError);
}

TEST(Growth, SphereSampleMoment) {
  for (std::size_t d : {1u, 2u, 3u, 4u}) {
    const auto s = sphere_sample(d, 100000, 7 + d);
    double m = 0.0, m2 = 0.0;
    for (const Point& p : s) {
      const double v = std::norm(p[0]);
      m += v;
      m2 += v * v;
    }
    const double n = static_cast<double>(s.size());
    m /= n;
    const double se = std::sqrt(std::max(0.0, m2 / n - m * m) / n);
    EXPECT_LE(std::abs(m - 1.0 / static_cast<double>(d)), 3.0 * se + 1e-15) << "d=" << d;
  }
}

TEST(Growth, ConstantMeanIsExact) {
  const Evaluable one{[](const Point&) { return cplx(1.0); }, 2, {}};
  const auto m = hp_radial_mean(one, 2.5, 0.7, 5000, 3);
  EXPECT_EQ(m.value, 1.0);
  EXPECT_EQ(m.std_error, 0.0);
  EXPECT_EQ(m.samples, 5000u);
  const auto g = growth_profile(one, 1.0, default_growth_grid(), 2000, 1);
  EXPECT_EQ(g.verdict, "bounded");
  EXPECT_EQ(g.slope, 0.0);
  for (double v : g.means) EXPECT_EQ(v, 1.0);
}

TEST(Growth, Guards) {
  const auto f = kernel_e1(2);
  EXPECT_THROW(hp_radial_mean(f, 0.0, 0.5, 100, 1), DomainError);
  EXPECT_THROW(hp_radial_mean(f, 1.0, 1.0, 100, 1), DomainError);
  EXPECT_THROW(hp_radial_mean(f, 1.0, 0.5, 1, 1), DomainError);
  EXPECT_THROW(growth_profile(f, 1.0, {0.5}, 100, 1), DomainError);
  EXPECT_THROW(growth_profile(f, 1.0, {0.9, 0.5}, 100, 1), DomainError);
}

TEST(Growth, MatchesPlanarQuadratureAtModerateRadius) {
  // For d = 2, zeta_1 is uniform on the unit disk, so M(r) = (1/pi) int_D |h(r w)| dA(w).
  const double r = 0.9;
  double exact = 0.0;
  const int nr = 400, nt = 800;
  for (int i = 0; i < nr; ++i) {
    const double rho = (i + 0.5) / nr;
    for (int j = 0; j < nt; ++j) {
      const cplx w = std::polar(r * rho, 2.0 * std::numbers::pi * (j + 0.5) / nt);
      exact += std::abs((1.0 + w) / (1.0 - w)) * rho;
    }
  }
  exact *= 2.0 / (nr * nt);
  EXPECT_NEAR(exact, 1.5248, 2e-3);
  const auto m = hp_radial_mean(kernel_e1(2), 1.0, r, 200000, 13);
  EXPECT_LE(std::abs(m.value - exact), 3.0 * m.std_error + 2e-3);
}

TEST(Growth, KernelP1BoundedP3Divergent) {
  const auto p1 = growth_profile(kernel_e1(2), 1.0, {0.5, 0.9, 0.99, 0.999}, 200000, 21);
  EXPECT_EQ(p1.verdict, "bounded");
  EXPECT_LE(p1.means.back() / p1.means[1], 2.0);

  const auto p3 = growth_profile(kernel_e1(2), 3.0, {0.5, 0.9, 0.99, 0.999}, 200000, 21);
  EXPECT_NE(p3.verdict, "bounded");
  EXPECT_GT(p3.slope, 0.1);
}

TEST(Growth, MonotoneInPWhenModulusAtLeastOne) {
  // |h_e1| >= 1 wherever Re x_1 >= 0, not everywhere; use |f| = |h| + 1 instead.
  const Evaluable f{[](const Point& x) { return 1.0 + std::abs((1.0 + x[0]) / (1.0 - x[0])); }, 2, {}};
  double prev = 0.0;
  for (double p : {0.5, 1.0, 1.5, 2.0}) {
    const auto m = hp_radial_mean(f, p, 0.9, 50000, 5);
    EXPECT_GE(m.value, prev - 3.0 * m.std_error);
    prev = m.value;
  }
}

TEST(Growth, RotationInvariance) {
  std::mt19937_64 eng(211);
  const auto U = random_unitary(eng, 2);
  const Evaluable f = kernel_e1(2);
  const Evaluable g{[U](const Point& x) {
                      const Point y = U * x;
                      return (1.0 + y[0]) / (1.0 - y[0]);
                    },
                    2, {}};
  const auto a = hp_radial_mean(f, 1.0, 0.9, 100000, 31);
  const auto b = hp_radial_mean(g, 1.0, 0.9, 100000, 37);
  EXPECT_LE(std::abs(a.value - b.value), 3.0 * std::hypot(a.std_error, b.std_error));
}

TEST(Growth, ClampedSamplesAreCounted) {
  const Evaluable f{[](const Point&) { return cplx(std::numeric_limits<double>::infinity()); }, 2, {}};
  EXPECT_THROW(hp_radial_mean(f, 1.0, 0.5, 100, 1), DomainError);
  int calls = 0;
  const Evaluable g{[&calls](const Point&) { return ++calls % 2 ? cplx(1.0) : cplx(std::nan("")); }, 2, {}};
  const auto m = hp_radial_mean(g, 1.0, 0.5, 1000, 1);
  EXPECT_EQ(m.clamped, 500u);
  EXPECT_EQ(m.samples, 500u);
  EXPECT_EQ(m.value, 1.0);
}

TEST(Growth, SplusSamplesBounded) {
  int bounded = 0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto m = generate_member(PositiveClass::S, 8000 + s);
    const Evaluable f{[m](const Point& x) { return m.evaluate(x); }, 2, {}};
    bounded += growth_profile(f, 1.0, default_growth_grid(), 5000, s).verdict == "bounded";
  }
  EXPECT_EQ(bounded, 10);
}

TEST(Growth, ComposedSchurBounded) {
  std::mt19937_64 eng(223);
  // phi = a z_1 + b z_2 with |a|^2 + |b|^2 < 1 is a Schur multiplier; g = (1+phi)/(1-phi).
  const cplx a(0.5, 0.2), b(0.1, -0.6);
  TruncatedSeries phi(2, 16);
  phi.set(MultiIndex({1, 0}), a);
  phi.set(MultiIndex({0, 1}), b);
  TruncatedSeries h(1, 16);
  h[0] = 1.0;
  for (int k = 1; k <= 16; ++k) h[static_cast<std::size_t>(k)] = 2.0;
  const auto g = compose_univariate(h, phi);
  const Evaluable ev{[a, b](const Point& x) {
                       const cplx p = a * x[0] + b * x[1];
                       return (1.0 + p) / (1.0 - p);
                     },
                     2, {}};
  const Point x = oracle::random_point(eng, 2, 0.3);
  EXPECT_NEAR(std::abs(evaluate(g, x) - ev.f(x)), 0.0, 1e-8);
  EXPECT_EQ(growth_profile(ev, 1.0, default_growth_grid(), 20000, 3).verdict, "bounded");
}

TEST(Growth, DeterministicAcrossThreadCounts) {
  const auto f = kernel_e1(2);
  set_threads(1);
  const auto a = hp_radial_mean(f, 1.0, 0.99, 20000, 77);
  set_threads(4);
  const auto b = hp_radial_mean(f, 1.0, 0.99, 20000, 77);
  set_threads(1);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.std_error, b.std_error);
}
