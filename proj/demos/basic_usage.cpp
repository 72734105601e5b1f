// Tour of the library: series, pairings, a Herglotz datum, the Davidson-Pitts
// norms and an H^p growth profile.

#include <cstdio>

#include "herglotz/herglotz.hpp"

using namespace herglotz;

int main() {
  // h_zeta(z) = (1 + <z,zeta>)/(1 - <z,zeta>) as a measure transform and as a datum.
  Point zeta(2);
  zeta << 0.6, cplx(0.0, 0.8);
  const TruncatedSeries h = herglotz_of_measure(AtomicMeasure::dirac(zeta), 0.0, 8);

  Vector xi(1);
  xi << 1.0;
  const HerglotzDatum D{OperatorTuple::scalar(zeta.conjugate()), xi, 0.0};

  Point z(2);
  z << cplx(0.3, 0.1), cplx(-0.2, 0.4);
  std::printf("h_zeta(z): series %.6f%+.6fi, datum %.6f%+.6fi, closed form %.6f%+.6fi\n", evaluate(h, z).real(),
              evaluate(h, z).imag(), herglotz_transform(D, z).real(), herglotz_transform(D, z).imag(),
              extreme_h_at(zeta, z).real(), extreme_h_at(zeta, z).imag());

  // Q_r pairing against a polynomial: equals 2 f(r zeta) for the point mass.
  const auto z1 = TruncatedSeries::coordinate(2, 8, 0);
  const auto f = TruncatedSeries::constant(2, 8, 1.0) + z1 * z1;
  for (double r : {0.25, 0.5, 0.75}) {
    const cplx q = qr_pair(f, h, r);
    std::printf("Q_%.2f(1 + z1^2, h_zeta) = %.6f%+.6fi\n", r, q.real(), q.imag());
  }

  // S+ kernel test for a random row-contraction transform.
  const ClassMember m = generate_member(PositiveClass::S, 42);
  const KernelReport rep = splus_test(*m.datum(), random_point_set(2, kDefaultPointCount, 7));
  std::printf("S+ Gram test: min eig %.3e, tol %.3e, %s\n", rep.min_eig, rep.tol, rep.pass ? "pass" : "fail");

  // Davidson-Pitts: p = z1 + z1 z2 is below sqrt 2 on the d-shift, above it after symmetrization.
  const DavidsonPittsReport dp = davidson_pitts(10, 12);
  std::printf("||p(S)|| = %.6f, ||p^sym(10)|| = %.6f, limit %.6f\n", dp.norm_sym_shift, dp.norm_sym_calculus,
              davidson_pitts_limit());

  // Growth of h_e1 in H^1 and H^3.
  Point e1 = Point::Zero(2);
  e1[0] = 1.0;
  const Evaluable he1{[e1](const Point& x) { return extreme_h_at(e1, x); }, 2, {e1}};
  for (double p : {1.0, 3.0}) {
    const GrowthProfile g = growth_profile(he1, p, default_growth_grid(), p < 2.0 ? 100000 : 2000000, 1);
    std::printf("p = %.0f: means", p);
    for (double v : g.means) std::printf(" %.4g", v);
    std::printf(", slope %.3f, %s\n", g.slope, g.verdict.c_str());
  }
  return 0;
}
