#ifndef HERGLOTZ_CLASSES_HPP
#define HERGLOTZ_CLASSES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "herglotz/errors.hpp"
#include "herglotz/optuple.hpp"
#include "herglotz/pairing.hpp"
#include "herglotz/random.hpp"
#include "herglotz/series.hpp"
#include "herglotz/types.hpp"

namespace herglotz {

// ---------------------------------------------------------------------------
// Point sets and Gram tests

/// Finite sample of the open ball used for kernel positivity tests.
struct PointSet {
  std::vector<Point> points;
  std::uint64_t seed = 0;
  double radius_cap = 0.95;

  std::size_t size() const { return points.size(); }
};

inline constexpr int kDefaultPointCount = 25;

/// Uniform points in the ball of radius `cap`.
inline PointSet random_point_set(std::size_t d, std::size_t count, std::uint64_t seed, double cap = 0.95) {
  if (!(cap > 0.0 && cap < 1.0)) throw DomainError("radius cap must lie in (0, 1)");
  auto eng = stream_engine(seed, 0x9075);
  PointSet ps{{}, seed, cap};
  for (std::size_t i = 0; i < count; ++i) ps.points.push_back(random_ball_point(eng, static_cast<Eigen::Index>(d), cap));
  return ps;
}

/// Points with radii in [r_lo, r_hi]; the first `on_disk` points lie on the
/// slice {(z_1, 0, ..., 0)}.
inline PointSet boundary_biased_point_set(std::size_t d, std::size_t count, std::uint64_t seed, double r_lo = 0.9,
                                          double r_hi = 0.99, std::size_t on_disk = 0) {
  auto eng = stream_engine(seed, 0xB0B0);
  std::uniform_real_distribution<double> rad(r_lo, r_hi);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
  PointSet ps{{}, seed, r_hi};
  for (std::size_t i = 0; i < count; ++i) {
    Point z;
    if (i < on_disk) {
      z = Point::Zero(static_cast<Eigen::Index>(d));
      z[0] = std::polar(rad(eng), ang(eng));
    } else {
      z = rad(eng) * random_unit_vector(eng, static_cast<Eigen::Index>(d));
    }
    ps.points.push_back(std::move(z));
  }
  return ps;
}

/// Outcome of a positive-semidefiniteness test on a finite Gram matrix.
/// A fail certifies a violation; a pass only says none was found on these points.
struct KernelReport {
  std::string kernel;
  std::size_t points = 0;
  double min_eig = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::optional<Vector> witness;  // eigenvector of the negative eigenvalue on fail
};

using ScalarKernel = std::function<cplx(const Point&, const Point&)>;

/// Eigen floor for Gram verdicts: 1e-8 times the mean diagonal magnitude.
inline double gram_tolerance(const Matrix& gram) {
  const double n = static_cast<double>(std::max<Eigen::Index>(1, gram.rows()));
  return 1e-8 * std::max(std::abs(gram.trace().real()) / n, std::numeric_limits<double>::min());
}

/// Smallest eigenvalue of an assembled Hermitian Gram matrix.
inline KernelReport gram_report(std::string name, const Matrix& gram) {
  double scale = 0.0;
  for (Eigen::Index i = 0; i < gram.rows(); ++i)
    for (Eigen::Index j = 0; j < gram.cols(); ++j) scale = std::max(scale, std::abs(gram(i, j)));
  const double herm = (gram - gram.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-10 * (1.0 + scale)) throw DomainError("kernel " + name + " is not Hermitian on the sample");
  const Matrix h = 0.5 * (gram + gram.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  KernelReport rep;
  rep.kernel = std::move(name);
  rep.points = static_cast<std::size_t>(gram.rows());
  rep.min_eig = es.eigenvalues()(0);
  rep.tol = gram_tolerance(gram);
  rep.pass = rep.min_eig >= -rep.tol;
  if (!rep.pass) rep.witness = es.eigenvectors().col(0);
  return rep;
}

/// Assembles [k(z_i, z_j)] and returns its smallest eigenvalue with a verdict.
inline KernelReport gram_min_eig(const std::string& name, const ScalarKernel& k, const PointSet& pts) {
  const auto n = static_cast<Eigen::Index>(pts.size());
  Matrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = k(pts.points[static_cast<std::size_t>(i)], pts.points[static_cast<std::size_t>(j)]);
  return gram_report(name, g);
}

/// (f(z) + conj f(w)) / (1 - <z,w>).
inline KernelReport splus_test(const ScalarFunction& f, const PointSet& pts) {
  const auto n = static_cast<Eigen::Index>(pts.size());
  std::vector<cplx> fv;
  for (const Point& z : pts.points) fv.push_back(f(z));
  Matrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto ii = static_cast<std::size_t>(i), jj = static_cast<std::size_t>(j);
      g(i, j) = (fv[ii] + std::conj(fv[jj])) / (1.0 - inner(pts.points[ii], pts.points[jj]));
    }
  return gram_report("splus", g);
}

inline KernelReport splus_test(const TruncatedSeries& f, const PointSet& pts) {
  return splus_test([&f](const Point& z) { return evaluate(f, z); }, pts);
}

inline KernelReport splus_test(const HerglotzDatum& D, const PointSet& pts) {
  return splus_test([&D](const Point& z) { return herglotz_transform(D, z); }, pts);
}

/// (1 - phi(z) conj phi(w)) / (1 - <z,w>).
inline KernelReport schur_test(const ScalarFunction& phi, const PointSet& pts) {
  const auto n = static_cast<Eigen::Index>(pts.size());
  std::vector<cplx> pv;
  for (const Point& z : pts.points) pv.push_back(phi(z));
  Matrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto ii = static_cast<std::size_t>(i), jj = static_cast<std::size_t>(j);
      g(i, j) = (1.0 - pv[ii] * std::conj(pv[jj])) / (1.0 - inner(pts.points[ii], pts.points[jj]));
    }
  return gram_report("schur", g);
}

inline KernelReport schur_test(const TruncatedSeries& phi, const PointSet& pts) {
  return schur_test([&phi](const Point& z) { return evaluate(phi, z); }, pts);
}

/// <k_T(z,w) eta, eta> with k_T(z,w) = (I - <z,T><w,T>^*)/(1 - <z,w>), tested
/// for `vectors` random unit eta; reports the worst one.
inline KernelReport kT_test(const OperatorTuple& T, const PointSet& pts, int vectors = 16, std::uint64_t seed = 3) {
  auto eng = stream_engine(seed, 0x6B54);
  const auto n = static_cast<Eigen::Index>(pts.size());
  std::vector<Matrix> pencils;
  for (const Point& z : pts.points) pencils.push_back(T.pencil(z));
  KernelReport worst;
  bool first = true;
  for (int v = 0; v < vectors; ++v) {
    const Vector eta = random_unit_vector(eng, T.n());
    std::vector<Vector> adj;
    for (const Matrix& a : pencils) adj.push_back(a.adjoint() * eta);
    Matrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        const auto ii = static_cast<std::size_t>(i), jj = static_cast<std::size_t>(j);
        // eta^* A_z A_w^* eta = <A_w^* eta, A_z^* eta>
        g(i, j) = (1.0 - adj[ii].dot(adj[jj])) / (1.0 - inner(pts.points[ii], pts.points[jj]));
      }
    KernelReport rep = gram_report("kT", g);
    if (first || rep.min_eig < worst.min_eig) worst = std::move(rep);
    first = false;
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Class members

enum class PositiveClass { M, R, S, O };

inline std::string class_name(PositiveClass c) {
  switch (c) {
    case PositiveClass::M: return "M+";
    case PositiveClass::R: return "R+";
    case PositiveClass::S: return "S+";
    case PositiveClass::O: return "O+";
  }
  return "?";
}

/// Herglotz transform of a boundary atomic measure plus i t.
struct MeasureForm {
  AtomicMeasure mu;
  double t = 0.0;
};

/// h_{e_1}(Uz) + h (Uz)_2^2 with U unitary and |h| <= 1/4: positive real part
/// on the ball in d >= 2 but generally outside the Schur-type classes.
struct PerturbedKernelForm {
  Matrix unitary;
  cplx h;
};

/// A polynomial whose non-constant coefficients have l1 norm at most Re c_0.
struct PolynomialForm {
  TruncatedSeries p;
};

struct ClassMember {
  PositiveClass cls = PositiveClass::O;
  std::size_t d = 0;
  std::variant<MeasureForm, HerglotzDatum, PerturbedKernelForm, PolynomialForm> form;

  cplx evaluate(const Point& z) const {
    return std::visit(
        [&](const auto& f) -> cplx {
          using F = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<F, MeasureForm>) {
            return herglotz_of_measure_at(f.mu, f.t, z);
          } else if constexpr (std::is_same_v<F, HerglotzDatum>) {
            return herglotz_transform(f, z);
          } else if constexpr (std::is_same_v<F, PerturbedKernelForm>) {
            const Point w = f.unitary * z;
            return (1.0 + w[0]) / (1.0 - w[0]) + f.h * w[1] * w[1];
          } else {
            return herglotz::evaluate(f.p, z);
          }
        },
        form);
  }

  TruncatedSeries taylor(int N) const {
    return std::visit(
        [&](const auto& f) -> TruncatedSeries {
          using F = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<F, MeasureForm>) {
            return herglotz_of_measure(f.mu, f.t, N, KernelNormalization::full, d);
          } else if constexpr (std::is_same_v<F, HerglotzDatum>) {
            return herglotz_taylor(f, N);
          } else if constexpr (std::is_same_v<F, PerturbedKernelForm>) {
            // w_1 = (Uz)_1 is linear; expand (1+w)/(1-w) and add h w_2^2.
            TruncatedSeries w1(d, N), w2(d, N);
            for (std::size_t j = 0; j < d; ++j) {
              w1.set(MultiIndex::unit(d, j), f.unitary(0, static_cast<Eigen::Index>(j)));
              w2.set(MultiIndex::unit(d, j), f.unitary(1, static_cast<Eigen::Index>(j)));
            }
            TruncatedSeries h1(1, N);
            h1[0] = 1.0;
            for (int k = 1; k <= N; ++k) h1[static_cast<std::size_t>(k)] = 2.0;
            return compose_univariate(h1, w1) + scale(w2 * w2, f.h);
          } else {
            return f.p.truncated(N);
          }
        },
        form);
  }

  const HerglotzDatum* datum() const { return std::get_if<HerglotzDatum>(&form); }
  const MeasureForm* measure() const { return std::get_if<MeasureForm>(&form); }
};

struct MemberSize {
  std::size_t d = 2;
  Eigen::Index n_max = 6;
  std::size_t atoms_max = 8;
  double imag_scale = 0.0;  // imaginary constants drawn from [-imag_scale, imag_scale]
};

namespace detail {

inline HerglotzDatum spherical_datum(const AtomicMeasure& mu, double t) {
  // Diagonal spherical tuple T_j = diag(conj p_{k,j}) with xi_k = sqrt(w_k)
  // reproduces the measure's Herglotz transform.
  const auto n = static_cast<Eigen::Index>(mu.points.size());
  std::vector<Matrix> m(mu.dim(), Matrix::Zero(n, n));
  Vector xi(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Point& p = mu.points[static_cast<std::size_t>(k)];
    for (std::size_t j = 0; j < mu.dim(); ++j) m[j](k, k) = std::conj(p[static_cast<Eigen::Index>(j)]);
    xi[k] = std::sqrt(mu.weights[static_cast<std::size_t>(k)]);
  }
  return {OperatorTuple(std::move(m)), xi, t};
}

}  // namespace detail

/// Same function as a measure member, written as a Herglotz datum over a
/// commuting normal (spherical) tuple.
inline HerglotzDatum as_spherical_datum(const MeasureForm& m) { return detail::spherical_datum(m.mu, m.t); }

/// Random member of a positive class.
///   M+: boundary atomic measure with 1..atoms_max atoms.
///   R+: commuting row contraction (diagonal-conjugated or nilpotent family) and random xi.
///   S+: Gaussian row contraction and random xi.
///   O+: one of an S+ sample, a perturbed boundary kernel (d >= 2) or a
///       positive-real-part polynomial.
inline ClassMember generate_member(PositiveClass cls, std::uint64_t seed, const MemberSize& size = {}) {
  auto eng = stream_engine(seed, 0x3E3B + static_cast<std::uint64_t>(cls));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto draw_t = [&] { return size.imag_scale * (2.0 * u(eng) - 1.0); };
  const auto d = size.d;
  ClassMember out;
  out.cls = cls;
  out.d = d;
  switch (cls) {
    case PositiveClass::M: {
      std::uniform_int_distribution<std::size_t> count(1, size.atoms_max);
      AtomicMeasure mu;
      const std::size_t atoms = count(eng);
      for (std::size_t j = 0; j < atoms; ++j) {
        mu.points.push_back(random_unit_vector(eng, static_cast<Eigen::Index>(d)));
        mu.weights.push_back(0.1 + 0.9 * u(eng));
      }
      mu.validate();
      out.form = MeasureForm{std::move(mu), draw_t()};
      return out;
    }
    case PositiveClass::R: {
      std::uniform_int_distribution<Eigen::Index> nd(2, std::max<Eigen::Index>(2, size.n_max));
      const Eigen::Index n = nd(eng);
      const auto family = u(eng) < 0.5 ? CommutingFamily::diagonal : CommutingFamily::nilpotent;
      OperatorTuple T = random_commuting_tuple(d, n, eng(), family);
      out.form = HerglotzDatum{std::move(T), complex_normal_vector(eng, n), draw_t()};
      return out;
    }
    case PositiveClass::S: {
      std::uniform_int_distribution<Eigen::Index> nd(1, std::max<Eigen::Index>(1, size.n_max));
      const Eigen::Index n = nd(eng);
      OperatorTuple T = random_row_contraction(d, n, eng());
      out.form = HerglotzDatum{std::move(T), complex_normal_vector(eng, n), draw_t()};
      return out;
    }
    case PositiveClass::O: {
      const double pick = u(eng);
      if (pick < 1.0 / 3.0) {
        ClassMember s = generate_member(PositiveClass::S, eng(), size);
        s.cls = PositiveClass::O;
        return s;
      }
      if (pick < 2.0 / 3.0 && d >= 2) {
        const cplx h = std::polar(0.25 * u(eng), 2.0 * std::numbers::pi * u(eng));
        out.form = PerturbedKernelForm{random_unitary(eng, static_cast<Eigen::Index>(d)), h};
        return out;
      }
      // Re p >= c_0 - sum |c_alpha| >= 0 on the ball.
      TruncatedSeries p(d, 4);
      double l1 = 0.0;
      for (std::size_t i = 1; i < p.size(); ++i) {
        p[i] = complex_normal(eng);
        l1 += std::abs(p[i]);
      }
      p[0] = cplx(l1 * (1.0 + u(eng)), draw_t());
      out.form = PolynomialForm{std::move(p)};
      return out;
    }
  }
  throw DomainError("unknown positive class");
}

// ---------------------------------------------------------------------------
// Pairings between members and duality sweeps

/// Q_r(f, g) evaluated without truncation where a closed form exists:
///  * g a measure member (mass w_j at p_j, constant i t):
///      Q_r(f, g) = 2 sum_j w_j f(r p_j) - 2 i t f(0);
///  * f and g Herglotz data with g's tuple T commuting: every word contributes
///      <A_u eta, eta> conj<T_u xi, xi>, so with M = sum_j A_j (x) conj(T_j) and
///      v = eta (x) conj(xi),
///      Q_r(f, g) = 4 v^*((I - rM)^{-1} - I) v + 2 f(0) conj(g(0)).
/// Otherwise falls back to qr_pair on degree-`fallback_degree` truncations.
inline cplx member_pairing(const ClassMember& f, const ClassMember& g, double r, int fallback_degree = kMaxDegree) {
  if (f.d != g.d) throw DimensionMismatch("members live in different dimensions");
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("member pairing needs r in [0, 1)");
  if (const MeasureForm* m = g.measure()) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < m->mu.points.size(); ++j) s += m->mu.weights[j] * f.evaluate(r * m->mu.points[j]);
    const cplx f0 = f.evaluate(Point::Zero(static_cast<Eigen::Index>(f.d)));
    return 2.0 * s - 2.0 * cplx(0.0, m->t) * f0;
  }
  const HerglotzDatum* fd = f.datum();
  const HerglotzDatum* gd = g.datum();
  if (fd && gd && is_commuting(gd->tuple, 1e-10).holds) {
    const Matrix mm = [&] {
      Matrix acc = Matrix::Zero(fd->tuple.n() * gd->tuple.n(), fd->tuple.n() * gd->tuple.n());
      for (std::size_t j = 0; j < f.d; ++j) acc += Eigen::kroneckerProduct(fd->tuple[j], gd->tuple[j].conjugate()).eval();
      return acc;
    }();
    const Vector v = Eigen::kroneckerProduct(fd->xi, gd->xi.conjugate()).eval();
    const Matrix id = Matrix::Identity(mm.rows(), mm.cols());
    Eigen::PartialPivLU<Matrix> lu(id - r * mm);
    const Vector y = lu.solve(v) - v;
    const cplx f0(fd->xi.squaredNorm(), fd->t);
    const cplx g0(gd->xi.squaredNorm(), gd->t);
    return 4.0 * v.dot(y) + 2.0 * f0 * std::conj(g0);
  }
  return qr_pair(f.taylor(fallback_degree), g.taylor(fallback_degree), r);
}

struct SweepReport {
  double min_re = std::numeric_limits<double>::infinity();
  std::size_t pair = 0;
  double r = 0.0;
  std::size_t evaluations = 0;
};

/// min over paired samples (f_i, g_i) and the r grid of Re Q_r(f_i, g_i).
inline SweepReport duality_sweep(const std::vector<ClassMember>& fs, const std::vector<ClassMember>& gs,
                                 const std::vector<double>& grid = default_r_grid()) {
  if (fs.size() != gs.size()) throw DimensionMismatch("duality sweep needs equally many f and g samples");
  SweepReport rep;
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (double r : grid) {
      const double re = member_pairing(fs[i], gs[i], r).real();
      ++rep.evaluations;
      if (re < rep.min_re) rep = {re, i, r, rep.evaluations};
    }
  return rep;
}

// ---------------------------------------------------------------------------
// Extreme points and rigidity

/// Truncation of h_zeta(z) = (1 + <z,zeta>)/(1 - <z,zeta>): c_0 = 1,
/// c_alpha = 2 w(alpha) conj(zeta)^alpha.
inline TruncatedSeries extreme_h(const Point& zeta, int N) {
  if (std::abs(zeta.norm() - 1.0) > 1e-12) throw DomainError("extreme point h_zeta needs a unit zeta");
  const auto d = static_cast<std::size_t>(zeta.size());
  TruncatedSeries h(d, N);
  const SeriesLayout& lay = h.layout();
  h[0] = 1.0;
  for (std::size_t i = 1; i < h.size(); ++i) {
    cplx m = 1.0;
    for (std::size_t j = 0; j < d; ++j) m *= std::pow(std::conj(zeta[static_cast<Eigen::Index>(j)]), lay.indices[i][j]);
    h[i] = 2.0 * static_cast<double>(weight(lay.indices[i])) * m;
  }
  return h;
}

/// Closed form of h_zeta.
inline cplx extreme_h_at(const Point& zeta, const Point& z) {
  const cplx a = inner(z, zeta);
  return (1.0 + a) / (1.0 - a);
}

struct SchwarzBudget {
  int trials = 200;
  std::size_t points = kDefaultPointCount;
  std::uint64_t seed = 17;
};

struct SchwarzReport {
  KernelReport report;     // first failing report, or the last one tried
  bool violation = false;
  int trials_used = 0;
};

/// For g with g(0) = 0 and dg/dz_1(0) = 1, searches boundary-biased point sets
/// (part of each set on the z_1-disk) for a violation of the Schur kernel.
inline SchwarzReport schwarz_probe(const TruncatedSeries& g, const SchwarzBudget& budget = {}) {
  if (std::abs(g.constant_term()) > 1e-12) throw DomainError("Schwarz probe needs g(0) = 0");
  if (g.degree() < 1 || std::abs(g.coeff(MultiIndex::unit(g.dim(), 0)) - 1.0) > 1e-12)
    throw DomainError("Schwarz probe needs dg/dz1(0) = 1");
  SchwarzReport out;
  for (int t = 0; t < budget.trials; ++t) {
    const PointSet pts =
        boundary_biased_point_set(g.dim(), budget.points, budget.seed + static_cast<std::uint64_t>(t), 0.9, 0.99, budget.points / 2);
    out.report = schur_test(g, pts);
    out.trials_used = t + 1;
    if (!out.report.pass) {
      out.violation = true;
      return out;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Atomic representability

struct AtomFit {
  double residual = std::numeric_limits<double>::infinity();  // l2 norm of the moment misfit
  std::vector<Point> points;
  std::vector<double> weights;
};

namespace detail {

// Moments m_alpha = c_alpha / (2 w(alpha)) for alpha != 0 and the mass Re c_0.
inline std::vector<double> target_moments(const TruncatedSeries& f) {
  std::vector<double> r;
  r.push_back(f[0].real());
  for (std::size_t i = 1; i < f.size(); ++i) {
    const cplx m = f[i] / (2.0 * static_cast<double>(weight(f.indices()[i])));
    r.push_back(m.real());
    r.push_back(m.imag());
  }
  return r;
}

inline std::vector<double> model_moments(const Eigen::VectorXd& x, std::size_t atoms, std::size_t d, const SeriesLayout& lay) {
  std::vector<double> r(1 + 2 * (lay.indices.size() - 1), 0.0);
  const std::size_t stride = 2 * d + 1;
  for (std::size_t a = 0; a < atoms; ++a) {
    Point p(static_cast<Eigen::Index>(d));
    for (std::size_t j = 0; j < d; ++j)
      p[static_cast<Eigen::Index>(j)] = cplx(x[static_cast<Eigen::Index>(a * stride + 2 * j)], x[static_cast<Eigen::Index>(a * stride + 2 * j + 1)]);
    const double nrm = p.norm();
    if (nrm > 0.0) p /= nrm;
    const double wt = x[static_cast<Eigen::Index>(a * stride + 2 * d)] * x[static_cast<Eigen::Index>(a * stride + 2 * d)];
    r[0] += wt;
    std::vector<cplx> mono(lay.indices.size());
    mono[0] = 1.0;
    for (std::size_t i = 1; i < mono.size(); ++i) {
      mono[i] = mono[lay.pred[i]] * std::conj(p[static_cast<Eigen::Index>(lay.var[i])]);
      r[2 * i - 1] += wt * mono[i].real();
      r[2 * i] += wt * mono[i].imag();
    }
  }
  return r;
}

}  // namespace detail

/// Least-squares fit of the Taylor coefficients of f by the Herglotz transform
/// of a boundary measure with `atoms` point masses (Levenberg-Marquardt with
/// forward-difference Jacobian, several random restarts). A residual bounded
/// away from zero is evidence that no such measure reproduces f.
inline AtomFit fit_boundary_atoms(const TruncatedSeries& f, std::size_t atoms, std::uint64_t seed, int restarts = 8,
                                  int iters = 400) {
  const std::size_t d = f.dim();
  const SeriesLayout& lay = f.layout();
  const std::vector<double> target = detail::target_moments(f);
  const auto m = static_cast<Eigen::Index>(target.size());
  const auto np = static_cast<Eigen::Index>(atoms * (2 * d + 1));
  const auto resid = [&](const Eigen::VectorXd& x) {
    const std::vector<double> mod = detail::model_moments(x, atoms, d, lay);
    Eigen::VectorXd r(m);
    for (Eigen::Index i = 0; i < m; ++i) r[i] = mod[static_cast<std::size_t>(i)] - target[static_cast<std::size_t>(i)];
    return r;
  };
  AtomFit best;
  for (int s = 0; s < restarts; ++s) {
    auto eng = stream_engine(seed, static_cast<std::uint64_t>(s));
    std::normal_distribution<double> nd;
    Eigen::VectorXd x(np);
    for (Eigen::Index i = 0; i < np; ++i) x[i] = nd(eng);
    const double w0 = std::sqrt(std::max(target[0], 1e-3) / static_cast<double>(atoms));
    for (std::size_t a = 0; a < atoms; ++a) x[static_cast<Eigen::Index>(a * (2 * d + 1) + 2 * d)] = w0;
    Eigen::VectorXd r = resid(x);
    double cost = r.squaredNorm();
    double lambda = 1e-3;
    for (int it = 0; it < iters && cost > 1e-30; ++it) {
      Eigen::MatrixXd J(m, np);
      for (Eigen::Index k = 0; k < np; ++k) {
        Eigen::VectorXd xp = x;
        const double h = 1e-7 * std::max(1.0, std::abs(x[k]));
        xp[k] += h;
        J.col(k) = (resid(xp) - r) / h;
      }
      const Eigen::MatrixXd A = J.transpose() * J;
      const Eigen::VectorXd b = -J.transpose() * r;
      bool improved = false;
      for (int tries = 0; tries < 20 && !improved; ++tries) {
        Eigen::MatrixXd Ad = A;
        Ad.diagonal() += lambda * (A.diagonal().array() + 1e-12).matrix();
        const Eigen::VectorXd step = Ad.ldlt().solve(b);
        const Eigen::VectorXd xn = x + step;
        const Eigen::VectorXd rn = resid(xn);
        const double cn = rn.squaredNorm();
        if (cn < cost) {
          x = xn;
          r = rn;
          improved = cost - cn > 1e-15 * cost;
          cost = cn;
          lambda = std::max(lambda / 3.0, 1e-12);
          if (!improved) break;
        } else {
          lambda *= 4.0;
        }
      }
      if (!improved) break;
    }
    if (std::sqrt(cost) < best.residual) {
      best.residual = std::sqrt(cost);
      best.points.clear();
      best.weights.clear();
      for (std::size_t a = 0; a < atoms; ++a) {
        Point p(static_cast<Eigen::Index>(d));
        for (std::size_t j = 0; j < d; ++j)
          p[static_cast<Eigen::Index>(j)] = cplx(x[static_cast<Eigen::Index>(a * (2 * d + 1) + 2 * j)], x[static_cast<Eigen::Index>(a * (2 * d + 1) + 2 * j + 1)]);
        best.points.push_back(p / p.norm());
        const double wv = x[static_cast<Eigen::Index>(a * (2 * d + 1) + 2 * d)];
        best.weights.push_back(wv * wv);
      }
    }
  }
  return best;
}

/// Minimum of Re f over a point set.
inline double min_real_part(const ScalarFunction& f, const PointSet& pts) {
  double lo = std::numeric_limits<double>::infinity();
  for (const Point& z : pts.points) lo = std::min(lo, f(z).real());
  return lo;
}

}  // namespace herglotz

#endif  // HERGLOTZ_CLASSES_HPP
