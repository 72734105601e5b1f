#ifndef HERGLOTZ_JSON_IO_HPP
#define HERGLOTZ_JSON_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "herglotz/classes.hpp"
#include "herglotz/errors.hpp"
#include "herglotz/fock.hpp"
#include "herglotz/growth.hpp"
#include "herglotz/optuple.hpp"
#include "herglotz/pairing.hpp"
#include "herglotz/series.hpp"

namespace herglotz {

using json = nlohmann::json;

namespace detail {

template <class F>
auto parse_guard(const char* what, F&& f) {
  try {
    return f();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(std::string("malformed ") + what + " JSON: " + e.what());
  }
}

inline json complex_to_json(cplx c) { return json::array({c.real(), c.imag()}); }

inline cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw InputError("complex entries are [re, im] pairs");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

inline json vector_to_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(complex_to_json(v[i]));
  return a;
}

inline Vector vector_from_json(const json& j) {
  if (!j.is_array()) throw InputError("expected an array of [re, im] pairs");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = complex_from_json(j[i]);
  return v;
}

inline json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(vector_to_json(m.row(i).transpose()));
  return rows;
}

inline Matrix matrix_from_json(const json& j, Eigen::Index n) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != n) throw InputError("matrix row count does not match n");
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vector row = vector_from_json(j[static_cast<std::size_t>(i)]);
    if (row.size() != n) throw InputError("matrix column count does not match n");
    m.row(i) = row.transpose();
  }
  return m;
}

}  // namespace detail

// Series: {"d", "N", "coeffs": [{"alpha": [...], "re", "im"}]}, zeros omitted.

inline json to_json(const TruncatedSeries& f) {
  json c = json::array();
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == cplx(0.0)) continue;
    c.push_back(json{{"alpha", f.indices()[i].exponents()}, {"re", f[i].real()}, {"im", f[i].imag()}});
  }
  return {{"d", f.dim()}, {"N", f.degree()}, {"coeffs", c}};
}

inline TruncatedSeries series_from_json(const json& j) {
  return detail::parse_guard("series", [&] {
    const auto d = j.at("d").get<std::size_t>();
    const int N = j.at("N").get<int>();
    TruncatedSeries f(d, N);
    for (const json& e : j.value("coeffs", json::array())) {
      const auto exps = e.at("alpha").get<std::vector<int>>();
      if (exps.size() != d) throw InputError("multi-index length does not match d");
      for (int x : exps)
        if (x < 0) throw InputError("multi-index entries must be nonnegative");
      const MultiIndex a(exps);
      if (a.order() > N) throw InputError("coefficient order exceeds N");
      f.set(a, f.coeff(a) + cplx(e.value("re", 0.0), e.value("im", 0.0)));
    }
    return f;
  });
}

// AtomicMeasure: {"points": [[[re,im] x d] ...], "weights": [...], "support"}.

inline json to_json(const AtomicMeasure& mu) {
  json pts = json::array();
  for (const Point& p : mu.points) pts.push_back(detail::vector_to_json(p));
  return {{"points", pts}, {"weights", mu.weights}, {"support", mu.support == Support::boundary ? "boundary" : "interior"}};
}

inline AtomicMeasure measure_from_json(const json& j) {
  return detail::parse_guard("measure", [&] {
    AtomicMeasure mu;
    for (const json& p : j.at("points")) mu.points.push_back(detail::vector_from_json(p));
    mu.weights = j.at("weights").get<std::vector<double>>();
    const std::string s = j.value("support", "boundary");
    if (s == "boundary")
      mu.support = Support::boundary;
    else if (s == "interior")
      mu.support = Support::interior;
    else
      throw InputError("support must be \"boundary\" or \"interior\"");
    mu.validate();
    return mu;
  });
}

// OperatorTuple: {"d", "n", "matrices": [matrix ...]}, matrix = rows of [re,im].
// HerglotzDatum adds "xi" and "t".

inline json to_json(const OperatorTuple& T) {
  json ms = json::array();
  for (const Matrix& m : T.matrices()) ms.push_back(detail::matrix_to_json(m));
  return {{"d", T.d()}, {"n", T.n()}, {"matrices", ms}};
}

inline OperatorTuple tuple_from_json(const json& j) {
  return detail::parse_guard("tuple", [&] {
    const auto d = j.at("d").get<std::size_t>();
    const auto n = j.at("n").get<Eigen::Index>();
    const json& ms = j.at("matrices");
    if (!ms.is_array() || ms.size() != d) throw InputError("tuple needs exactly d matrices");
    std::vector<Matrix> mats;
    for (const json& m : ms) mats.push_back(detail::matrix_from_json(m, n));
    return OperatorTuple(std::move(mats));
  });
}

inline json to_json(const HerglotzDatum& D) {
  json j = to_json(D.tuple);
  j["xi"] = detail::vector_to_json(D.xi);
  j["t"] = D.t;
  return j;
}

inline HerglotzDatum datum_from_json(const json& j) {
  return detail::parse_guard("datum", [&] {
    HerglotzDatum D{tuple_from_json(j), detail::vector_from_json(j.at("xi")), j.value("t", 0.0)};
    D.validate();
    return D;
  });
}

inline json to_json(const KernelReport& r) {
  json w = nullptr;
  if (r.witness) w = detail::vector_to_json(*r.witness);
  return {{"kernel", r.kernel}, {"points", r.points}, {"min_eig", r.min_eig},
          {"tol", r.tol},       {"verdict", r.pass ? "pass" : "fail"}, {"witness", w}};
}

inline json to_json(const DavidsonPittsReport& r) {
  return {{"L_full", r.L_full},
          {"N_sym", r.N_sym},
          {"norm_sym_shift", r.norm_sym_shift},
          {"norm_sym_calculus", r.norm_sym_calculus},
          {"iters", r.iters},
          {"residual", r.residual}};
}

inline json to_json(const GrowthProfile& g) {
  return {{"p", g.p},         {"grid", g.grid},   {"means", g.means},       {"stderr", g.std_errors},
          {"slope", g.slope}, {"verdict", g.verdict}, {"clamped", g.clamped}};
}

}  // namespace herglotz

#endif  // HERGLOTZ_JSON_IO_HPP
