// herglotz_cli: reproducible runs of the library's checks with JSON reports.
//
//   herglotz_cli <command> [--config FILE|-] [--seed N] [--out FILE] [--threads N] [--csv FILE]
//
// Exit codes: 0 ok, 1 failed check, 2 bad input, 3 resource cap.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "herglotz/herglotz.hpp"
#include "herglotz/json_io.hpp"
#include "selftest.hpp"

using namespace herglotz;

namespace {

constexpr int kExitCheck = 1;
constexpr int kExitInput = 2;
constexpr int kExitCap = 3;

constexpr double kSweepTol = 1e-9;
constexpr double kIdentityTol = 1e-10;
constexpr double kSqrt2Bound = 1.41421;

struct CheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string csv;
  unsigned threads = 1;
};

std::string read_source(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

json parse_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InputError("malformed JSON in " + origin + ": " + e.what());
  }
}

// A config value that is either inline JSON or a path ("-" for stdin).
json resolve(const json& v, const char* key) {
  if (v.is_string()) return parse_text(read_source(v.get<std::string>()), key);
  return v;
}

json require(const json& cfg, const char* key) {
  if (!cfg.contains(key)) throw InputError(std::string("config is missing \"") + key + "\"");
  return resolve(cfg.at(key), key);
}

template <class T>
T get_or(const json& cfg, const char* key, T fallback) {
  if (!cfg.contains(key)) return fallback;
  return detail::parse_guard(key, [&] { return cfg.at(key).get<T>(); });
}

std::vector<double> grid_or(const json& cfg, const char* key, std::vector<double> fallback) {
  auto g = get_or(cfg, key, std::move(fallback));
  if (g.empty()) throw InputError(std::string("\"") + key + "\" must be a nonempty list of radii");
  return g;
}

// Function inputs shared by membership and growth: one of "zeta" (h_zeta),
// "series", "datum" or "measure" (with optional "imag").
struct FunctionInput {
  ScalarFunction f;
  std::size_t d = 0;
  std::vector<Point> poles;
  std::string kind;
};

FunctionInput function_input(const json& cfg) {
  FunctionInput in;
  if (cfg.contains("zeta")) {
    const Point zeta = detail::parse_guard("zeta", [&] { return detail::vector_from_json(cfg.at("zeta")); });
    if (std::abs(zeta.norm() - 1.0) > 1e-12) throw InputError("zeta must be a unit vector");
    in.f = [zeta](const Point& z) { return extreme_h_at(zeta, z); };
    in.d = static_cast<std::size_t>(zeta.size());
    in.poles = {zeta};
    in.kind = "h_zeta";
  } else if (cfg.contains("series")) {
    auto s = std::make_shared<TruncatedSeries>(series_from_json(require(cfg, "series")));
    in.f = [s](const Point& z) { return evaluate(*s, z); };
    in.d = s->dim();
    in.kind = "series";
  } else if (cfg.contains("datum")) {
    auto D = std::make_shared<HerglotzDatum>(datum_from_json(require(cfg, "datum")));
    in.f = [D](const Point& z) { return herglotz_transform(*D, z); };
    in.d = D->tuple.d();
    in.kind = "datum";
  } else if (cfg.contains("measure")) {
    auto mu = std::make_shared<AtomicMeasure>(measure_from_json(require(cfg, "measure")));
    if (mu->points.empty()) throw InputError("measure needs at least one atom");
    const double t = get_or(cfg, "imag", 0.0);
    in.f = [mu, t](const Point& z) { return herglotz_of_measure_at(*mu, t, z); };
    in.d = mu->dim();
    if (mu->support == Support::boundary) in.poles = mu->points;
    in.kind = "measure";
  } else {
    throw InputError("config needs one of \"zeta\", \"series\", \"datum\" or \"measure\"");
  }
  return in;
}

json complex_json(cplx c) { return detail::complex_to_json(c); }

// ---------------------------------------------------------------------------

struct Result {
  json body;
  bool ok = true;
  std::string csv;
};

Result cmd_pair(const json& cfg, std::uint64_t) {
  const TruncatedSeries f = series_from_json(require(cfg, "f"));
  std::optional<AtomicMeasure> mu;
  TruncatedSeries g = [&] {
    if (cfg.contains("g_measure")) {
      mu = measure_from_json(require(cfg, "g_measure"));
      return herglotz_of_measure(*mu, get_or(cfg, "imag", 0.0), f.degree(), KernelNormalization::full, f.dim());
    }
    return series_from_json(require(cfg, "g"));
  }();
  const auto grid = grid_or(cfg, "grid", default_r_grid());
  json rows = json::array();
  for (double r : grid) {
    const cplx q = qr_pair(f, g, r);
    json row = {{"r", r}, {"Q", complex_json(q)}};
    if (r < 1.0) {
      const double s = std::sqrt(r);
      const int N = std::min(f.degree(), g.degree());
      const TruncatedSeries fs = dilate(f.truncated(N), s), gs = dilate(g.truncated(N), s);
      row["identity_residual"] = std::abs(q - h2d_inner_series(fs, gs) - f.constant_term() * std::conj(g.constant_term()));
    }
    row["hermitian_residual"] = std::abs(q - std::conj(qr_pair(g, f, r)));
    if (mu && r < 1.0 && get_or(cfg, "imag", 0.0) == 0.0) row["measure_residual"] = pairing_vs_measure_check(f, *mu, r);
    rows.push_back(row);
  }
  return {{{"rows", rows}}, true, {}};
}

Result cmd_herglotz(const json& cfg, std::uint64_t seed) {
  const HerglotzDatum D = datum_from_json(require(cfg, "datum"));
  const int N = get_or(cfg, "N", 10);
  const auto count = get_or<std::size_t>(cfg, "points", 200);
  const double cap = get_or(cfg, "radius", 0.95);
  const auto row = is_row_contraction(D.tuple);
  const auto weak = is_weak_row_contraction(D.tuple);
  const auto comm = is_commuting(D.tuple);

  const PointSet pts = random_point_set(D.tuple.d(), count, seed, cap);
  double min_re = std::numeric_limits<double>::infinity();
  double fact = 0.0;
  json singular = json::array();
  for (std::size_t i = 0; i < pts.points.size(); ++i) {
    try {
      min_re = std::min(min_re, herglotz_transform(D, pts.points[i]).real());
      const Matrix a = re_herglotz_kernel(pts.points[i], D.tuple);
      fact = std::max(fact, (a - re_herglotz_factored(pts.points[i], D.tuple)).cwiseAbs().maxCoeff());
    } catch (const SingularPencil& e) {
      singular.push_back({{"index", i}, {"point", detail::vector_to_json(pts.points[i])}, {"error", e.what()}});
    }
  }
  json body = {{"predicates",
                {{"row_contraction", {{"holds", row.holds}, {"min_eig", row.value}}},
                 {"weak_row_contraction", {{"holds", weak.holds}, {"sup_estimate", weak.sup_estimate}}},
                 {"commuting", {{"holds", comm.holds}, {"max_commutator", comm.value}}}}},
               {"taylor", to_json(herglotz_taylor(D, N))},
               {"points", count},
               {"min_re", std::isfinite(min_re) ? json(min_re) : json(nullptr)},
               {"factorization_residual", fact},
               {"singular_points", singular}};
  return {body, true, {}};
}

Result cmd_davidson_pitts(const json& cfg, std::uint64_t seed) {
  const int L_full = get_or(cfg, "L_full", 16);
  const int N_sym = get_or(cfg, "N_sym", 16);
  const int L_min = get_or(cfg, "L_min", 4);
  if (L_min < 1 || L_min > L_full) throw InputError("need 1 <= L_min <= L_full");
  PowerOptions opt;
  opt.seed = seed;
  opt.max_iters = get_or(cfg, "max_iters", opt.max_iters);
  opt.tol = get_or(cfg, "tol", opt.tol);

  const double shift = davidson_pitts_shift_norm(N_sym);
  json sweep = json::array();
  std::string csv = "L,norm,iterations,converged\n";
  double prev = 0.0, last = 0.0;
  bool monotone = true;
  for (int L = L_min; L <= L_full; ++L) {
    const NormResult nr = operator_norm_power(davidson_pitts_calculus_map(FockBasis(2, L)), opt);
    monotone = monotone && nr.value >= prev;
    prev = last = nr.value;
    sweep.push_back({{"L", L}, {"norm", nr.value}, {"iterations", nr.iterations}, {"converged", nr.converged}});
    csv += std::to_string(L) + "," + std::to_string(nr.value) + "," + std::to_string(nr.iterations) + "," +
           (nr.converged ? "true" : "false") + "\n";
  }
  const bool separated = shift < kSqrt2Bound && last > std::numbers::sqrt2;
  json body = {{"norm_sym_shift", shift},
               {"norm_sym_calculus", last},
               {"gap", last - shift},
               {"nondecreasing", monotone},
               {"separated", separated},
               {"sweep", sweep},
               {"limit_sqrt_5_2", davidson_pitts_limit()},
               {"distance_to_limit", davidson_pitts_limit() - last}};
  return {body, separated && monotone, csv};
}

Result cmd_duality(const json& cfg, std::uint64_t seed) {
  const auto trials = get_or<std::size_t>(cfg, "trials", 200);
  const auto id_trials = get_or<std::size_t>(cfg, "identity_trials", 100);
  const auto grid = grid_or(cfg, "grid", default_r_grid());
  std::vector<ClassMember> os, ms, ss, rs;
  for (std::size_t i = 0; i < trials; ++i) {
    os.push_back(generate_member(PositiveClass::O, seed + 4 * i));
    ms.push_back(generate_member(PositiveClass::M, seed + 4 * i + 1));
    ss.push_back(generate_member(PositiveClass::S, seed + 4 * i + 2));
    rs.push_back(generate_member(PositiveClass::R, seed + 4 * i + 3));
  }
  const SweepReport om = duality_sweep(os, ms, grid);
  const SweepReport sr = duality_sweep(ss, rs, grid);

  // Q_r(f, g) = 2 conj(<f^_r(T) xi, xi>) for commuting data.
  json table = json::array();
  double worst = 0.0;
  for (std::size_t i = 0; i < id_trials; ++i) {
    const ClassMember m = generate_member(PositiveClass::R, seed + 1'000'000 + i);
    HerglotzDatum D = *m.datum();
    D.t = 0.0;
    const int N = 1 + static_cast<int>(i % 8);
    auto eng = stream_engine(seed + 2'000'000, i);
    TruncatedSeries f(D.tuple.d(), N);
    for (std::size_t k = 0; k < f.size(); ++k) f[k] = complex_normal(eng);
    const TruncatedSeries g = herglotz_taylor(D, N);
    double res = 0.0;
    for (double r : grid) {
      const cplx v = D.xi.dot(commuting_calculus(dilate(reflect(f), r), D.tuple) * D.xi);
      res = std::max(res, std::abs(qr_pair(f, g, r) - 2.0 * std::conj(v)));
    }
    worst = std::max(worst, res);
    table.push_back({{"trial", i}, {"n", D.tuple.n()}, {"N", N}, {"residual", res}});
  }
  const bool ok = om.min_re >= -kSweepTol && sr.min_re >= -kSweepTol && worst <= kIdentityTol;
  const auto sweep_json = [](const SweepReport& s) {
    return json{{"min_re", s.min_re}, {"pair", s.pair}, {"r", s.r}, {"evaluations", s.evaluations}};
  };
  json body = {{"O_vs_M", sweep_json(om)}, {"S_vs_R", sweep_json(sr)}, {"rs_identity_max_residual", worst},
               {"rs_identity", table}};
  return {body, ok, {}};
}

Result cmd_membership(const json& cfg, std::uint64_t seed) {
  const FunctionInput in = function_input(cfg);
  const auto sets = get_or<std::size_t>(cfg, "point_sets", 10);
  const auto count = get_or<std::size_t>(cfg, "points", kDefaultPointCount);
  const double cap = get_or(cfg, "radius", 0.95);
  json reports = json::array();
  bool pass = true;
  for (std::size_t s = 0; s < sets; ++s) {
    const KernelReport rep = splus_test(in.f, random_point_set(in.d, count, seed + s, cap));
    pass = pass && rep.pass;
    reports.push_back(to_json(rep));
  }
  return {{{"function", in.kind}, {"verdict", pass ? "pass" : "fail"}, {"reports", reports}}, pass, {}};
}

Result cmd_growth(const json& cfg, std::uint64_t seed) {
  const FunctionInput in = function_input(cfg);
  const double p = get_or(cfg, "p", 1.0);
  const auto grid = grid_or(cfg, "grid", default_growth_grid());
  const auto n = get_or<std::size_t>(cfg, "samples", kDefaultGrowthSamples);
  const GrowthProfile g = growth_profile({in.f, in.d, in.poles}, p, grid, n, seed);
  std::string csv = "r,mean,stderr\n";
  for (std::size_t i = 0; i < g.grid.size(); ++i) {
    std::ostringstream line;
    line.precision(17);
    line << g.grid[i] << "," << g.means[i] << "," << g.std_errors[i] << "\n";
    csv += line.str();
  }
  json body = to_json(g);
  body["function"] = in.kind;
  body["samples"] = n;
  body["slope_stderr"] = g.slope_se;
  return {body, true, csv};
}

Result cmd_selftest(const json&, std::uint64_t) {
  json checks = json::array();
  bool ok = true;
  for (const auto& c : cli::selftest_checks()) {
    bool pass = false;
    std::string error;
    try {
      pass = c.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    ok = ok && pass;
    json entry = {{"name", c.name}, {"pass", pass}};
    if (!error.empty()) entry["error"] = error;
    checks.push_back(entry);
    std::fprintf(stderr, "%s  %s\n", pass ? "ok  " : "FAIL", c.name.c_str());
  }
  return {{{"checks", checks}, {"passed", ok}}, ok, {}};
}

json tolerances() {
  return {{"pairing_identity", 1e-12},
          {"rs_identity", kIdentityTol},
          {"sweep_min_re", -kSweepTol},
          {"sqrt2_bound", kSqrt2Bound},
          {"gram_relative", 1e-8},
          {"bounded_slope", kBoundedSlope},
          {"pole_clamp", kPoleClamp},
          {"predicate", 1e-10}};
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

using Command = Result (*)(const json&, std::uint64_t);

int run(const std::string& name, Command cmd, const Options& opt) {
  json cfg = opt.config.empty() ? json::object() : parse_text(read_source(opt.config), opt.config);
  if (!cfg.is_object()) throw InputError("config must be a JSON object");
  if (opt.seed) cfg["seed"] = *opt.seed;
  const auto seed = get_or<std::uint64_t>(cfg, "seed", 1);
  cfg["seed"] = seed;
  set_threads(opt.threads);

  const auto start = std::chrono::steady_clock::now();
  Result res = cmd(cfg, seed);
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  json report = {{"command", name},  {"version", kVersion},       {"config", cfg},
                 {"tolerances", tolerances()}, {"result", res.body}, {"status", res.ok ? "ok" : "check_failed"},
                 {"elapsed_seconds", elapsed}};
  write_text(opt.out, report.dump(2) + "\n");
  if (!opt.csv.empty()) {
    if (res.csv.empty()) throw InputError("--csv is available for davidson-pitts and growth only");
    write_text(opt.csv, res.csv);
  }
  if (!res.ok) throw CheckFailed(name + ": a check failed; see the report");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Herglotz representation experiments"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Options opt;
  const std::vector<std::pair<std::string, std::pair<std::string, Command>>> commands = {
      {"pair", {"Q_r pairing of two series across a radius grid", cmd_pair}},
      {"herglotz", {"Predicates, Taylor series and positivity of a Herglotz datum", cmd_herglotz}},
      {"davidson-pitts", {"Norms of p = z1 + z1 z2 on symmetric and full Fock space", cmd_davidson_pitts}},
      {"duality", {"Sampled duality sweeps and the commuting pairing identity", cmd_duality}},
      {"membership", {"S+ kernel test of a function on random point sets", cmd_membership}},
      {"growth", {"H^p radial means and boundedness verdict", cmd_growth}},
      {"selftest", {"Run the built-in example checks", cmd_selftest}},
  };
  std::string chosen;
  Command chosen_cmd = nullptr;
  for (const auto& [name, entry] : commands) {
    CLI::App* sub = app.add_subcommand(name, entry.first);
    sub->add_option("--config", opt.config, "JSON config file, or - for stdin");
    sub->add_option("--seed", opt.seed, "Seed override");
    sub->add_option("--out", opt.out, "Report path (default stdout)");
    sub->add_option("--threads", opt.threads, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--csv", opt.csv, "CSV export path (davidson-pitts, growth)");
    sub->callback([&chosen, &chosen_cmd, name = name, cmd = entry.second] {
      chosen = name;
      chosen_cmd = cmd;
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    return run(chosen, chosen_cmd, opt);
  } catch (const CheckFailed& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheck;
  } catch (const ResourceCap& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kExitCap;
  } catch (const DegreeLimit& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kExitCap;
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  }
}
