// capiso: experiment runner for the verification suites.
//
// Exit codes: 0 = all assertions passed, 1 = an assertion failed,
// 2 = invalid configuration or usage.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "capiso/suites.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace capiso;

namespace {

// ---- configuration ---------------------------------------------------------

const std::set<std::string> kKnownKeys = {
    "problem.n",        "problem.lambda",   "cone.omega",
    "grid.resolution",  "grid.azimuth",     "run.seed",
    "run.m_phi",        "eval.graph",       "eval.amplitude",
    "ensemble.size",    "ensemble.cap",     "fuglede.s_min",
    "fuglede.s_max",    "fuglede.count",    "fuglede.chain_cap",
    "sharpness.t_min",  "sharpness.t_max",  "sharpness.count",
    "select.k",         "select.k_list",    "select.Lambda",
    "select.max_iters", "mc.samples",
};

struct Config {
  std::map<std::string, std::string> raw;

  static Config load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    Config cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      std::string s = line.substr(0, line.find('#'));
      auto ltrim = s.find_first_not_of(" \t\r");
      if (ltrim == std::string::npos) continue;
      auto eq = s.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                    ": expected 'key = value'");
      auto trim = [](std::string t) {
        auto a = t.find_first_not_of(" \t\r");
        auto b = t.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : t.substr(a, b - a + 1);
      };
      std::string key = trim(s.substr(0, eq)), value = trim(s.substr(eq + 1));
      if (!kKnownKeys.count(key))
        throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                    ": unknown key '" + key + "'");
      if (cfg.raw.count(key))
        throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                    ": duplicate key '" + key + "'");
      cfg.raw[key] = value;
    }
    return cfg;
  }

  std::string get(const std::string& key, const std::string& dflt) const {
    auto it = raw.find(key);
    return it == raw.end() ? dflt : it->second;
  }
  double get_num(const std::string& key, double dflt) const {
    auto it = raw.find(key);
    if (it == raw.end()) return dflt;
    std::size_t used = 0;
    double v = std::stod(it->second, &used);
    if (used != it->second.size())
      throw std::invalid_argument("config: bad number for " + key);
    return v;
  }
  int get_int(const std::string& key, int dflt) const {
    double v = get_num(key, dflt);
    if (v != static_cast<int>(v))
      throw std::invalid_argument("config: expected integer for " + key);
    return static_cast<int>(v);
  }
  bool has(const std::string& key) const { return raw.count(key) > 0; }
};

struct RunContext {
  Config cfg;
  fs::path out_dir;
  std::uint64_t seed = 0;
  int resolution = 0;
  int m_phi = 0;
  CapParams problem{3, 0.5};
  std::optional<ConeSpec> cone;

  std::vector<json> assertions;
  int failed = 0;

  void check(const std::string& name, bool pass, const std::string& detail) {
    assertions.push_back({{"name", name}, {"pass", pass}, {"detail", detail}});
    if (!pass) ++failed;
    std::cout << (pass ? "  ok   " : "  FAIL ") << name << ": " << detail << "\n";
  }
};

RunContext make_context(const Config& cfg, const std::string& out,
                        std::optional<std::uint64_t> seed_override,
                        std::optional<int> res_override) {
  RunContext ctx;
  ctx.cfg = cfg;
  ctx.out_dir = out;
  ctx.seed = seed_override ? *seed_override
                           : static_cast<std::uint64_t>(
                                 cfg.get_num("run.seed", 20240817.0));
  ctx.resolution = res_override ? *res_override : cfg.get_int("grid.resolution", 128);
  ctx.m_phi = cfg.get_int("run.m_phi", 64);
  ctx.problem = CapParams(cfg.get_int("problem.n", 3),
                          cfg.get_num("problem.lambda", 0.5));
  if (cfg.has("cone.omega"))
    ctx.cone = ConeSpec(ctx.problem.n, cfg.get_num("cone.omega", kPi / 3));
  fs::create_directories(ctx.out_dir);
  return ctx;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(6) << v;
  return os.str();
}

// ---- report files ----------------------------------------------------------

void write_report(const RunContext& ctx, const std::string& subcommand,
                  json results) {
  json doc{{"schema_version", 1},
           {"subcommand", subcommand},
           {"seed", ctx.seed},
           {"resolution", ctx.resolution},
           {"config", ctx.cfg.raw},
           {"results", std::move(results)},
           {"assertions", ctx.assertions},
           {"failed_assertions", ctx.failed}};
  std::ofstream out(ctx.out_dir / "report.json");
  out << doc.dump(2) << "\n";
}

void write_csv(const RunContext& ctx, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(ctx.out_dir / "sweep.csv");
  for (std::size_t i = 0; i < header.size(); ++i)
    out << (i ? "," : "") << header[i];
  out << "\n";
  out << std::setprecision(17);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << "\n";
  }
}

// Self-contained log-log scatter plot with the fitted power law.
void write_svg(const RunContext& ctx, const std::string& title,
               const std::string& xlabel, const std::string& ylabel,
               const std::vector<std::pair<double, double>>& pts,
               const FitResult& fit) {
  std::vector<std::pair<double, double>> kept;
  for (auto& [x, y] : pts)
    if (x > 0 && y > 0) kept.push_back({std::log10(x), std::log10(y)});
  std::ofstream out(ctx.out_dir / "plot.svg");
  const int W = 640, H = 480, L = 70, R = 20, T = 40, B = 50;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
      << "\" height=\"" << H << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";
  if (kept.size() < 2) {
    out << "<text x=\"" << W / 2 << "\" y=\"" << H / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\">"
        << "all values at the numerical floor</text>\n</svg>\n";
    return;
  }
  double x0 = kept.front().first, x1 = kept.front().first;
  double y0 = kept.front().second, y1 = kept.front().second;
  for (auto& [x, y] : kept) {
    x0 = std::min(x0, x); x1 = std::max(x1, x);
    y0 = std::min(y0, y); y1 = std::max(y1, y);
  }
  if (x1 - x0 < 1e-12) x1 = x0 + 1;
  if (y1 - y0 < 1e-12) y1 = y0 + 1;
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };
  out << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R
      << "\" height=\"" << H - T - B
      << "\" fill=\"none\" stroke=\"#888\"/>\n";
  // Axis labels with decade ticks at the corners.
  out << "<text x=\"" << W / 2 << "\" y=\"" << H - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << xlabel << " (log10: " << std::fixed << std::setprecision(2) << x0
      << " to " << x1 << ")</text>\n";
  out << "<text x=\"16\" y=\"" << H / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
      << "transform=\"rotate(-90 16 " << H / 2 << ")\">" << ylabel
      << " (log10: " << y0 << " to " << y1 << ")</text>\n";
  if (!fit.degenerate) {
    double c = std::log10(std::exp(1.0));
    auto fy = [&](double lx) {
      return (fit.slope * (lx / c) + fit.intercept) * c;
    };
    out << "<line x1=\"" << px(x0) << "\" y1=\"" << py(fy(x0)) << "\" x2=\""
        << px(x1) << "\" y2=\"" << py(fy(x1))
        << "\" stroke=\"#c33\" stroke-width=\"1.5\"/>\n";
    out << "<text x=\"" << W - R - 8 << "\" y=\"" << T + 18
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"13\" "
        << "fill=\"#c33\">slope " << std::setprecision(3) << fit.slope
        << "</text>\n";
  }
  for (auto& [x, y] : kept)
    out << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y)
        << "\" r=\"3.5\" fill=\"#236\"/>\n";
  out << "</svg>\n";
}

// ---- graph construction ----------------------------------------------------

RadialGraph build_eval_graph(const RunContext& ctx, const AngularGrid& g) {
  std::string kind = ctx.cfg.get("eval.graph", "bubble");
  ScalarField base = ctx.cone ? ScalarField(g, 1.0)
                              : w_profile(ctx.problem, g).field;
  if (kind == "bubble") return RadialGraph(std::move(base));
  if (kind != "perturbed")
    throw std::invalid_argument("config: eval.graph must be bubble or perturbed");
  Rng rng(ctx.seed, 0);
  ScalarField u = random_perturbation(g, rng,
                                      ctx.cfg.get_num("eval.amplitude", 0.1));
  for (int i = 0; i < base.size(); ++i) base.values[i] += u.values[i];
  return RadialGraph(std::move(base));
}

std::vector<double> parse_int_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

json vec_to_json(const Vec& v) {
  json a = json::array();
  for (int i = 0; i < v.dim; ++i) a.push_back(v[i]);
  return a;
}

// ---- subcommands -----------------------------------------------------------

void run_eval(RunContext& ctx) {
  json res;
  if (ctx.cone) {
    AngularGrid g = cone_grid(*ctx.cone, ctx.resolution);
    RadialGraph f = build_eval_graph(ctx, g);
    ConeReport r = cone_report(f, *ctx.cone, ctx.m_phi);
    res = {{"volume", r.volume},       {"perimeter_C", r.perimeter_C},
           {"mu_C0_sq", r.mu_C0_sq},   {"mu_C_sq", r.mu_C_sq},
           {"alpha_C", r.alpha_C},     {"deficit_C", r.deficit_C}};
    if (ctx.cfg.get("eval.graph", "bubble") == "bubble") {
      ctx.check("unit sector deficit ~ 0", std::abs(r.deficit_C) <= 1e-10,
                fmt(r.deficit_C));
      ctx.check("unit sector mu ~ 0", r.mu_C_sq <= 1e-10, fmt(r.mu_C_sq));
    }
  } else {
    AngularGrid g = make_grid(ctx.problem, ctx.problem.n == 2 ? kPi : kPi / 2,
                              ctx.resolution,
                              ctx.cfg.get_int("grid.azimuth", 0));
    RadialGraph f = build_eval_graph(ctx, g);
    CapReport r = cap_report(f, ctx.problem, ctx.m_phi);
    res = {{"volume", r.volume},
           {"perimeter_lambda", r.perimeter_lambda},
           {"perimeter_plain", r.perimeter_plain},
           {"wetted_area", r.wetted_area},
           {"mu0_sq", r.mu0_sq},
           {"mu_sq", r.mu_sq},
           {"alpha", r.alpha},
           {"deficit", r.deficit},
           {"barycenter_H", vec_to_json(r.barycenter_H)},
           {"b_tilde", vec_to_json(r.b_tilde)}};
    if (ctx.cfg.get("eval.graph", "bubble") == "bubble") {
      ctx.check("bubble deficit ~ 0", std::abs(r.deficit) <= 1e-10,
                fmt(r.deficit));
      ctx.check("bubble mu^2 ~ 0", r.mu_sq <= 1e-10, fmt(r.mu_sq));
    } else {
      ctx.check("deficit nonnegative", r.deficit >= -1e-10, fmt(r.deficit));
    }
  }
  write_report(ctx, "eval", std::move(res));
}

void run_identities(RunContext& ctx) {
  AngularGrid g = make_grid(ctx.problem, ctx.problem.n == 2 ? kPi : kPi / 2,
                            ctx.resolution);
  RadialGraph w = w_profile(ctx.problem, g);
  int count = ctx.cfg.get_int("ensemble.size", 50);
  double cap = ctx.cfg.get_num("ensemble.cap", 0.15);
  double max_mu = 0, max_wet = 0;
  std::vector<std::vector<double>> rows;
  for (int item = 0; item < count; ++item) {
    Rng rng(ctx.seed, item);
    ScalarField u = random_perturbation(g, rng, cap);
    ScalarField fv = w.field;
    for (int i = 0; i < fv.size(); ++i) fv.values[i] += u.values[i];
    RadialGraph f(fv);
    double dmu = std::abs(mu0_sq(f, ctx.problem) -
                          mu0_sq_divergence(f, ctx.problem));
    WettedArea wa = wetted_area(f, ctx.problem);
    double dwet = std::abs(wa.direct - wa.flux);
    max_mu = std::max(max_mu, dmu);
    max_wet = std::max(max_wet, dwet);
    rows.push_back({static_cast<double>(item), dmu, dwet});
  }
  // 1e-6 at the reference resolution 128; fourth-order allowance below it.
  double tol = ctx.resolution >= 128
                   ? 1e-6
                   : 1e-6 * std::pow(128.0 / ctx.resolution, 4.0);
  ctx.check("mu0 divergence identity within tolerance", max_mu <= tol,
            fmt(max_mu) + " (tol " + fmt(tol) + ")");
  ctx.check("wetted area identity within tolerance", max_wet <= tol,
            fmt(max_wet) + " (tol " + fmt(tol) + ")");
  write_csv(ctx, {"item", "mu_residual", "wetted_residual"}, rows);
  write_report(ctx, "identities",
               {{"ensemble", count},
                {"max_mu_residual", max_mu},
                {"max_wetted_residual", max_wet}});
}

void run_fuglede(RunContext& ctx) {
  AngularGrid g = make_grid(ctx.problem, ctx.problem.n == 2 ? kPi : kPi / 2,
                            ctx.resolution);
  ScalarField phi = build_direction(ctx.problem, g);
  std::vector<double> s_list =
      logspace(ctx.cfg.get_num("fuglede.s_min", 1e-3),
               ctx.cfg.get_num("fuglede.s_max", 1e-1),
               ctx.cfg.get_int("fuglede.count", 8));
  RadialGraph w = w_profile(ctx.problem, g);
  double p_bubble = perimeter_lambda(w, ctx.problem);
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<double, double>> pts;
  for (double s : s_list) {
    auto [f, u] = volume_normalized_graph(phi, s, ctx.problem);
    double r = std::abs(perimeter_lambda(f, ctx.problem) - p_bubble -
                        B_form(u, ctx.problem));
    rows.push_back({s, r});
    pts.push_back({s, r});
  }
  FitResult fit = expansion_residual_sweep(phi, s_list, ctx.problem);
  ctx.check("expansion residual slope in [2.7, 3.3]",
            !fit.degenerate && fit.slope >= 2.7 && fit.slope <= 3.3,
            "slope " + fmt(fit.slope));
  ChainCheck cc = chain_check(ctx.cfg.get_int("ensemble.size", 50),
                              ctx.cfg.get_num("fuglede.chain_cap", 0.05),
                              ctx.problem, ctx.seed, ctx.resolution);
  ctx.check("chain ratio mu/H1 stable within 5%",
            cc.mu_over_h1.count > 0 && cc.mu_over_h1.stability <= 0.05,
            "max " + fmt(cc.mu_over_h1.max) + " stability " +
                fmt(cc.mu_over_h1.stability));
  ctx.check("chain ratio H1/deficit stable within 5%",
            cc.h1_over_deficit.count > 0 && cc.h1_over_deficit.stability <= 0.05,
            "max " + fmt(cc.h1_over_deficit.max) + " stability " +
                fmt(cc.h1_over_deficit.stability));
  write_csv(ctx, {"s", "expansion_residual"}, rows);
  write_svg(ctx, "Perimeter expansion residual", "s", "residual", pts, fit);
  write_report(ctx, "fuglede",
               {{"slope", fit.slope},
                {"r_squared", fit.r_squared},
                {"dropped_points", fit.dropped},
                {"chain_mu_over_h1",
                 {{"min", cc.mu_over_h1.min},
                  {"median", cc.mu_over_h1.median},
                  {"max", cc.mu_over_h1.max},
                  {"stability", cc.mu_over_h1.stability}}},
                {"chain_h1_over_deficit",
                 {{"min", cc.h1_over_deficit.min},
                  {"median", cc.h1_over_deficit.median},
                  {"max", cc.h1_over_deficit.max},
                  {"stability", cc.h1_over_deficit.stability}}}});
}

void run_sharpness(RunContext& ctx) {
  AngularGrid g = make_grid(ctx.problem, ctx.problem.n == 2 ? kPi : kPi / 2,
                            ctx.resolution);
  std::vector<double> t_list =
      logspace(ctx.cfg.get_num("sharpness.t_min", 0.01),
               ctx.cfg.get_num("sharpness.t_max", 0.1),
               ctx.cfg.get_int("sharpness.count", 6));
  SharpnessSweep sw = sharpness_sweep(ctx.problem, g, t_list, ctx.m_phi);
  double bracket = sw.ratio_min > 0 ? sw.ratio_max / sw.ratio_min : 0.0;
  ctx.check("deficit slope 2 +/- 0.1",
            std::abs(sw.deficit_fit.slope - 2.0) <= 0.1,
            fmt(sw.deficit_fit.slope));
  ctx.check("mu^2 slope 2 +/- 0.1", std::abs(sw.mu_fit.slope - 2.0) <= 0.1,
            fmt(sw.mu_fit.slope));
  ctx.check("D/mu^2 bracket <= 3", bracket > 0 && bracket <= 3.0, fmt(bracket));
  bool f20 = true;
  double worst = -1e300;
  for (std::size_t i = 0; i < sw.t_values.size(); ++i) {
    double excess = sw.mu0_sq_values[i] - 20.0 * sw.mu_sq_values[i];
    worst = std::max(worst, excess);
    f20 = f20 && excess <= 1e-8;
  }
  ctx.check("factor-20 bound", f20, "worst excess " + fmt(worst));
  long samples = static_cast<long>(ctx.cfg.get_num("mc.samples", 1e6));
  long violations = elementary_inequality_mc(samples, ctx.seed);
  ctx.check("elementary inequality violations == 0", violations == 0,
            std::to_string(violations) + " of " + std::to_string(samples));
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < sw.t_values.size(); ++i) {
    rows.push_back({sw.t_values[i], sw.deficits[i], sw.mu_sq_values[i],
                    sw.mu0_sq_values[i]});
    pts.push_back({sw.t_values[i], sw.deficits[i]});
  }
  write_csv(ctx, {"t", "deficit", "mu_sq", "mu0_sq"}, rows);
  write_svg(ctx, "Sharpness family deficit", "t", "deficit", pts, sw.deficit_fit);
  write_report(ctx, "sharpness",
               {{"deficit_slope", sw.deficit_fit.slope},
                {"mu_slope", sw.mu_fit.slope},
                {"ratio_bracket", bracket},
                {"elementary_violations", violations}});
}

void run_select(RunContext& ctx) {
  SelectionConfig scfg;
  scfg.k = ctx.cfg.get_int("select.k", 64);
  scfg.Lambda = ctx.cfg.get_num("select.Lambda", 0.0);
  scfg.max_iters = ctx.cfg.get_int("select.max_iters", 5000);
  AngularGrid g = ctx.cone
                      ? cone_grid(*ctx.cone, ctx.resolution)
                      : make_grid(ctx.problem,
                                  ctx.problem.n == 2 ? kPi : kPi / 2,
                                  ctx.resolution);
  SelectionProblem prob = ctx.cone ? SelectionProblem(*ctx.cone, g, scfg)
                                   : SelectionProblem(ctx.problem, g, scfg);
  const AngularGrid& pg = *prob.grid;
  Rng rng(ctx.seed, 1);
  ScalarField u = random_perturbation(pg, rng, 0.1);
  ScalarField fv = ctx.cone ? ScalarField(pg, 1.0)
                            : w_profile(ctx.problem, pg).field;
  for (int i = 0; i < fv.size(); ++i) fv.values[i] += u.values[i];
  Rng probe(ctx.seed, 2);
  double gerr = gradient_fd_error(prob, RadialGraph(fv), probe, 20);
  ctx.check("gradient FD error <= 1e-5", gerr <= 1e-5, fmt(gerr));

  auto [fmin, trace] = minimize_multistart(prob, scfg);
  bool monotone = true;
  for (std::size_t i = 1; i < trace.values.size(); ++i)
    if (trace.values[i] > trace.values[i - 1] + 1e-12) monotone = false;
  ctx.check("descent monotone", monotone,
            std::to_string(trace.values.size()) + " iterations");
  json res{{"k", scfg.k},
           {"final_value", trace.values.back()},
           {"stationarity", trace.final_stationarity},
           {"converged", trace.converged},
           {"sym_diff_to_reference", trace.sym_diff_to_reference},
           {"volume_gap", trace.volume_gap}};
  if (!ctx.cone) {
    std::vector<int> k_list;
    for (double k : parse_int_list(
             ctx.cfg.get("select.k_list", "16,32,64,128,256,512")))
      k_list.push_back(static_cast<int>(k));
    SelectionSweep sweep = selection_sweep(k_list, ctx.problem, g, scfg);
    bool sweep_ok = sweep.degenerate || sweep.fit.slope <= -0.4;
    ctx.check("sweep slope <= -0.4 or degenerate-at-floor", sweep_ok,
              sweep.degenerate ? "degenerate-at-floor"
                               : "slope " + fmt(sweep.fit.slope));
    ctx.check("volume gap <= 1e-3 at largest k",
              sweep.volume_gaps.back() <= 1e-3, fmt(sweep.volume_gaps.back()));
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < sweep.k_values.size(); ++i) {
      rows.push_back({static_cast<double>(sweep.k_values[i]),
                      sweep.sym_diffs[i], sweep.volume_gaps[i]});
      pts.push_back({static_cast<double>(sweep.k_values[i]), sweep.sym_diffs[i]});
    }
    write_csv(ctx, {"k", "sym_diff", "volume_gap"}, rows);
    write_svg(ctx, "Selection sweep |F_k delta B|", "k", "sym diff", pts,
              sweep.fit);
    res["sweep_degenerate"] = sweep.degenerate;
    if (!sweep.degenerate) res["sweep_slope"] = sweep.fit.slope;
  }
  write_report(ctx, "select", std::move(res));
}

void run_cone(RunContext& ctx) {
  ConeSpec spec = ctx.cone ? *ctx.cone : ConeSpec(ctx.problem.n, kPi / 3);
  AngularGrid g = cone_grid(spec, ctx.resolution);
  Rng rng(ctx.seed, 3);
  ScalarField u = random_perturbation(g, rng, 0.2);
  ScalarField fv(g, 1.0);
  for (int i = 0; i < fv.size(); ++i) fv.values[i] += u.values[i];
  RadialGraph f(fv);
  double ident = std::abs(mu_C0_sq(f, spec) - mu_C0_sq_divergence(f, spec));
  ctx.check("cone divergence identity <= 1e-6", ident <= 1e-6, fmt(ident));
  ConeReport r = cone_report(f, spec, ctx.m_phi);

  // Half-space equivalence at omega = pi/2, lambda = 0.
  ConeSpec hs(spec.n, kPi / 2);
  CapParams p0(spec.n, 0.0);
  AngularGrid gh = cone_grid(hs, ctx.resolution);
  Rng rng2(ctx.seed, 4);
  ScalarField uh = random_perturbation(gh, rng2, 0.2);
  ScalarField fhv = w_profile(p0, gh).field;
  for (int i = 0; i < fhv.size(); ++i) fhv.values[i] += uh.values[i];
  RadialGraph fh(fhv);
  double worst = 0;
  worst = std::max(worst, std::abs(perimeter_C(fh, hs) - perimeter_lambda(fh, p0)));
  worst = std::max(worst, std::abs(mu_C0_sq(fh, hs) - mu0_sq(fh, p0)));
  worst = std::max(worst, std::abs(deficit_C(fh, hs) - deficit(fh, p0)));
  worst = std::max(worst, std::abs(mu_C_sq(fh, hs, ctx.m_phi).mu_sq -
                                   mu_sq(fh, p0, ctx.m_phi).mu_sq));
  ctx.check("half-space equivalence <= 1e-10", worst <= 1e-10, fmt(worst));
  write_report(ctx, "cone",
               {{"omega", spec.omega},
                {"volume", r.volume},
                {"perimeter_C", r.perimeter_C},
                {"mu_C0_sq", r.mu_C0_sq},
                {"mu_C_sq", r.mu_C_sq},
                {"alpha_C", r.alpha_C},
                {"deficit_C", r.deficit_C},
                {"half_space_max_deviation", worst}});
}

void run_oracle(RunContext& ctx) {
  AngularGrid g = make_grid(ctx.problem, ctx.problem.n == 2 ? kPi : kPi / 2,
                            ctx.resolution);
  Rng rng(ctx.seed, 5);
  ScalarField u = random_perturbation(g, rng, 0.2);
  ScalarField fv = w_profile(ctx.problem, g).field;
  for (int i = 0; i < fv.size(); ++i) fv.values[i] += u.values[i];
  RadialGraph f(fv);
  long N = static_cast<long>(ctx.cfg.get_num("mc.samples", 1e6));
  int n = ctx.problem.n;

  double quad_vol = graph_volume(f);
  double fmax = 0;
  for (double v : f.field.values) fmax = std::max(fmax, v);
  BoundingBox box{Vec(n), Vec(n)};
  for (int d = 0; d < n; ++d) {
    box.lo[d] = d == n - 1 ? 0.0 : -(fmax + 0.05);
    box.hi[d] = fmax + 0.05;
  }
  McEstimate mc = mc_volume(
      [&](const Vec& x) { return point_in_graph_set(f, x); }, box, N,
      ctx.seed + 11);
  double sig_vol = std::abs(quad_vol - mc.value) /
                   std::max(mc.standard_error, 1e-300);
  ctx.check("volume within 3 sigma of Monte Carlo", sig_vol <= 3.0,
            fmt(sig_vol) + " sigma");

  double quad_sd = sym_diff_bubble(f, ctx.problem, 0.08, 1.02, ctx.m_phi);
  McEstimate mcsd = mc_symdiff(f, ctx.problem, 0.08, 1.02, N, ctx.seed + 12);
  double sig_sd = std::abs(quad_sd - mcsd.value) /
                  std::max(mcsd.standard_error, 1e-300);
  ctx.check("symmetric difference within 3 sigma", sig_sd <= 3.0,
            fmt(sig_sd) + " sigma");
  write_report(ctx, "oracle",
               {{"quad_volume", quad_vol},
                {"mc_volume", mc.value},
                {"mc_volume_se", mc.standard_error},
                {"quad_symdiff", quad_sd},
                {"mc_symdiff", mcsd.value},
                {"mc_symdiff_se", mcsd.standard_error},
                {"samples", N}});
}

void run_all(RunContext& ctx) {
  AcceptanceOptions opts;
  opts.seed = ctx.seed;
  opts.resolution = ctx.resolution;
  opts.m_phi = ctx.m_phi;
  opts.mc_samples = static_cast<long>(ctx.cfg.get_num("mc.samples", 1e6));
  opts.ensemble = ctx.cfg.get_int("ensemble.size", 50);
  json list = json::array();
  run_acceptance(opts, [&](const CriterionResult& r) {
    ctx.check("criterion " + std::to_string(r.id) + ": " + r.name, r.pass,
              r.detail);
    list.push_back({{"id", r.id},
                    {"name", r.name},
                    {"pass", r.pass},
                    {"detail", r.detail}});
  });
  write_report(ctx, "all", {{"criteria", std::move(list)}});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"capiso: numerical verification of quantitative isoperimetric "
               "inequalities for capillarity problems and convex cones"};
  app.require_subcommand(1);
  std::string config_path, out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<int> resolution;
  const std::vector<std::string> names = {"eval",      "identities", "fuglede",
                                          "sharpness", "select",     "cone",
                                          "oracle",    "all"};
  for (const std::string& name : names) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "key = value configuration file")
        ->required();
    sub->add_option("--seed", seed, "override run.seed");
    sub->add_option("--out", out_dir, "output directory (default: out)");
    sub->add_option("--resolution", resolution, "override grid.resolution");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    std::string sub = app.get_subcommands().front()->get_name();
    RunContext ctx = make_context(Config::load(config_path), out_dir, seed,
                                  resolution);
    if (sub == "eval") run_eval(ctx);
    else if (sub == "identities") run_identities(ctx);
    else if (sub == "fuglede") run_fuglede(ctx);
    else if (sub == "sharpness") run_sharpness(ctx);
    else if (sub == "select") run_select(ctx);
    else if (sub == "cone") run_cone(ctx);
    else if (sub == "oracle") run_oracle(ctx);
    else run_all(ctx);
    std::cout << (ctx.failed == 0 ? "all assertions passed"
                                  : std::to_string(ctx.failed) +
                                        " assertion(s) failed")
              << "; report at " << (ctx.out_dir / "report.json").string()
              << "\n";
    return ctx.failed == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  }
}
