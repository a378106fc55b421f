#include "coophunt/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "coophunt/ns.hpp"
#include "coophunt/sim.hpp"

namespace coophunt {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Everything one run needs; filled by CLI11, echoed in the manifest.
struct RunConfig {
  std::string subcommand;
  double lambda = 5.0, beta = 0.5, alpha = 0.5;
  bool raw = false;
  double a = 1.0, k = 1.0;
  std::string format = "json";
  std::string out = "-";
  std::uint64_t seed = 42;
  std::uint64_t burn_in = 20000, window = 5000;
  SolveOptions sopt;
  // subcommand-specific
  double x0 = 1.0, y0 = 1.0;
  int samples = 512;
  double beta_min = 0.0, beta_max = 0.0;
  int beta_steps = 0;
  std::string grid = "32x32";
  double x_min = 0.1, x_max = 4.5, y_min = 0.05, y_max = 0.6;
  double ns_beta_max = 0.0;
  double lambda_min = 1.2, lambda_max = 20.0;
  int lambda_steps = 10;
  double rt_beta_min = 0.02, rt_beta_max = 1.0;
  int rt_beta_steps = 10;
  double alpha_min = 0.0, alpha_max = 20.0;
  int alpha_steps = 10;
};

Params resolve_params(const RunConfig& cfg) {
  Params p;
  if (cfg.raw) {
    RawParams r;
    r.lambda = cfg.lambda;
    r.search_rate = cfg.a;
    r.crowding = cfg.k;
    r.conversion = cfg.beta;
    r.cooperation = cfg.alpha;
    p = nondimensionalize(r);
  } else {
    p = {cfg.lambda, cfg.beta, cfg.alpha};
  }
  validate(p);
  return p;
}

json params_json(const RunConfig& cfg, const Params& p) {
  json j{{"lambda", p.lambda}, {"beta", p.beta}, {"alpha", p.alpha}};
  if (cfg.raw) {
    j["raw"] = {{"lambda", cfg.lambda},
                {"search_rate", cfg.a},
                {"crowding", cfg.k},
                {"conversion", cfg.beta},
                {"cooperation", cfg.alpha}};
  }
  return j;
}

json tolerances_json(const RunConfig& cfg) {
  return {{"root_width", cfg.sopt.root_width},
          {"boundary_guard", cfg.sopt.boundary_guard},
          {"double_root_tol", cfg.sopt.double_root_tol},
          {"nonhyperbolic_band", 1e-9},
          {"marginal_band", 1e-6},
          {"fixed_point_diameter", 1e-7},
          {"loop_diameter", 1e-5},
          {"loop_radius_cv", 0.5},
          {"loop_radius_drift", 0.01},
          {"boundary_proximity", 1e-6},
          {"persistence_floor", 1e-6}};
}

json manifest_json(const RunConfig& cfg, const json& params, json budgets) {
  budgets["scan_points"] = cfg.sopt.scan_points;
  return {{"tool", kToolName},      {"version", kToolVersion},
          {"subcommand", cfg.subcommand}, {"params", params},
          {"seed", cfg.seed},       {"format", cfg.format},
          {"tolerances", tolerances_json(cfg)}, {"budgets", budgets}};
}

void flatten_comments(const json& j, const std::string& prefix,
                      std::vector<std::string>& out) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object())
      flatten_comments(*it, key, out);
    else
      out.push_back("# " + key + " = " + it->dump());
  }
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void write_output(const RunConfig& cfg, const json& manifest, const json& data,
                  const Table& table) {
  std::ostringstream body;
  if (cfg.format == "csv") {
    std::vector<std::string> comments;
    flatten_comments(manifest, "", comments);
    for (const std::string& c : comments) body << c << "\n";
    for (std::size_t i = 0; i < table.header.size(); ++i)
      body << (i ? "," : "") << table.header[i];
    body << "\n";
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i)
        body << (i ? "," : "") << row[i];
      body << "\n";
    }
  } else {
    const json doc{{"schema_version", 1}, {"manifest", manifest}, {"data", data}};
    body << doc.dump(2) << "\n";
  }
  if (cfg.out == "-") {
    std::cout << body.str();
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + cfg.out);
    f << body.str();
  }
}

json equilibrium_json(const Equilibrium& e, const StabilityClass& c) {
  return {{"kind", to_string(e.kind)},
          {"x", e.state.x},
          {"y", e.state.y},
          {"residual", e.residual},
          {"multiplicity", e.multiplicity},
          {"stability",
           {{"tag", to_string(c.tag)},
            {"jury_det", c.jury_det},
            {"jury_sum", c.jury_sum},
            {"jury_diff", c.jury_diff},
            {"marginal", c.marginal},
            {"mod1", c.mod1},
            {"mod2", c.mod2}}}};
}

json orbit_json(const OrbitSummary& s) {
  return {{"attractor", to_string(s.kind)},
          {"center_x", s.center.x},
          {"center_y", s.center.y},
          {"mean_radius", s.mean_radius},
          {"radius_cv", s.radius_cv},
          {"radius_drift", s.radius_drift},
          {"tail_diameter", s.tail_diameter},
          {"tail_min_x", s.tail_min_x},
          {"tail_min_y", s.tail_min_y},
          {"tail_max_x", s.tail_max_x},
          {"tail_max_y", s.tail_max_y},
          {"steps_used", s.steps_used}};
}

json optional_json(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

const char* bound_name(CountBound b) {
  switch (b) {
    case CountBound::ExactlyZero: return "ExactlyZero";
    case CountBound::ExactlyOne: return "ExactlyOne";
    default: return "AtMostTwo";
  }
}

int cmd_equilibria(const RunConfig& cfg) {
  const Params p = resolve_params(cfg);
  const auto eqs = all_equilibria(p, cfg.sopt);
  const RegimeReport rr = regime(p);
  const CriticalSet cs = critical_set(p);

  json rows = json::array();
  Table t;
  t.header = {"kind", "x",       "y",    "residual", "multiplicity",
              "tag",  "jury_det", "mod1", "mod2"};
  for (const Equilibrium& e : eqs) {
    const StabilityClass c = classify(e, p);
    rows.push_back(equilibrium_json(e, c));
    t.rows.push_back({to_string(e.kind), fmt17(e.state.x), fmt17(e.state.y),
                      fmt17(e.residual), std::to_string(e.multiplicity),
                      to_string(c.tag), fmt17(c.jury_det), fmt17(c.mod1),
                      fmt17(c.mod2)});
  }
  const json data{
      {"equilibria", rows},
      {"regime",
       {{"x_bar", optional_json(rr.x_bar)},
        {"predator_rmax", optional_json(rr.predator_rmax)},
        {"cooperation_excess", optional_json(rr.cooperation_excess)},
        {"bound", bound_name(rr.bound)},
        {"boundary_unclassified", rr.boundary_unclassified}}},
      {"critical_set",
       {{"x_bar", optional_json(cs.x_bar)},
        {"y_c", optional_json(cs.y_c)},
        {"y_d", optional_json(cs.y_d)},
        {"y_t", optional_json(cs.y_t)},
        {"beta_star", optional_json(cs.beta_star)},
        {"beta_d", optional_json(cs.beta_d)}}}};
  write_output(cfg, manifest_json(cfg, params_json(cfg, p), json::object()),
               data, t);
  return 0;
}

int cmd_isoclines(const RunConfig& cfg) {
  const Params p = resolve_params(cfg);
  if (cfg.samples < 2) throw std::invalid_argument("isoclines: --samples >= 2");
  const double yc = y_ceiling(p);  // regime error when lambda <= 1
  json rows = json::array();
  Table t;
  t.header = {"y", "h", "f", "w"};
  for (int i = 0; i < cfg.samples; ++i) {
    const double y = yc * i / (cfg.samples - 1);
    const double h = isocline_h(y, p), f = isocline_f(y, p),
                 w = recruitment(y, p);
    rows.push_back({{"y", y}, {"h", h}, {"f", f}, {"w", w}});
    t.rows.push_back({fmt17(y), fmt17(h), fmt17(f), fmt17(w)});
  }
  const json data{{"y_ceiling", yc}, {"curve", rows}};
  write_output(cfg,
               manifest_json(cfg, params_json(cfg, p),
                             {{"samples", cfg.samples}}),
               data, t);
  return 0;
}

int cmd_classify(const RunConfig& cfg) {
  const Params p = resolve_params(cfg);
  const OrbitSummary s =
      classify_orbit({cfg.x0, cfg.y0}, p, cfg.burn_in, cfg.window);
  const json j = orbit_json(s);
  Table t;
  for (auto it = j.begin(); it != j.end(); ++it) t.header.push_back(it.key());
  std::vector<std::string> row;
  for (auto it = j.begin(); it != j.end(); ++it)
    row.push_back(it->is_number_float() ? fmt17(it->get<double>())
                                        : it->dump());
  t.rows.push_back(row);
  const json data{{"initial", {{"x", cfg.x0}, {"y", cfg.y0}}}, {"orbit", j}};
  write_output(cfg,
               manifest_json(cfg, params_json(cfg, p),
                             {{"burn_in", cfg.burn_in}, {"window", cfg.window}}),
               data, t);
  return 0;
}

json complex_json(const std::complex<double>& z) {
  return {{"re", z.real()}, {"im", z.imag()}};
}

int cmd_ns(const RunConfig& cfg) {
  const Params p = resolve_params(cfg);  // beta unused by the search
  json data;
  Table t;
  t.header = {"found",          "beta_d", "mu",     "omega", "transversality",
              "resonance_clear", "c_star", "direction"};
  try {
    const NSReport r = ns_report(p.lambda, p.alpha, cfg.ns_beta_max);
    data = {{"found", true},
            {"lambda", r.lambda},
            {"alpha", r.alpha},
            {"beta_d", r.beta_d},
            {"mu", r.mu},
            {"omega", r.omega},
            {"equilibrium", {{"x", r.equilibrium.state.x},
                             {"y", r.equilibrium.state.y},
                             {"residual", r.equilibrium.residual}}},
            {"transversality", r.transversality},
            {"resonance_clear", r.resonance_clear},
            {"b", r.quad.b},
            {"c", r.quad.c},
            {"k", r.uv.k},
            {"l", r.uv.l},
            {"xi20", complex_json(r.xi.xi20)},
            {"xi11", complex_json(r.xi.xi11)},
            {"xi02", complex_json(r.xi.xi02)},
            {"xi21", complex_json(r.xi.xi21)},
            {"c_star", r.c_star},
            {"direction", to_string(r.direction)},
            {"diagnostic", r.diagnostic}};
    t.rows.push_back({"true", fmt17(r.beta_d), fmt17(r.mu), fmt17(r.omega),
                      fmt17(r.transversality),
                      r.resonance_clear ? "true" : "false", fmt17(r.c_star),
                      to_string(r.direction)});
  } catch (const RegimeError& e) {
    data = {{"found", false}, {"reason", std::string("no NS point: ") + e.what()}};
    t.rows.push_back({"false", "", "", "", "", "", "", ""});
  }
  write_output(cfg,
               manifest_json(cfg, params_json(cfg, p),
                             {{"beta_max", cfg.ns_beta_max},
                              {"burn_in", cfg.burn_in},
                              {"window", cfg.window}}),
               data, t);
  return 0;
}

int cmd_sweep(const RunConfig& cfg, bool have_initial) {
  if (!(cfg.beta_min > 0.0) || !(cfg.beta_max > cfg.beta_min))
    throw std::invalid_argument("sweep: need 0 < --beta-min < --beta-max");
  if (cfg.beta_steps < 2) throw std::invalid_argument("sweep: --beta-steps >= 2");
  std::optional<State> s0;
  if (have_initial) s0 = State{cfg.x0, cfg.y0};
  const auto rows = beta_sweep(cfg.lambda, cfg.alpha, cfg.beta_min,
                               cfg.beta_max, cfg.beta_steps, s0, cfg.burn_in,
                               cfg.window);
  json jrows = json::array();
  Table t;
  t.header = {"beta", "eq_index", "kind", "x",    "y",
              "tag",  "mod1",     "mod2", "attractor"};
  for (const SweepRow& r : rows) {
    json eqs = json::array();
    for (std::size_t i = 0; i < r.equilibria.size(); ++i) {
      eqs.push_back(equilibrium_json(r.equilibria[i], r.classes[i]));
      t.rows.push_back({fmt17(r.beta), std::to_string(i),
                        to_string(r.equilibria[i].kind),
                        fmt17(r.equilibria[i].state.x),
                        fmt17(r.equilibria[i].state.y),
                        to_string(r.classes[i].tag), fmt17(r.classes[i].mod1),
                        fmt17(r.classes[i].mod2), to_string(r.orbit.kind)});
    }
    jrows.push_back(
        {{"beta", r.beta}, {"equilibria", eqs}, {"orbit", orbit_json(r.orbit)}});
  }
  const Params echo{cfg.lambda, cfg.beta_min, cfg.alpha};
  write_output(cfg,
               manifest_json(cfg, params_json(cfg, echo),
                             {{"beta_min", cfg.beta_min},
                              {"beta_max", cfg.beta_max},
                              {"beta_steps", cfg.beta_steps},
                              {"burn_in", cfg.burn_in},
                              {"window", cfg.window}}),
               {{"rows", jrows}}, t);
  return 0;
}

int cmd_basin(const RunConfig& cfg) {
  const Params p = resolve_params(cfg);
  BasinSpec spec;
  spec.x_min = cfg.x_min;
  spec.x_max = cfg.x_max;
  spec.y_min = cfg.y_min;
  spec.y_max = cfg.y_max;
  spec.burn_in = cfg.burn_in;
  spec.window = cfg.window;
  {
    const auto pos = cfg.grid.find_first_of("xX");
    if (pos == std::string::npos)
      throw std::invalid_argument("basin: --grid must look like 32x32");
    try {
      spec.nx = std::stoi(cfg.grid.substr(0, pos));
      spec.ny = std::stoi(cfg.grid.substr(pos + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("basin: --grid must look like 32x32");
    }
    if (spec.nx < 2 || spec.ny < 2)
      throw std::invalid_argument("basin: grid must be at least 2x2");
  }
  const BasinGrid grid = basin_scan(p, spec);
  json cells = json::array();
  Table t;
  t.header = {"ix", "iy", "x0", "y0", "label"};
  for (int iy = 0; iy < spec.ny; ++iy) {
    for (int ix = 0; ix < spec.nx; ++ix) {
      const double x =
          spec.x_min + (spec.x_max - spec.x_min) * ix / (spec.nx - 1);
      const double y =
          spec.y_min + (spec.y_max - spec.y_min) * iy / (spec.ny - 1);
      const std::string label =
          to_string(grid.labels[static_cast<std::size_t>(iy) * spec.nx + ix]);
      cells.push_back({{"ix", ix}, {"iy", iy}, {"x0", x}, {"y0", y},
                       {"label", label}});
      t.rows.push_back({std::to_string(ix), std::to_string(iy), fmt17(x),
                        fmt17(y), label});
    }
  }
  write_output(cfg,
               manifest_json(cfg, params_json(cfg, p),
                             {{"grid", cfg.grid},
                              {"x_min", cfg.x_min},
                              {"x_max", cfg.x_max},
                              {"y_min", cfg.y_min},
                              {"y_max", cfg.y_max},
                              {"burn_in", cfg.burn_in},
                              {"window", cfg.window}}),
               {{"cells", cells}}, t);
  return 0;
}

int cmd_simulate(const RunConfig& cfg) {
  const Params p = resolve_params(cfg);
  const OrbitSummary summary =
      classify_orbit({cfg.x0, cfg.y0}, p, cfg.burn_in, cfg.window);
  // Re-run to emit the analysis window itself.
  State s{cfg.x0, cfg.y0};
  for (std::uint64_t i = 0; i < cfg.burn_in; ++i) s = step(s, p);
  json rows = json::array();
  Table t;
  t.header = {"t", "x", "y"};
  for (std::uint64_t i = 0; i < cfg.window; ++i) {
    rows.push_back({{"t", cfg.burn_in + i}, {"x", s.x}, {"y", s.y}});
    t.rows.push_back({std::to_string(cfg.burn_in + i), fmt17(s.x), fmt17(s.y)});
    s = step(s, p);
  }
  const json data{{"summary", orbit_json(summary)}, {"trajectory", rows}};
  write_output(cfg,
               manifest_json(cfg, params_json(cfg, p),
                             {{"burn_in", cfg.burn_in}, {"window", cfg.window}}),
               data, t);
  return 0;
}

int cmd_regime_table(const RunConfig& cfg) {
  if (cfg.lambda_steps < 1 || cfg.rt_beta_steps < 1 || cfg.alpha_steps < 1)
    throw std::invalid_argument("regime-table: steps must be >= 1");
  json rows = json::array();
  Table t;
  t.header = {"lambda", "beta",  "alpha",          "x_bar",
              "rmax",   "excess", "bound",          "interior_count",
              "boundary_unclassified"};
  auto grid_value = [](double lo, double hi, int steps, int i) {
    return steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1);
  };
  for (int il = 0; il < cfg.lambda_steps; ++il) {
    const double lam =
        grid_value(cfg.lambda_min, cfg.lambda_max, cfg.lambda_steps, il);
    for (int ib = 0; ib < cfg.rt_beta_steps; ++ib) {
      const double bet =
          grid_value(cfg.rt_beta_min, cfg.rt_beta_max, cfg.rt_beta_steps, ib);
      for (int ia = 0; ia < cfg.alpha_steps; ++ia) {
        const double alp =
            grid_value(cfg.alpha_min, cfg.alpha_max, cfg.alpha_steps, ia);
        const Params p{lam, bet, alp};
        const RegimeReport rr = regime(p);
        const auto count = interior_equilibria(p, cfg.sopt).size();
        rows.push_back({{"lambda", lam},
                        {"beta", bet},
                        {"alpha", alp},
                        {"x_bar", optional_json(rr.x_bar)},
                        {"rmax", optional_json(rr.predator_rmax)},
                        {"excess", optional_json(rr.cooperation_excess)},
                        {"bound", bound_name(rr.bound)},
                        {"interior_count", count},
                        {"boundary_unclassified", rr.boundary_unclassified}});
        t.rows.push_back(
            {fmt17(lam), fmt17(bet), fmt17(alp),
             rr.x_bar ? fmt17(*rr.x_bar) : "",
             rr.predator_rmax ? fmt17(*rr.predator_rmax) : "",
             rr.cooperation_excess ? fmt17(*rr.cooperation_excess) : "",
             bound_name(rr.bound), std::to_string(count),
             rr.boundary_unclassified ? "true" : "false"});
      }
    }
  }
  const json budgets{{"lambda_min", cfg.lambda_min},
                     {"lambda_max", cfg.lambda_max},
                     {"lambda_steps", cfg.lambda_steps},
                     {"beta_min", cfg.rt_beta_min},
                     {"beta_max", cfg.rt_beta_max},
                     {"beta_steps", cfg.rt_beta_steps},
                     {"alpha_min", cfg.alpha_min},
                     {"alpha_max", cfg.alpha_max},
                     {"alpha_steps", cfg.alpha_steps}};
  write_output(cfg, manifest_json(cfg, json::object(), budgets),
               {{"rows", rows}}, t);
  return 0;
}

void add_output_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--out", cfg.out, "Output path ('-' for stdout)")
      ->capture_default_str();
  sub->add_option("--seed", cfg.seed, "Random seed (echoed in the manifest)")
      ->capture_default_str();
}

void add_solver_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--scan-points", cfg.sopt.scan_points,
                  "Bracketing grid size for root scans")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--tol-root", cfg.sopt.root_width,
                  "Bisection interval width")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--tol-boundary", cfg.sopt.boundary_guard,
                  "Discard roots this close to the domain edge")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--tol-double-root", cfg.sopt.double_root_tol,
                  "Tangency detection depth")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void add_model_options(CLI::App* sub, RunConfig& cfg, bool with_beta = true) {
  sub->add_option("--lambda", cfg.lambda, "Prey growth factor")
      ->capture_default_str();
  if (with_beta)
    sub->add_option("--beta", cfg.beta, "Conversion efficiency")
        ->capture_default_str();
  sub->add_option("--alpha", cfg.alpha, "Hunting-cooperation degree")
      ->capture_default_str();
  sub->add_flag("--raw", cfg.raw,
                "Treat --beta/--alpha as dimensional and rescale by --a/--k");
  sub->add_option("--a", cfg.a, "Search rate (with --raw)")
      ->capture_default_str();
  sub->add_option("--k", cfg.k, "Crowding coefficient (with --raw)")
      ->capture_default_str();
}

void add_orbit_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--burn-in", cfg.burn_in, "Steps discarded before analysis")
      ->capture_default_str();
  sub->add_option("--window", cfg.window, "Steps analyzed after burn-in")
      ->capture_default_str();
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  RunConfig cfg;
  CLI::App app{"Numerical toolkit for a planar predator-prey map with "
               "hunting cooperation"};
  app.require_subcommand(1);
  int rc = 0;

  auto* eq = app.add_subcommand(
      "equilibria", "Steady states, stability, regime and critical values");
  add_model_options(eq, cfg);
  add_solver_options(eq, cfg);
  add_output_options(eq, cfg);
  eq->callback([&] {
    cfg.subcommand = "equilibria";
    rc = cmd_equilibria(cfg);
  });

  auto* iso = app.add_subcommand("isoclines",
                                 "Tabulate both isoclines and the recruitment "
                                 "curve on [0, y_c]");
  add_model_options(iso, cfg);
  iso->add_option("--samples", cfg.samples, "Grid points")
      ->capture_default_str();
  add_output_options(iso, cfg);
  iso->callback([&] {
    cfg.subcommand = "isoclines";
    rc = cmd_isoclines(cfg);
  });

  auto* cls = app.add_subcommand("classify",
                                 "Classify the attractor reached from one "
                                 "initial state");
  add_model_options(cls, cfg);
  cls->add_option("--x0", cfg.x0, "Initial prey density")->required();
  cls->add_option("--y0", cfg.y0, "Initial predator density")->required();
  add_orbit_options(cls, cfg);
  add_output_options(cls, cfg);
  cls->callback([&] {
    cfg.subcommand = "classify";
    rc = cmd_classify(cfg);
  });

  auto* ns = app.add_subcommand(
      "ns", "Eigenvalue-crossing analysis with direction coefficient");
  add_model_options(ns, cfg, /*with_beta=*/false);
  ns->add_option("--beta-max", cfg.ns_beta_max,
                 "Cap for the threshold search (0 = default cap)")
      ->capture_default_str();
  add_orbit_options(ns, cfg);
  add_output_options(ns, cfg);
  ns->callback([&] {
    cfg.subcommand = "ns";
    rc = cmd_ns(cfg);
  });

  auto* sweep = app.add_subcommand(
      "sweep", "Equilibria, stability and attractor per conversion value");
  add_model_options(sweep, cfg, /*with_beta=*/false);
  sweep->add_option("--beta-min", cfg.beta_min, "Sweep start")->required();
  sweep->add_option("--beta-max", cfg.beta_max, "Sweep end")->required();
  sweep->add_option("--beta-steps", cfg.beta_steps, "Sweep points")
      ->required();
  auto* sx0 = sweep->add_option("--x0", cfg.x0, "Fixed initial prey density");
  auto* sy0 =
      sweep->add_option("--y0", cfg.y0, "Fixed initial predator density");
  sy0->needs(sx0);
  sx0->needs(sy0);
  add_orbit_options(sweep, cfg);
  add_output_options(sweep, cfg);
  sweep->callback([&] {
    cfg.subcommand = "sweep";
    rc = cmd_sweep(cfg, sweep->count("--x0") > 0);
  });

  auto* basin = app.add_subcommand(
      "basin", "Attractor label per initial state on a rectangular grid");
  add_model_options(basin, cfg);
  basin->add_option("--grid", cfg.grid, "Resolution, e.g. 32x32")
      ->capture_default_str();
  basin->add_option("--x-min", cfg.x_min, "Grid range")->capture_default_str();
  basin->add_option("--x-max", cfg.x_max, "Grid range")->capture_default_str();
  basin->add_option("--y-min", cfg.y_min, "Grid range")->capture_default_str();
  basin->add_option("--y-max", cfg.y_max, "Grid range")->capture_default_str();
  add_orbit_options(basin, cfg);
  add_output_options(basin, cfg);
  basin->callback([&] {
    cfg.subcommand = "basin";
    rc = cmd_basin(cfg);
  });

  auto* simu = app.add_subcommand(
      "simulate", "Emit the analysis window of one orbit with its summary");
  add_model_options(simu, cfg);
  simu->add_option("--x0", cfg.x0, "Initial prey density")->required();
  simu->add_option("--y0", cfg.y0, "Initial predator density")->required();
  add_orbit_options(simu, cfg);
  add_output_options(simu, cfg);
  simu->callback([&] {
    cfg.subcommand = "simulate";
    rc = cmd_simulate(cfg);
  });

  auto* rt = app.add_subcommand(
      "regime-table",
      "Interior-state count bounds and solver counts over a parameter grid");
  rt->add_option("--lambda-min", cfg.lambda_min, "")->capture_default_str();
  rt->add_option("--lambda-max", cfg.lambda_max, "")->capture_default_str();
  rt->add_option("--lambda-steps", cfg.lambda_steps, "")->capture_default_str();
  rt->add_option("--beta-min", cfg.rt_beta_min, "")->capture_default_str();
  rt->add_option("--beta-max", cfg.rt_beta_max, "")->capture_default_str();
  rt->add_option("--beta-steps", cfg.rt_beta_steps, "")->capture_default_str();
  rt->add_option("--alpha-min", cfg.alpha_min, "")->capture_default_str();
  rt->add_option("--alpha-max", cfg.alpha_max, "")->capture_default_str();
  rt->add_option("--alpha-steps", cfg.alpha_steps, "")->capture_default_str();
  add_solver_options(rt, cfg);
  add_output_options(rt, cfg);
  rt->callback([&] {
    cfg.subcommand = "regime-table";
    rc = cmd_regime_table(cfg);
  });

  auto emit_error = [](const char* type, const std::string& message) {
    const json rec{{"schema_version", 1},
                   {"error", {{"type", type}, {"message", message}}}};
    std::cout << rec.dump(2) << "\n";
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    if (code == 0) return 0;  // --help / --version
    emit_error("usage", e.what());
    return 2;
  } catch (const RegimeError& e) {
    emit_error("regime", e.what());
    return 4;
  } catch (const ConvergenceError& e) {
    emit_error("convergence", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    emit_error("invalid_argument", e.what());
    return 2;
  } catch (const std::exception& e) {
    emit_error("failure", e.what());
    return 3;
  }
  return rc;
}

}  // namespace coophunt
