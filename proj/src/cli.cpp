#include "korteweg/cli.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "korteweg/verification.hpp"

namespace korteweg::cli {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorKind::ConfigError, msg); }

// Reads typed keys from one JSON object and rejects the keys it never saw.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j.is_object()) config_error(path_ + " must be an object");
  }

  void num(const char* key, double& out) {
    if (const json* v = take(key)) {
      if (!v->is_number()) config_error(where(key) + " must be a number");
      out = v->get<double>();
      if (!std::isfinite(out)) config_error(where(key) + " must be finite");
    }
  }
  void num(const char* key, std::optional<double>& out) {
    double v = 0.0;
    if (has(key)) {
      num(key, v);
      out = v;
    }
  }
  void integer(const char* key, int& out) {
    if (const json* v = take(key)) {
      if (!v->is_number_integer()) config_error(where(key) + " must be an integer");
      out = v->get<int>();
    }
  }
  void u64(const char* key, std::uint64_t& out) {
    if (const json* v = take(key)) {
      if (!v->is_number_unsigned()) config_error(where(key) + " must be a non-negative integer");
      out = v->get<std::uint64_t>();
    }
  }
  void boolean(const char* key, bool& out) {
    if (const json* v = take(key)) {
      if (!v->is_boolean()) config_error(where(key) + " must be a boolean");
      out = v->get<bool>();
    }
  }
  void str(const char* key, std::string& out) {
    if (const json* v = take(key)) {
      if (!v->is_string()) config_error(where(key) + " must be a string");
      out = v->get<std::string>();
    }
  }
  template <class T>
  void list(const char* key, std::vector<T>& out) {
    if (const json* v = take(key)) {
      if (!v->is_array()) config_error(where(key) + " must be an array");
      out.clear();
      for (const auto& e : *v) {
        if constexpr (std::is_same_v<T, std::string>) {
          if (!e.is_string()) config_error(where(key) + " must contain strings");
        } else {
          if (!e.is_number()) config_error(where(key) + " must contain numbers");
        }
        out.push_back(e.get<T>());
      }
    }
  }
  const json* child(const char* key) { return take(key); }
  bool has(const char* key) const { return j_.contains(key); }
  std::string where(const char* key) const { return path_ + "." + key; }

  void finish() const {
    for (const auto& [k, v] : j_.items())
      if (!seen_.count(k)) config_error("unknown key " + path_ + "." + k);
  }

 private:
  const json* take(const char* key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void read_grid(const json& j, const std::string& path, GridSettings& g) {
  Reader r(j, path);
  r.integer("dim_t", g.dim_t);
  r.integer("M", g.M);
  r.num("L", g.L);
  r.num("H", g.H);
  r.integer("MN", g.MN);
  r.integer("normal_points", g.normal_points);
  r.finish();
  if (g.dim_t < 1 || g.dim_t > 2) config_error(path + ".dim_t must be 1 or 2");
  if (g.normal_points < 5) config_error(path + ".normal_points must be >= 5");
}

std::string scenario_for(const std::string& sub, const std::string& requested) {
  static const std::map<std::string, std::set<std::string>> allowed{
      {"validate", {"validate"}},
      {"scan", {"scan"}},
      {"solve", {"solve-whole", "solve-half", "solve-full"}},
      {"rbound", {"rbound"}},
      {"probe", {"probe-contraction"}}};
  auto it = allowed.find(sub);
  if (it == allowed.end()) config_error("unknown subcommand " + sub);
  if (requested.empty()) return sub == "solve" ? "solve-full" : sub == "probe" ? "probe-contraction" : sub;
  if (!it->second.count(requested)) config_error("scenario " + requested + " does not belong to subcommand " + sub);
  return requested;
}

ojson cjson(cplx z) { return ojson{{"re", z.real()}, {"im", z.imag()}}; }

ojson params_json(const MaterialParams& p) {
  return ojson{{"mu", p.mu}, {"nu", p.nu}, {"kappa", p.kappa}, {"gamma", p.gamma}, {"rho_ref", p.rho_ref}};
}

ojson residual_json(const ResidualReport& rep) {
  ojson rows = ojson::array();
  for (const auto& r : rep.rows) rows.push_back(ojson{{"row", r.name}, {"max_abs", r.max_abs}, {"l2", r.l2}});
  return ojson{{"rows", rows}, {"data_norm", rep.data_norm}, {"relative", rep.worst_relative()}};
}

std::string timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot create output directory " + dir + ": " + ec.message());
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorKind::IoError, "cannot open " + path + " for writing");
  os << text;
  if (!os) throw Error(ErrorKind::IoError, "write failed for " + path);
}

// Little-endian complex128 pairs, row-major, plus a JSON sidecar.
ojson write_field(const std::string& dir, const std::string& name, const ScalarField& v,
                  const std::vector<std::size_t>& shape, const std::vector<std::string>& axes, const ojson& extra) {
  const std::string bin = dir + "/" + name + ".bin";
  std::ofstream os(bin, std::ios::binary);
  if (!os) throw Error(ErrorKind::IoError, "cannot open " + bin + " for writing");
  for (const cplx& z : v) {
    double parts[2] = {z.real(), z.imag()};
    if constexpr (std::endian::native == std::endian::big) {
      for (double& p : parts) {
        auto bits = std::bit_cast<std::uint64_t>(p);
        bits = __builtin_bswap64(bits);
        p = std::bit_cast<double>(bits);
      }
    }
    os.write(reinterpret_cast<const char*>(parts), sizeof parts);
  }
  if (!os) throw Error(ErrorKind::IoError, "write failed for " + bin);
  ojson side{{"file", name + ".bin"}, {"dtype", "complex128"}, {"byte_order", "little"}, {"layout", "row-major"},
             {"shape", shape}, {"axes", axes}};
  for (const auto& [k, val] : extra.items()) side[k] = val;
  write_text(dir + "/" + name + ".json", side.dump(2) + "\n");
  return ojson{{"name", name}, {"sidecar", name + ".json"}};
}

Sector scenario_sector(const ScenarioConfig& cfg, const Model& model, double offset) {
  return Sector{cfg.sigma ? *cfg.sigma : model.dc.sigma_w + offset, cfg.delta};
}

FullGrid full_grid(const GridSettings& g) { return FullGrid{TangentialGrid{g.dim_t, g.M, g.L}, g.H, g.MN}; }

void run_validate(const ScenarioConfig& cfg, ojson& rep, RunResult& res) {
  const Verdict v = validate(cfg.params);
  ojson fails = ojson::array();
  for (ErrorKind k : v.failures()) fails.push_back(to_string(k));
  rep["verdict"] = ojson{{"ok", v.ok()}, {"failures", fails}};
  if (!v.ok()) {
    res.exit_code = 2;
    res.message = v.message();
    return;
  }
  const DerivedConstants dc = derive_constants(cfg.params);
  rep["derived"] = ojson{{"eta_w", dc.eta_w}, {"sigma_w", dc.sigma_w}, {"s1", cjson(dc.s1)}, {"s2", cjson(dc.s2)}};
}

void run_scan(const ScenarioConfig& cfg, const Model& model, ojson& rep, std::string& csv) {
  const ScanTarget target = scan_target_from_string(cfg.scan.target);
  const Sector sector = scenario_sector(cfg, model, cfg.scan.sigma_offset);
  const ScanResult r = scan_lower_bound(target, sector, cfg.scan.grid, model);
  ojson s{{"target", to_string(target)},
          {"power", homogeneity_power(target)},
          {"sector", {{"sigma", sector.sigma}, {"delta", sector.delta}}},
          {"grid", {{"n_lambda", r.grid.n_lambda}, {"n_angle", r.grid.n_angle}, {"n_xi", r.grid.n_xi}}},
          {"points", r.points},
          {"C", r.C},
          {"argmin", {{"xi", r.argmin_xi}, {"lambda", cjson(r.argmin_lambda)}}}};
  csv = "grid,n_lambda,n_angle,n_xi,C\nbase," + std::to_string(r.grid.n_lambda) + "," +
        std::to_string(r.grid.n_angle) + "," + std::to_string(r.grid.n_xi) + "," + std::to_string(r.C) + "\n";
  if (cfg.scan.refine) {
    const ScanResult f = scan_lower_bound(target, sector, cfg.scan.grid.refined(), model);
    s["refined_C"] = f.C;
    s["refinement_change"] = r.C > 0.0 ? std::abs(f.C - r.C) / r.C : INFINITY;
    csv += "refined," + std::to_string(f.grid.n_lambda) + "," + std::to_string(f.grid.n_angle) + "," +
           std::to_string(f.grid.n_xi) + "," + std::to_string(f.C) + "\n";
  }
  rep["scan"] = s;
  if (cfg.scan.sigma_star) {
    const SigmaStar st = empirical_sigma_star(model, cfg.scan.grid);
    rep["sigma_star"] = ojson{{"sigma_w", model.dc.sigma_w},
                              {"empirical", st.sigma_star},
                              {"reference_C", st.reference_C},
                              {"threshold", st.threshold},
                              {"bisection_steps", st.bisection_steps}};
  }
}

void run_solve_whole(const ScenarioConfig& cfg, const Model& model, ojson& rep, const std::string& dir) {
  const BoxGrid box = BoxGrid::uniform(cfg.grid.dim_t + 1, cfg.grid.M, cfg.grid.L);
  const WholeManufactured m = random_whole_pair(box, cfg.lambda, model, cfg.seed);
  const WholeField sol = solve_whole(box, m.data.d, m.data.f, cfg.lambda, model);
  const std::vector<double> w(box.size(), box.cell_volume());
  double num = 0.0, den = 0.0;
  for (int c = 0; c <= box.dim; ++c) {
    const ScalarField& a = c == 0 ? sol.rho : sol.u[c - 1];
    const ScalarField& b = c == 0 ? m.star.rho : m.star.u[c - 1];
    ScalarField diff = a;
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= b[i];
    num += weighted_norm_sq(diff, w);
    den += weighted_norm_sq(b, w);
  }
  rep["lambda"] = cjson(cfg.lambda);
  rep["residual"] = residual_json(residual_whole(sol, m.data.d, m.data.f, cfg.lambda, model));
  rep["recovery_error"] = std::sqrt(num / den);
  if (cfg.solve.write_fields) {
    std::vector<std::size_t> shape(box.counts.begin(), box.counts.end());
    std::vector<std::string> axes;
    for (int a = 0; a < box.dim; ++a) axes.push_back("x" + std::to_string(a + 1));
    ojson extra{{"lengths", box.lengths}, {"origin", box.origin}};
    ojson files = ojson::array();
    files.push_back(write_field(dir, "rho", sol.rho, shape, axes, extra));
    for (int a = 0; a < box.dim; ++a) files.push_back(write_field(dir, "u" + std::to_string(a + 1), sol.u[a], shape, axes, extra));
    rep["fields"] = files;
  }
}

void write_half_fields(ojson& rep, const std::string& dir, const std::vector<ScalarField>& comps, const TangentialGrid& tg,
                       const std::vector<double>& xn) {
  std::vector<std::size_t> shape(tg.dim_t, tg.M);
  shape.push_back(xn.size());
  std::vector<std::string> axes;
  for (int a = 0; a < tg.dim_t; ++a) axes.push_back("x" + std::to_string(a + 1));
  axes.push_back("x" + std::to_string(tg.dim_t + 1));
  ojson extra{{"tangential_length", tg.L}, {"x_normal", xn}};
  ojson files = ojson::array();
  for (std::size_t c = 0; c < comps.size(); ++c)
    files.push_back(write_field(dir, c == 0 ? "rho" : "u" + std::to_string(c), comps[c], shape, axes, extra));
  rep["fields"] = files;
}

void run_solve_half(const ScenarioConfig& cfg, const Model& model, ojson& rep, const std::string& dir) {
  const TangentialGrid tg{cfg.grid.dim_t, cfg.grid.M, cfg.grid.L};
  const std::vector<double> xn = chebyshev_normal_samples(cfg.grid.H, cfg.grid.normal_points);
  const BoundaryData b = random_boundary_data(tg, cfg.seed);
  const ReducedSolution sol = solve_reduced(b.g, b.h, cfg.lambda, tg, xn, model);
  rep["lambda"] = cjson(cfg.lambda);
  rep["residual"] = residual_json(residual_reduced(sol, b.g, b.h, model));
  if (cfg.solve.write_fields) {
    std::vector<ScalarField> comps;
    for (int c = 0; c <= sol.dim(); ++c) comps.push_back(sol.sample(c, DerivOrder{}));
    write_half_fields(rep, dir, comps, tg, xn);
  }
}

void run_solve_full(const ScenarioConfig& cfg, const Model& model, ojson& rep, const std::string& dir) {
  const FullGrid grid = full_grid(cfg.grid);
  cplx lambda = cfg.lambda;
  if (cfg.solve.auto_lambda0) {
    const Lambda0Selection sel = select_lambda0(model, grid, cfg.solve.angle, cfg.seed);
    lambda = sel.lambda;
    rep["lambda0"] = ojson{{"lambda", cjson(sel.lambda)}, {"doublings", sel.doublings}, {"one_step_ratio", sel.ratio}};
  }
  std::optional<ManufacturedPair> star;
  FullData F;
  if (cfg.solve.data == "manufactured") {
    star = random_manufactured_pair(grid, lambda, model, cfg.seed);
    F = manufactured_data(*star, grid, lambda, model);
  } else {
    F = random_full_data(grid, cfg.seed);
  }
  const GeneralSolution gs = solve_general(F, lambda, model, cfg.solve.max_iter, cfg.solve.tol);
  rep["lambda"] = cjson(lambda);
  rep["data"] = cfg.solve.data;
  rep["residual"] = residual_json(residual_full(gs.solution, F, model));
  if (star) rep["recovery_error"] = relative_error(gs.solution, *star);
  rep["neumann"] = ojson{{"iterations", gs.state.k},
                         {"converged", gs.state.converged},
                         {"increments", gs.state.increments},
                         {"ratios", gs.state.ratios}};
  if (cfg.solve.write_fields) {
    std::vector<ScalarField> comps;
    for (int c = 0; c <= grid.dim(); ++c) comps.push_back(gs.solution.sample(c));
    write_half_fields(rep, dir, comps, grid.tg, grid.xn());
  }
}

void run_rbound(const ScenarioConfig& cfg, const Model& model, ojson& rep, std::string& csv) {
  static const std::map<std::string, std::pair<RFamily, int>> names{
      {"S", {RFamily::SA, 0}}, {"T", {RFamily::TB, 0}}, {"dS", {RFamily::SA, 1}}, {"dT", {RFamily::TB, 1}}};
  std::vector<std::pair<RFamily, int>> fams;
  for (const auto& f : cfg.rbound.families) {
    auto it = names.find(f);
    if (it == names.end()) config_error("rbound.families: unknown family " + f + " (use S, T, dS, dT)");
    fams.push_back(it->second);
  }
  RBoundOptions opt;
  opt.grid = full_grid(cfg.rbound.grid);
  opt.sector = scenario_sector(cfg, model, 0.2);
  opt.lambda_max = cfg.rbound.lambda_max;
  opt.m_max = cfg.rbound.m_max;
  opt.trials = cfg.rbound.trials;
  opt.seed = cfg.seed;
  opt.general = cfg.rbound.general;
  const auto est = estimate_rbounds(fams, opt, model);
  ojson arr = ojson::array();
  for (const auto& e : est)
    arr.push_back(ojson{{"family_id", e.family_id},
                        {"n", e.n},
                        {"p", e.p},
                        {"m_max", e.m_max},
                        {"trials", e.trials},
                        {"estimated_bound", e.estimated_bound},
                        {"bound_at_half_trials", e.bound_after(e.trials / 2)},
                        {"sector", e.sector}});
  rep["estimates"] = arr;
  std::ostringstream os;
  os << "trial";
  for (const auto& f : cfg.rbound.families) os << "," << f;
  os << "\n";
  os.precision(17);
  for (int t = 0; t < opt.trials; ++t) {
    os << t;
    for (const auto& e : est) os << "," << e.trial_ratios[t];
    os << "\n";
  }
  csv = os.str();
}

void run_probe(const ScenarioConfig& cfg, const Model& model, ojson& rep, std::string& csv) {
  std::vector<cplx> lambdas;
  for (double r : cfg.probe.moduli) lambdas.push_back(std::polar(r, cfg.probe.angle));
  const Sector sector = scenario_sector(cfg, model, 0.1);
  const auto rows = contraction_probe(model, sector, lambdas, full_grid(cfg.probe.grid), cfg.seed);
  ojson arr = ojson::array();
  std::vector<double> mod, ratio;
  std::ostringstream os;
  os.precision(17);
  os << "modulus,ratio\n";
  for (const auto& r : rows) {
    arr.push_back(ojson{{"modulus", std::abs(r.lambda)}, {"lambda", cjson(r.lambda)}, {"ratio", r.ratio}});
    mod.push_back(std::abs(r.lambda));
    ratio.push_back(r.ratio);
    os << std::abs(r.lambda) << "," << r.ratio << "\n";
  }
  rep["probe"] = arr;
  if (rows.size() >= 2) rep["spearman"] = spearman(mod, ratio);
  csv = os.str();
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> s{"validate", "scan", "solve", "rbound", "probe"};
  return s;
}

ScenarioConfig parse_config(const json& doc, const std::string& subcommand) {
  ScenarioConfig c;
  Reader r(doc, "config");
  std::string requested;
  r.str("scenario", requested);
  c.scenario = scenario_for(subcommand, requested);
  if (const json* p = r.child("params")) {
    Reader q(*p, "params");
    q.num("mu", c.params.mu);
    q.num("nu", c.params.nu);
    q.num("kappa", c.params.kappa);
    q.num("gamma", c.params.gamma);
    q.num("rho_ref", c.params.rho_ref);
    q.boolean("physical", c.physical);
    q.finish();
  }
  if (const json* p = r.child("sector")) {
    Reader q(*p, "sector");
    q.num("sigma", c.sigma);
    q.num("delta", c.delta);
    q.finish();
  }
  if (const json* p = r.child("lambda")) {
    Reader q(*p, "lambda");
    if (q.has("re") || q.has("im")) {
      double re = 0.0, im = 0.0;
      q.num("re", re);
      q.num("im", im);
      c.lambda = {re, im};
    } else {
      double mod = std::abs(c.lambda), arg = std::arg(c.lambda);
      q.num("modulus", mod);
      q.num("arg", arg);
      c.lambda = std::polar(mod, arg);
    }
    q.finish();
  }
  if (const json* p = r.child("grid")) read_grid(*p, "grid", c.grid);
  if (const json* p = r.child("scan")) {
    Reader q(*p, "scan");
    q.str("target", c.scan.target);
    q.integer("n_lambda", c.scan.grid.n_lambda);
    q.integer("n_angle", c.scan.grid.n_angle);
    q.integer("n_xi", c.scan.grid.n_xi);
    q.num("lambda_max", c.scan.grid.lambda_max);
    q.num("lambda_floor", c.scan.grid.lambda_floor);
    q.num("xi_min", c.scan.grid.xi_min);
    q.num("xi_max", c.scan.grid.xi_max);
    q.num("sigma_offset", c.scan.sigma_offset);
    q.boolean("refine", c.scan.refine);
    q.boolean("sigma_star", c.scan.sigma_star);
    q.finish();
    try {
      (void)scan_target_from_string(c.scan.target);
    } catch (const Error& e) {
      config_error(std::string("scan.target: ") + e.what());
    }
  }
  if (const json* p = r.child("solve")) {
    Reader q(*p, "solve");
    q.str("data", c.solve.data);
    q.integer("max_iter", c.solve.max_iter);
    q.num("tol", c.solve.tol);
    q.boolean("auto_lambda0", c.solve.auto_lambda0);
    q.num("angle", c.solve.angle);
    q.boolean("write_fields", c.solve.write_fields);
    q.finish();
    if (c.solve.data != "manufactured" && c.solve.data != "random")
      config_error("solve.data must be \"manufactured\" or \"random\"");
  }
  if (const json* p = r.child("rbound")) {
    Reader q(*p, "rbound");
    q.list("families", c.rbound.families);
    q.integer("m_max", c.rbound.m_max);
    q.integer("trials", c.rbound.trials);
    q.num("lambda_max", c.rbound.lambda_max);
    q.boolean("general", c.rbound.general);
    if (const json* g = q.child("grid")) read_grid(*g, "rbound.grid", c.rbound.grid);
    q.finish();
  }
  if (const json* p = r.child("probe")) {
    Reader q(*p, "probe");
    q.list("moduli", c.probe.moduli);
    q.num("angle", c.probe.angle);
    if (const json* g = q.child("grid")) read_grid(*g, "probe.grid", c.probe.grid);
    q.finish();
  }
  r.u64("seed", c.seed);
  if (const json* p = r.child("output")) {
    Reader q(*p, "output");
    q.str("dir", c.out_dir);
    q.str("format", c.format);
    q.finish();
  }
  r.finish();
  if (c.format != "json" && c.format != "csv") config_error("output.format must be json or csv");
  return c;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SingularLopatinskii:
    case ErrorKind::NeumannDiverged:
    case ErrorKind::BranchCutHit:
    case ErrorKind::ZeroDenominator:
    case ErrorKind::DerivativeStepUnderflow:
      return 3;
    case ErrorKind::IoError:
      return 4;
    default:
      return 2;
  }
}

RunResult run(const ScenarioConfig& cfg) {
  RunResult res;
  ojson& rep = res.report;
  rep["scenario"] = cfg.scenario;
  rep["generated_at"] = timestamp();
  rep["seed"] = cfg.seed;
  rep["params"] = params_json(cfg.params);
  std::string csv;
  try {
    ensure_dir(cfg.out_dir);
    if (cfg.scenario == "validate") {
      run_validate(cfg, rep, res);
    } else {
      const MaterialParams p = cfg.physical ? rescale(cfg.params) : cfg.params;
      if (cfg.physical) rep["rescaled_params"] = params_json(p);
      const Model model(p);
      if (cfg.scenario == "scan")
        run_scan(cfg, model, rep, csv);
      else if (cfg.scenario == "solve-whole")
        run_solve_whole(cfg, model, rep, cfg.out_dir);
      else if (cfg.scenario == "solve-half")
        run_solve_half(cfg, model, rep, cfg.out_dir);
      else if (cfg.scenario == "solve-full")
        run_solve_full(cfg, model, rep, cfg.out_dir);
      else if (cfg.scenario == "rbound")
        run_rbound(cfg, model, rep, csv);
      else if (cfg.scenario == "probe-contraction")
        run_probe(cfg, model, rep, csv);
      else
        config_error("unknown scenario " + cfg.scenario);
    }
  } catch (const Error& e) {
    res.exit_code = exit_code_for(e.kind());
    res.message = e.what();
    rep["error"] = ojson{{"kind", to_string(e.kind())}, {"message", e.what()}};
  }
  rep["status"] = res.exit_code == 0 ? "ok" : "failed";
  try {
    if (res.exit_code != 4) {
      write_text(cfg.out_dir + "/report.json", rep.dump(2) + "\n");
      if (cfg.format == "csv" && !csv.empty()) write_text(cfg.out_dir + "/" + cfg.scenario + ".csv", csv);
    }
  } catch (const Error& e) {
    res.exit_code = 4;
    res.message = e.what();
  }
  return res;
}

int main(int argc, char** argv) {
  CLI::App app{"Resolvent solver for the linearized Korteweg-type compressible system on the half space"};
  app.require_subcommand(1);
  std::string config_path, out, format;
  std::uint64_t seed = 0;
  for (const auto& name : subcommands()) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " scenario");
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--seed", seed, "random seed (overrides config)");
    sub->add_option("--out", out, "output directory (overrides config)");
    sub->add_option("--format", format, "json or csv (overrides config)")->check(CLI::IsMember({"json", "csv"}));
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const std::string sub = app.get_subcommands().front()->get_name();
  const CLI::App* s = app.get_subcommands().front();
  ScenarioConfig cfg;
  try {
    json doc = json::object();
    if (!config_path.empty()) {
      std::ifstream is(config_path);
      if (!is) throw Error(ErrorKind::IoError, "cannot read config " + config_path);
      try {
        doc = json::parse(is);
      } catch (const json::parse_error& e) {
        throw Error(ErrorKind::ConfigError, std::string("invalid JSON in ") + config_path + ": " + e.what());
      }
    }
    cfg = parse_config(doc, sub);
    if (s->count("--seed")) cfg.seed = seed;
    if (s->count("--out")) cfg.out_dir = out;
    if (s->count("--format")) cfg.format = format;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
  const RunResult r = run(cfg);
  if (r.exit_code != 0)
    std::cerr << "error: " << r.message << "\n";
  else
    std::cout << cfg.out_dir << "/report.json\n";
  return r.exit_code;
}

}  // namespace korteweg::cli
