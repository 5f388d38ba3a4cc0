#include "skewlab/experiment.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "skewlab/cohomology.hpp"
#include "skewlab/correlations.hpp"
#include "skewlab/error.hpp"
#include "skewlab/spectral.hpp"

#ifndef SKEWLAB_VERSION
#define SKEWLAB_VERSION "0.0.0"
#endif

namespace skewlab {

const char* library_version() { return SKEWLAB_VERSION; }

namespace {

constexpr int kSchemaVersion = 1;

Json default_observable() {
  // Analytic test observable: c_{nu,a} = exp(-|nu| - |a|), nu_max = 3, x-degree 2.
  Json modes = Json::array();
  for (int nu = -3; nu <= 3; ++nu)
    for (int a = -2; a <= 2; ++a) modes.push_back(Json::array({nu, a, std::exp(-std::abs(nu) - std::abs(a)), 0.0}));
  return Json{{"degree", 2}, {"modes", modes}};
}

const std::map<std::string, Json>& command_defaults() {
  static const std::map<std::string, Json> table = [] {
    std::map<std::string, Json> t;
    t["spectrum"] = {{"nu", {0}},         {"m", 2.0},       {"ladder", {16, 32}},
                     {"stab_tol", 1e-4},  {"lambda", 0.0},  {"dump_matrix", false}};
    t["lyapunov"] = {{"nu", {2}}, {"m", 3.0}, {"weights", "sobolev"}, {"cutoff", 32}, {"n_max", 10},
                     {"samples", 8}};
    t["density"] = {{"j", 0}, {"n_pullback", 40}, {"cutoff", 32}, {"tol", 1e-6}};
    t["captivity"] = {{"j0", 0},          {"n_max", 12},   {"y_points", 64}, {"eta_points", 65},
                      {"exact_eta", false}, {"kappa", 0.0}, {"zone_scale", 1.0}};
    t["egorov"] = {{"nu", {64, 128}},       {"n", 4},
                   {"m", 6.0},              {"j0", 0},
                   {"window_extra", 2.0},   {"symbol_y_points", 1024},
                   {"symbol_eta_points", 4097}, {"bound_y_points", 64},
                   {"dense_check", false}};
    t["cohomology"] = {{"j0", 0},
                       {"n_max", 10},
                       {"y_points", 64},
                       {"tol", 1e-10},
                       {"bracket_n", {2, 4, 6}},
                       {"rho", 0.0},
                       {"eps_grid", {0.1, 0.05, 0.02, 0.01, 0.005, 0.0025}},
                       {"samples", 4}};
    t["transversality"] = {{"n_max", 10}, {"z_points", 64}};
    t["correlations"] = {{"kind", "op"},  {"j0", 0},     {"n_max", 12},  {"cutoff", 32},
                         {"n_pullback", 40}, {"density_tol", 1e-8}, {"fit_lo", 2}, {"fit_hi", -1},
                         {"phi", default_observable()}, {"psi", default_observable()}};
    t["perturbation-distance"] = {{"nu", 1},  {"n", 2}, {"m", 2.0}, {"cutoff", 32},
                                  {"eps_grid", {0.08, 0.04, 0.02, 0.01}}, {"samples", 8}};
    return t;
  }();
  return table;
}

[[noreturn]] void config_fail(const std::string& what) { throw ConfigError(what); }

void reject_unknown(const Json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) config_fail(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) config_fail("unknown key '" + key + "' in " + where);
  }
}

template <class T>
T read(const Json& obj, const char* key, T fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    config_fail("bad value for '" + std::string(key) + "' in " + where);
  }
}

TrigPolynomial parse_trig(const Json& j, const std::string& where) {
  reject_unknown(j, {"constant", "cos", "sin", "winding"}, where);
  return TrigPolynomial(read<double>(j, "constant", 0.0, where),
                        read<std::vector<double>>(j, "cos", {}, where),
                        read<std::vector<double>>(j, "sin", {}, where));
}

Json trig_json(const TrigPolynomial& p) {
  return Json{{"constant", p.constant()}, {"cos", p.cos_coeffs()}, {"sin", p.sin_coeffs()}};
}

bool same_kind(const Json& a, const Json& b) {
  if (a.is_number() && b.is_number()) return !(a.is_number_integer() && b.is_number_float());
  return a.type() == b.type();
}

Json merge_params(const std::string& command, const Json& given) {
  const auto it = command_defaults().find(command);
  if (it == command_defaults().end()) config_fail("unknown command '" + command + "'");
  Json out = it->second;
  if (given.is_null()) return out;
  if (!given.is_object()) config_fail("command parameters must be an object");
  for (const auto& [key, value] : given.items()) {
    if (!out.contains(key)) config_fail("unknown parameter '" + key + "' for command " + command);
    if (!same_kind(out[key], value)) config_fail("parameter '" + key + "' has the wrong type");
    out[key] = value;
  }
  return out;
}

Observable2D parse_observable(const Json& j) {
  reject_unknown(j, {"degree", "modes"}, "observable");
  Observable2D o;
  o.degree = read<int>(j, "degree", 0, "observable");
  if (o.degree < 0) config_fail("observable degree must be >= 0");
  for (const auto& m : read<std::vector<std::vector<double>>>(j, "modes", {}, "observable")) {
    if (m.size() != 4) config_fail("observable modes are [nu, a, re, im]");
    const int nu = static_cast<int>(m[0]);
    const int a = static_cast<int>(m[1]);
    if (nu != m[0] || a != m[1] || std::abs(a) > o.degree) config_fail("bad observable mode index");
    o.set(nu, a, {m[2], m[3]});
  }
  return o;
}

Json cjson(cplx z) { return Json::array({z.real(), z.imag()}); }

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string CsvTable::str() const {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + row[i];
    out += '\n';
  }
  return out;
}

std::string serialize_report(const Json& report) { return report.dump(2) + "\n"; }

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, v] : command_defaults()) n.push_back(k);
    return n;
  }();
  return names;
}

TrigPolynomial basis_function(const std::string& id, bool map_direction) {
  int j = 0;
  const bool is_sin = id.rfind("sin", 0) == 0;
  const bool is_cos = id.rfind("cos", 0) == 0;
  if (!(is_sin || is_cos) || id.size() < 4) config_fail("unknown basis id '" + id + "'");
  const auto res = std::from_chars(id.data() + 3, id.data() + id.size(), j);
  if (res.ec != std::errc() || res.ptr != id.data() + id.size() || j < 1)
    config_fail("unknown basis id '" + id + "'");
  const double amp = map_direction ? 1.0 / (kTwoPi * j) : 1.0;
  return is_sin ? TrigPolynomial::sine(j, amp) : TrigPolynomial::cosine(j, amp);
}

ExperimentConfig ExperimentConfig::from_json(const Json& j) {
  reject_unknown(j, {"schema_version", "system", "noise", "command"}, "config");
  ExperimentConfig c;
  c.schema_version = read<int>(j, "schema_version", -1, "config");
  if (c.schema_version != kSchemaVersion)
    config_fail("schema_version must be " + std::to_string(kSchemaVersion));

  const Json sys = j.value("system", Json::object());
  reject_unknown(sys, {"k", "g", "tau"}, "system");
  c.system.k = read<int>(sys, "k", 2, "system");
  if (c.system.k < 2) config_fail("k must be >= 2");
  c.system.g = parse_trig(sys.value("g", Json::object()), "system.g");
  if (sys.value("g", Json::object()).contains("winding")) config_fail("g has no winding");
  const Json tau = sys.value("tau", Json::object());
  c.system.tau = parse_trig(tau, "system.tau");
  c.system.winding = read<int>(tau, "winding", 0, "system.tau");

  const Json noise = j.value("noise", Json::object());
  reject_unknown(noise, {"seed", "J", "d", "map_basis", "ceiling_basis", "epsilon"}, "noise");
  c.noise.seed = read<std::uint64_t>(noise, "seed", 1, "noise");
  c.noise.J = read<int>(noise, "J", 256, "noise");
  c.noise.map_basis = read<std::vector<std::string>>(noise, "map_basis", {}, "noise");
  c.noise.ceiling_basis = read<std::vector<std::string>>(noise, "ceiling_basis", {}, "noise");
  c.noise.epsilon = read<double>(noise, "epsilon", 0.0, "noise");
  const int d = static_cast<int>(c.noise.map_basis.size() + c.noise.ceiling_basis.size());
  if (read<int>(noise, "d", d, "noise") != d) config_fail("noise.d does not match the basis ids");
  if (c.noise.J < 1) config_fail("noise.J must be positive");
  if (c.noise.epsilon < 0.0) config_fail("noise.epsilon must be >= 0");
  for (const auto& id : c.noise.map_basis) basis_function(id, true);
  for (const auto& id : c.noise.ceiling_basis) basis_function(id, false);

  if (!j.contains("command")) config_fail("missing command block");
  const Json& cmd = j.at("command");
  if (!cmd.is_object()) config_fail("command must be an object");
  reject_unknown(cmd, {"name", "params"}, "command");
  c.command = read<std::string>(cmd, "name", "", "command");
  c.params = merge_params(c.command, cmd.value("params", Json()));
  if (c.command == "correlations") {
    parse_observable(c.params["phi"]);
    parse_observable(c.params["psi"]);
    const std::string kind = c.params["kind"];
    if (kind != "op" && kind != "cl") config_fail("correlations.kind must be 'op' or 'cl'");
  }
  if (c.command == "lyapunov") {
    const std::string w = c.params["weights"];
    if (w != "sobolev" && w != "semiclassical") config_fail("lyapunov.weights must be sobolev or semiclassical");
  }
  return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_fail("cannot read config " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    config_fail(std::string("malformed JSON: ") + e.what());
  }
  return from_json(j);
}

Json ExperimentConfig::to_json() const {
  Json tau = trig_json(system.tau);
  tau["winding"] = system.winding;
  return Json{
      {"schema_version", schema_version},
      {"system", {{"k", system.k}, {"g", trig_json(system.g)}, {"tau", tau}}},
      {"noise",
       {{"seed", noise.seed},
        {"J", noise.J},
        {"d", noise.map_basis.size() + noise.ceiling_basis.size()},
        {"map_basis", noise.map_basis},
        {"ceiling_basis", noise.ceiling_basis},
        {"epsilon", noise.epsilon}}},
      {"command", {{"name", command}, {"params", params}}}};
}

SkewProductSystem ExperimentConfig::make_system() const {
  return SkewProductSystem(system.k, CircleDiffeo(system.g), Ceiling(system.tau, system.winding));
}

PerturbationFamily ExperimentConfig::make_family() const {
  PerturbationFamily f;
  for (const auto& id : noise.map_basis) f.map_basis.push_back(basis_function(id, true));
  for (const auto& id : noise.ceiling_basis) f.ceiling_basis.push_back(basis_function(id, false));
  return f;
}

NoiseModel ExperimentConfig::make_model() const {
  const PerturbationFamily f = make_family();
  return {make_system(), f, sample_path(noise.seed, noise.J, f.dimension())};
}

namespace {

struct Runner {
  const ExperimentConfig& cfg;
  const Json& p;
  Json& results;
  Json& meta;
  std::map<std::string, CsvTable>& tables;

  std::string fd(double v) { return format_double(v); }
  std::string fi(long v) { return std::to_string(v); }

  void spectrum() {
    const SkewProductSystem sys = cfg.make_system();
    const auto ladder = p["ladder"].get<std::vector<int>>();
    CsvTable& eig = tables["eigenvalues.csv"];
    eig.header = {"nu", "index", "re", "im", "abs", "resonance", "drift"};
    results["spectra"] = Json::array();
    for (int nu : p["nu"].get<std::vector<int>>()) {
      const SpectralReport r = resonances(sys, nu, p["m"].get<double>(), ladder, p["stab_tol"].get<double>(),
                                          p["lambda"].get<double>());
      Json levels = Json::array();
      for (const auto& l : r.levels)
        levels.push_back({{"cutoff", l.cutoff}, {"points", l.points}, {"solver_ok", l.solver_ok}});
      Json eigs = Json::array();
      for (std::size_t i = 0; i < r.finest.size(); ++i) {
        const auto& e = r.finest[i];
        eigs.push_back({{"value", cjson(e.value)}, {"resonance", e.resonance}, {"drift", e.drift}});
        eig.rows.push_back({fi(nu), fi(static_cast<long>(i)), fd(e.value.real()), fd(e.value.imag()),
                            fd(std::abs(e.value)), e.resonance ? "1" : "0", fd(e.drift)});
      }
      Json res = Json::array();
      for (cplx z : r.resonances()) res.push_back(cjson(z));
      results["spectra"].push_back({{"nu", nu},
                                    {"r_m", r.r_m},
                                    {"lambda", r.lambda},
                                    {"spectral_radius", r.spectral_radius()},
                                    {"solver_ok", r.solver_ok},
                                    {"resonances", res},
                                    {"eigenvalues", eigs}});
      meta["ladder"][std::to_string(nu)] = levels;
      if (!r.solver_ok) throw Error("eigenvalue solver failed at nu = " + std::to_string(nu));
      if (p["dump_matrix"].get<bool>()) {
        const auto grid = FrequencyGrid::guarded(sys, nu, ladder.back());
        const OperatorMatrix m = assemble(sys, nu, grid, Direction::Adjoint);
        CsvTable& t = tables["matrix_nu" + std::to_string(nu) + ".csv"];
        t.header = {"row", "col", "re", "im"};
        for (int b = 0; b < grid.size(); ++b)
          for (int a = 0; a < grid.size(); ++a) {
            const cplx z = m.entries(b, a);
            if (z != cplx{}) t.rows.push_back({fi(grid.frequency(b)), fi(grid.frequency(a)), fd(z.real()), fd(z.imag())});
          }
      }
    }
  }

  void lyapunov_cmd() {
    const CocycleContext ctx(cfg.make_model(), cfg.noise.epsilon);
    CsvTable& t = tables["lyapunov.csv"];
    t.header = {"nu", "sample", "n", "log_norm"};
    results["estimates"] = Json::array();
    const double m = p["m"].get<double>();
    for (int nu : p["nu"].get<std::vector<int>>()) {
      const WeightScheme w =
          p["weights"] == "sobolev" ? WeightScheme::sobolev(m) : WeightScheme::semiclassical(m, nu == 0 ? 1 : nu);
      const LyapunovEstimate e = lyapunov(ctx, nu, w, p["cutoff"], p["n_max"], p["samples"]);
      for (std::size_t s = 0; s < e.log_norms.size(); ++s)
        for (std::size_t i = 0; i < e.log_norms[s].size(); ++i)
          t.rows.push_back({fi(nu), fi(static_cast<long>(s)), fi(static_cast<long>(i + 1)), fd(e.log_norms[s][i])});
      results["estimates"].push_back({{"nu", nu},
                                      {"slope", e.slope},
                                      {"spread", e.spread},
                                      {"residual", e.residual},
                                      {"per_sample", e.per_sample}});
      meta["grids"][std::to_string(nu)] = FrequencyGrid::guarded(ctx, nu, p["cutoff"]).points;
    }
  }

  void density_cmd() {
    const CocycleContext ctx(cfg.make_model(), cfg.noise.epsilon);
    const DensityResult h = invariant_density(ctx, p["j"], p["n_pullback"], p["cutoff"], p["tol"]);
    CsvTable& t = tables["density.csv"];
    t.header = {"a", "re", "im"};
    for (int i = 0; i < h.grid.size(); ++i)
      t.rows.push_back({fi(h.grid.frequency(i)), fd(h.coefficients(i).real()), fd(h.coefficients(i).imag())});
    results = {{"residual", h.residual}, {"depth", h.depth}, {"integral", h.integral}, {"min_value", h.min_value}};
    meta["points"] = h.grid.points;
  }

  void captivity_cmd() {
    const CocycleContext ctx(cfg.make_model(), cfg.noise.epsilon);
    const TrapZone zone = TrapZone::from_context(ctx, p["kappa"], p["zone_scale"]);
    const TrapGrid grid{p["y_points"], p["eta_points"], p["exact_eta"]};
    const CaptivityDiagnostic d = captivity_diagnostic(ctx, p["j0"], p["n_max"], zone, grid);
    CsvTable& t = tables["captivity.csv"];
    t.header = {"n", "N", "logN_over_n"};
    for (std::size_t i = 0; i < d.counts.size(); ++i)
      t.rows.push_back({fi(static_cast<long>(i + 1)), fi(d.counts[i]), fd(d.rates[i])});
    results = {{"counts", d.counts}, {"rates", d.rates}, {"infimum", d.infimum}, {"verdict", d.verdict}};
    meta["zone"] = {{"kappa", zone.kappa}, {"R_kappa", zone.radius}, {"C_tau", zone.c_tau}, {"lambda", zone.lambda}};
  }

  void egorov_cmd() {
    const CocycleContext ctx(cfg.make_model(), cfg.noise.epsilon);
    const TrapZone zone = TrapZone::from_context(ctx);
    const EscapeSpec spec = EscapeSpec::for_zone(zone, p["m"]);
    const int n = p["n"];
    const long j0 = p["j0"];
    const SymbolField field =
        principal_symbol(ctx, j0, n, spec, SymbolGrid{p["symbol_y_points"], p["symbol_eta_points"], 0.0});
    const SymbolBound bound = symbol_bound(ctx, j0, n, spec, zone, p["bound_y_points"]);
    results["sup_symbol"] = field.sup;
    results["min_symbol"] = field.min;
    results["bound"] = {{"total", bound.total},
                        {"escaping", bound.escaping},
                        {"trapped", bound.trapped},
                        {"count", bound.count}};
    results["sup_below_bound"] = field.sup <= bound.total;
    results["norms"] = Json::array();
    CsvTable& t = tables["egorov.csv"];
    t.header = {"nu", "cutoff", "norm_P", "sup_p", "excess", "bound"};
    const double window = spec.R + spec.delta0 + p["window_extra"].get<double>();
    for (int nu : p["nu"].get<std::vector<int>>()) {
      if (nu <= 0) config_fail("egorov nu values must be positive");
      const int cutoff = static_cast<int>(std::ceil(window * nu / kTwoPi));
      const FrequencyGrid grid = FrequencyGrid::guarded(ctx, nu, cutoff);
      const EgorovNorm e = pq_norm_sparse(ctx, nu, grid, j0, n, spec);
      Json row = {{"nu", nu},
                  {"cutoff", cutoff},
                  {"points", grid.points},
                  {"norm_P", e.norm_P},
                  {"excess", e.norm_P - field.sup},
                  {"lanczos_residual", e.lanczos_residual},
                  {"iterations", e.iterations},
                  {"nonzeros", e.nonzeros}};
      if (p["dense_check"].get<bool>()) {
        const PQOperators pq = pq_operators(ctx, nu, grid, j0, n, spec);
        row["dense_gap"] = std::abs(pq.norm_Q * pq.norm_Q - pq.norm_P);
      }
      results["norms"].push_back(row);
      t.rows.push_back({fi(nu), fi(cutoff), fd(e.norm_P), fd(field.sup), fd(e.norm_P - field.sup), fd(bound.total)});
    }
    meta["escape"] = {{"m", spec.m}, {"R", spec.R}, {"delta0", spec.delta0}, {"window", window}};
    meta["symbol_grid"] = {{"y_points", field.grid.y_points},
                           {"eta_points", field.grid.eta_points},
                           {"eta_max", field.grid.eta_max}};
  }

  void cohomology_cmd() {
    const NoiseModel model = cfg.make_model();
    const CocycleContext ctx(model, cfg.noise.epsilon);
    const StableGraphSolution S(ctx, p["tol"]);
    const TrapZone zone = TrapZone::from_context(ctx);
    const long j0 = p["j0"];
    const int y_points = p["y_points"];
    results["S"] = {{"depth", S.depth()}, {"tail_bound", S.tail_bound()}, {"at_0", S(j0, 0.0)}, {"at_half", S(j0, 0.5)}};
    CsvTable& t = tables["sandwich.csv"];
    t.header = {"n", "lower", "N", "upper", "holds"};
    results["sandwich"] = Json::array();
    for (int n = 1; n <= p["n_max"].get<int>(); ++n) {
      const SandwichResult r = sandwich_check(ctx, S, j0, n, zone, y_points);
      t.rows.push_back({fi(n), fi(r.lower), fi(r.count), fi(r.upper), r.holds ? "1" : "0"});
      results["sandwich"].push_back({{"n", n}, {"lower", r.lower}, {"count", r.count}, {"upper", r.upper}, {"holds", r.holds}});
    }
    double rho = p["rho"];
    if (rho <= 0.0) rho = zone.c_tau;
    CsvTable& b = tables["bracket.csv"];
    b.header = {"n", "eps", "holds", "lower", "upper", "sampled_min", "sampled_max"};
    results["bracket"] = Json::array();
    for (int n : p["bracket_n"].get<std::vector<int>>()) {
      const NoiseBracket nb = noise_bracket(model, n, zone.radius, rho, p["eps_grid"].get<std::vector<double>>(),
                                            p["samples"], y_points);
      for (const auto& row : nb.rows) {
        const long lo = row.sampled.empty() ? 0 : *std::min_element(row.sampled.begin(), row.sampled.end());
        const long hi = row.sampled.empty() ? 0 : *std::max_element(row.sampled.begin(), row.sampled.end());
        b.rows.push_back({fi(n), fd(row.eps), row.holds ? "1" : "0", fi(row.lower), fi(row.upper), fi(lo), fi(hi)});
      }
      results["bracket"].push_back({{"n", n}, {"eps_n", nb.eps_n}, {"samples", nb.samples}});
    }
    meta["zone"] = {{"R_kappa", zone.radius}, {"C1", zone.c1()}, {"rho", rho}, {"y_points", y_points}};
  }

  void transversality_cmd() {
    const SkewProductSystem sys = cfg.make_system();
    const double R = transversality_radius(sys);
    const auto rows = transversality_vs_captivity(sys, p["n_max"], p["z_points"]);
    CsvTable& t = tables["transversality.csv"];
    t.header = {"n", "N", "phi", "bound", "holds"};
    results["rows"] = Json::array();
    for (const auto& r : rows) {
      t.rows.push_back({fi(r.n), fi(r.count), fd(r.phi), fd(r.bound), r.holds ? "1" : "0"});
      results["rows"].push_back(
          {{"n", r.n}, {"count", r.count}, {"phi", r.phi}, {"bound", r.bound}, {"holds", r.holds}});
    }
    results["R"] = R;
    results["theta_R"] = ConeSpec::for_radius(sys, R).theta;
    results["theta_tau"] = ConeSpec::minimal(sys);
  }

  void correlations_cmd() {
    const CocycleContext ctx(cfg.make_model(), cfg.noise.epsilon);
    const Observable2D phi = parse_observable(p["phi"]);
    const Observable2D psi = parse_observable(p["psi"]);
    CorrelationEngine eng(ctx, p["cutoff"], p["n_pullback"], p["density_tol"]);
    const long j0 = p["j0"];
    const std::vector<cplx> series =
        p["kind"] == "op" ? eng.series_op(j0, p["n_max"], phi, psi) : eng.series_cl(j0, p["n_max"], phi, psi);
    CsvTable& t = tables["correlations.csv"];
    t.header = {"n", "re", "im", "abs"};
    Json values = Json::array();
    for (std::size_t n = 0; n < series.size(); ++n) {
      t.rows.push_back({fi(static_cast<long>(n)), fd(series[n].real()), fd(series[n].imag()), fd(std::abs(series[n]))});
      values.push_back(cjson(series[n]));
    }
    results["values"] = values;
    const DecayFit fit = fit_decay(series, p["fit_lo"], p["fit_hi"]);
    results["fit"] = {{"rho", fit.rho},       {"prefactor", fit.prefactor}, {"residual", fit.residual},
                      {"slack", fit.slack},   {"n_lo", fit.n_lo},           {"n_hi", fit.n_hi}};
    meta["density_residual"] = eng.density(j0 + p["n_max"].get<long>()).residual;
  }

  void distance_cmd() {
    const NoiseModel model = cfg.make_model();
    const auto eps = p["eps_grid"].get<std::vector<double>>();
    const auto rows = perturbation_distance(model, p["nu"], p["n"], WeightScheme::sobolev(p["m"]), p["cutoff"], eps,
                                            p["samples"]);
    CsvTable& t = tables["distance.csv"];
    t.header = {"eps", "distance", "samples"};
    results["rows"] = Json::array();
    for (const auto& r : rows) {
      t.rows.push_back({fd(r.eps), fd(r.distance), fi(r.samples)});
      results["rows"].push_back({{"eps", r.eps}, {"distance", r.distance}, {"samples", r.samples}});
    }
  }
};

}  // namespace

ExperimentOutput run_experiment(const ExperimentConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentOutput out;
  Json results = Json::object();
  Json meta = Json::object();
  std::string status = "ok";
  std::string error;
  try {
    Runner r{cfg, cfg.params, results, meta, out.tables};
    const std::string& c = cfg.command;
    if (c == "spectrum") r.spectrum();
    else if (c == "lyapunov") r.lyapunov_cmd();
    else if (c == "density") r.density_cmd();
    else if (c == "captivity") r.captivity_cmd();
    else if (c == "egorov") r.egorov_cmd();
    else if (c == "cohomology") r.cohomology_cmd();
    else if (c == "transversality") r.transversality_cmd();
    else if (c == "correlations") r.correlations_cmd();
    else if (c == "perturbation-distance") r.distance_cmd();
    else throw ConfigError("unknown command '" + c + "'");
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  } catch (const std::exception& e) {
    status = "numerical-failure";
    error = e.what();
    out.exit_code = 2;
  }
  out.report = Json{{"library_version", library_version()},
                    {"command", cfg.command},
                    {"status", status},
                    {"config", cfg.to_json()},
                    {"results", results},
                    {"metadata", meta}};
  if (!error.empty()) out.report["error"] = error;
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

int run_command(const std::string& command, const std::string& config_path, const std::string& out_dir,
                std::optional<std::uint64_t> seed_override, std::string* message) {
  namespace fs = std::filesystem;
  ExperimentConfig cfg;
  ExperimentOutput out;
  try {
    cfg = ExperimentConfig::from_file(config_path);
    if (cfg.command != command)
      throw ConfigError("config command '" + cfg.command + "' does not match '" + command + "'");
    if (seed_override) cfg.noise.seed = *seed_override;
    out = run_experiment(cfg);
  } catch (const Error& e) {
    if (message) *message = e.what();
    return 1;
  }
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  const auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream f(fs::path(out_dir) / name, std::ios::binary);
    f << text;
    if (!f) throw ConfigError("cannot write " + name + " in " + out_dir);
  };
  try {
    write("report.json", serialize_report(out.report));
    write("timing.json", Json{{"seconds", out.seconds}}.dump(2) + "\n");
    for (const auto& [name, table] : out.tables) write(name, table.str());
  } catch (const Error& e) {
    if (message) *message = e.what();
    return 1;
  }
  if (message && out.exit_code != 0) *message = out.report.value("error", "");
  return out.exit_code;
}

}  // namespace skewlab
