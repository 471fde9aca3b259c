// Command-line front end for the ptgauge C API.
//
// Every number printed here comes from a library call; this file only parses
// options, merges the config file and formats records.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ptgauge/ptgauge.h"

namespace {

using json = nlohmann::ordered_json;

enum Exit { kSuccess = 0, kVerifyFailed = 1, kPhysics = 2, kUncertified = 3, kUsage = 64 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ApiError : std::runtime_error {
  ptg_status status;
  ApiError(ptg_status s, const std::string& what) : std::runtime_error(what), status(s) {}
};

int exit_code_for(ptg_status s) {
  switch (s) {
    case PTG_OK: return kSuccess;
    case PTG_ERR_INVALID_ARGUMENT:
    case PTG_ERR_DEGENERATE_PARAMETERS:
    case PTG_ERR_NON_NORMALIZABLE:
    case PTG_ERR_DIMENSION_MISMATCH: return kPhysics;
    default: return kUncertified;
  }
}

void check(ptg_status s) {
  if (s != PTG_OK) {
    throw ApiError(s, std::string(ptg_status_name(s)) + ": " + ptg_last_error());
  }
}

// Raw option values; unset fields fall back to the config file, then defaults.
struct Options {
  std::optional<double> omega_cap, g, drive;
  std::optional<std::string> branch;
  std::optional<int> n, nmax, cutoff, max_cutoff, samples;
  std::optional<double> tol_ode, tol_quad, tol_assert, t, t1;
  std::optional<std::string> format, out, config;
  std::optional<std::string> sweep_param, quantity;
  std::optional<double> sweep_min, sweep_max;
  std::optional<int> sweep_steps;
  std::vector<int> superpose;
  std::vector<double> times;
  bool inject_fault = false;
};

struct RunConfig {
  ptg_params params{};
  ptg_settings settings{};
  int n = 0;
  int nmax = 3;
  int samples = 11;
  std::vector<double> times;
  std::optional<double> t1;
  std::vector<int> superpose;
  std::string format = "csv";
  std::string out;
  std::string sweep_param;
  double sweep_min = 0.0, sweep_max = 0.0;
  int sweep_steps = 0;
  std::string quantity = "gamma_closed";
  bool inject_fault = false;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw UsageError("config key " + key + ": not a number: " + v);
  }
}

int parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const int i = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::exception&) {
    throw UsageError("config key " + key + ": not an integer: " + v);
  }
}

int parse_branch(const std::string& b) {
  if (b == "+" || b == "+1" || b == "1" || b == "plus") return 1;
  if (b == "-" || b == "-1" || b == "minus") return -1;
  throw UsageError("branch must be + or -, got " + b);
}

// Fills unset options from the config file; command-line values win.
void merge_config(Options& o, const std::map<std::string, std::string>& kv) {
  static const std::vector<std::string> known = {
      "omega-cap", "g", "drive", "branch", "n", "nmax", "cutoff", "max-cutoff", "tol-ode",
      "tol-quad", "tol-assert", "format", "out", "t", "t1", "samples", "sweep-param",
      "sweep-min", "sweep-max", "sweep-steps", "quantity"};
  for (const auto& [k, v] : kv) {
    if (std::find(known.begin(), known.end(), k) == known.end()) {
      throw UsageError("unknown config key: " + k);
    }
  }
  auto get = [&](const char* key) -> const std::string* {
    const auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };
  auto fill_d = [&](std::optional<double>& dst, const char* key) {
    if (!dst) if (const auto* v = get(key)) dst = parse_double(key, *v);
  };
  auto fill_i = [&](std::optional<int>& dst, const char* key) {
    if (!dst) if (const auto* v = get(key)) dst = parse_int(key, *v);
  };
  auto fill_s = [&](std::optional<std::string>& dst, const char* key) {
    if (!dst) if (const auto* v = get(key)) dst = *v;
  };
  fill_d(o.omega_cap, "omega-cap");
  fill_d(o.g, "g");
  fill_d(o.drive, "drive");
  fill_s(o.branch, "branch");
  fill_i(o.n, "n");
  fill_i(o.nmax, "nmax");
  fill_i(o.cutoff, "cutoff");
  fill_i(o.max_cutoff, "max-cutoff");
  fill_d(o.tol_ode, "tol-ode");
  fill_d(o.tol_quad, "tol-quad");
  fill_d(o.tol_assert, "tol-assert");
  fill_s(o.format, "format");
  fill_s(o.out, "out");
  fill_d(o.t, "t");
  fill_d(o.t1, "t1");
  fill_i(o.samples, "samples");
  fill_s(o.sweep_param, "sweep-param");
  fill_d(o.sweep_min, "sweep-min");
  fill_d(o.sweep_max, "sweep-max");
  fill_i(o.sweep_steps, "sweep-steps");
  fill_s(o.quantity, "quantity");
}

RunConfig resolve(Options o, bool needs_sweep) {
  std::string config_path;
  if (o.config) {
    config_path = *o.config;
  } else if (const char* env = std::getenv("PTGAUGE_CONFIG"); env && *env) {
    config_path = env;
  }
  if (!config_path.empty()) merge_config(o, read_config(config_path));

  RunConfig rc;
  std::vector<std::string> missing;
  if (!o.omega_cap) missing.push_back("--omega-cap");
  if (!o.g) missing.push_back("--g");
  if (!o.drive) missing.push_back("--drive");
  if (!o.branch) missing.push_back("--branch");
  if (!missing.empty()) {
    std::string msg = "missing required option(s):";
    for (const auto& m : missing) msg += " " + m;
    throw UsageError(msg);
  }
  rc.params = {*o.omega_cap, *o.g, *o.drive, parse_branch(*o.branch)};
  ptg_settings_default(&rc.settings);
  if (o.cutoff) rc.settings.cutoff = *o.cutoff;
  if (o.max_cutoff) rc.settings.max_cutoff = *o.max_cutoff;
  if (o.tol_ode) rc.settings.tol_ode = *o.tol_ode;
  if (o.tol_quad) rc.settings.tol_quad = *o.tol_quad;
  if (o.tol_assert) rc.settings.tol_assert = *o.tol_assert;
  if (!(rc.settings.tol_ode > 0 && rc.settings.tol_quad > 0 && rc.settings.tol_assert > 0)) {
    throw UsageError("tolerances must be positive");
  }
  if (o.n) rc.n = *o.n;
  if (o.nmax) rc.nmax = *o.nmax;
  if (o.samples) rc.samples = *o.samples;
  rc.times = o.times;
  if (rc.times.empty() && o.t) rc.times.push_back(*o.t);
  rc.t1 = o.t1;
  rc.superpose = o.superpose;
  if (o.format) rc.format = *o.format;
  if (rc.format != "csv" && rc.format != "json") throw UsageError("format must be csv or json");
  if (o.out) rc.out = *o.out;
  if (o.quantity) rc.quantity = *o.quantity;
  rc.inject_fault = o.inject_fault;
  if (needs_sweep) {
    if (!o.sweep_param || !o.sweep_min || !o.sweep_max || !o.sweep_steps) {
      throw UsageError("sweep needs --param, --min, --max and --steps");
    }
    rc.sweep_param = *o.sweep_param;
    if (rc.sweep_param != "omega-cap" && rc.sweep_param != "g" && rc.sweep_param != "drive") {
      throw UsageError("--param must be omega-cap, g or drive");
    }
    rc.sweep_min = *o.sweep_min;
    rc.sweep_max = *o.sweep_max;
    rc.sweep_steps = *o.sweep_steps;
    if (rc.sweep_steps < 2) throw UsageError("sweep grid needs at least 2 steps");
  }
  return rc;
}

// ---- formatting -----------------------------------------------------------

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json jnum(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// A table of rows; emitted as CSV or as a JSON record.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
};

std::string csv_cell(const json& v) {
  if (v.is_null()) return "nan";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return num(v.get<double>());
  std::string s = v.get<std::string>();
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  return s;
}

std::string to_csv(const Table& t) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << '\n';
  }
  return os.str();
}

json rows_json(const Table& t) {
  json arr = json::array();
  for (const auto& row : t.rows) {
    json o = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) o[t.columns[i]] = row[i];
    arr.push_back(o);
  }
  return arr;
}

void emit(const RunConfig& rc, const std::string& text) {
  if (rc.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(rc.out, std::ios::binary);
  if (!f) throw UsageError("cannot write " + rc.out);
  f << text;
}

struct Model {
  ptg_model* ptr = nullptr;
  Model(const ptg_params& p, const ptg_settings& s) { check(ptg_model_create(&p, &s, &ptr)); }
  ~Model() { ptg_model_destroy(ptr); }
  Model(const Model&) = delete;
  Model& operator=(const Model&) = delete;
};

json inputs_json(const RunConfig& rc) {
  return {{"omega_cap", rc.params.omega_cap},
          {"g", rc.params.coupling},
          {"drive", rc.params.drive},
          {"branch", rc.params.branch}};
}

json derived_json(const ptg_gauge_info& gi) {
  return {{"delta", gi.delta},
          {"eta", gi.eta},
          {"eta_classical", gi.eta_classical},
          {"gamma", gi.gamma},
          {"period", gi.period},
          {"normalizable", gi.normalizable != 0}};
}

json provenance_json(const RunConfig& rc, int cutoff) {
  return {{"branch", rc.params.branch},
          {"cutoff", cutoff},
          {"cutoff_policy", rc.settings.cutoff > 0 ? "fixed" : "auto"},
          {"tolerances",
           {{"ode", rc.settings.tol_ode},
            {"quadrature", rc.settings.tol_quad},
            {"assertion", rc.settings.tol_assert}}}};
}

// Emits a record: CSV gets the table with the parameter/derived columns
// prefixed to every row, JSON gets one structured object.
void emit_record(const RunConfig& rc, const std::string& command, const ptg_gauge_info& gi,
                 Table table, int cutoff) {
  if (rc.format == "csv") {
    Table full;
    full.columns = {"omega_cap", "g", "drive", "branch", "delta", "eta", "gamma"};
    full.columns.insert(full.columns.end(), table.columns.begin(), table.columns.end());
    for (auto& row : table.rows) {
      std::vector<json> r = {rc.params.omega_cap, rc.params.coupling, rc.params.drive,
                             rc.params.branch,    gi.delta,           gi.eta,
                             gi.gamma};
      r.insert(r.end(), row.begin(), row.end());
      full.rows.push_back(std::move(r));
    }
    emit(rc, to_csv(full));
    return;
  }
  json rec = {{"command", command},
              {"inputs", inputs_json(rc)},
              {"derived", derived_json(gi)},
              {"outputs", rows_json(table)},
              {"provenance", provenance_json(rc, cutoff)}};
  emit(rc, rec.dump(2) + "\n");
}

ptg_gauge_info info_of(const Model& m) {
  ptg_gauge_info gi{};
  check(ptg_gauge_info_get(m.ptr, &gi));
  return gi;
}

// ---- commands -------------------------------------------------------------

int cmd_spectrum(const RunConfig& rc) {
  if (rc.nmax < 1) throw UsageError("--nmax must be at least 1");
  Model m(rc.params, rc.settings);
  const auto gi = info_of(m);
  std::vector<double> e(rc.nmax);
  check(ptg_spectrum(m.ptr, rc.nmax, e.data()));
  Table t{{"n", "E_n", "E_n_ok"}, {}};
  for (int n = 0; n < rc.nmax; ++n) t.rows.push_back({n, jnum(e[n]), std::isfinite(e[n])});
  emit_record(rc, "spectrum", gi, t, 0);
  return kSuccess;
}

int cmd_gauge(const RunConfig& rc) {
  Model m(rc.params, rc.settings);
  const auto gi = info_of(m);
  std::vector<double> times = rc.times;
  if (times.empty()) times = {0.0};
  const int block = std::max(rc.nmax, 1);
  Table t{{"t", "route", "sz_re", "sz_im", "splus_re", "splus_im", "sminus_re", "sminus_im",
           "diagonal_deviation", "off_diagonal", "cutoff", "tolerance_met"},
          {}};
  bool all_ok = true;
  int cutoff = 0;
  for (double time : times) {
    for (int route : {0, 1}) {
      if (route == 1 && !gi.normalizable) continue;
      ptg_gauge_transform g{};
      check(ptg_gauge_transform_at(m.ptr, time, route, block, &g));
      all_ok = all_ok && g.tolerance_met;
      if (route == 1) cutoff = g.cutoff;
      t.rows.push_back({jnum(g.t), route == 0 ? "algebraic" : "similarity", jnum(g.sz_re),
                        jnum(g.sz_im), jnum(g.splus_re), jnum(g.splus_im), jnum(g.sminus_re),
                        jnum(g.sminus_im), jnum(g.diagonal_deviation), jnum(g.off_diagonal),
                        g.cutoff, g.tolerance_met != 0});
    }
  }
  emit_record(rc, "gauge", gi, t, cutoff);
  return all_ok ? kSuccess : kUncertified;
}

int cmd_berry(const RunConfig& rc) {
  Model m(rc.params, rc.settings);
  const auto gi = info_of(m);
  ptg_berry b{};
  check(ptg_berry_phase(m.ptr, rc.n, &b));
  Table t{{"n", "gamma_closed", "gamma_quadrature", "gamma_quadrature_ok", "quadrature_imag",
           "gamma_evolution", "gamma_evolution_ok", "gamma_evolution_wrapped", "evolution_shift",
           "total_phase", "dynamical_phase"},
          {}};
  json evo_ok = b.evolution_available ? json(b.evolution_ok != 0) : json(nullptr);
  t.rows.push_back({b.n, jnum(b.gamma_closed), jnum(b.gamma_quadrature), b.quadrature_ok != 0,
                    jnum(b.quadrature_imag), jnum(b.gamma_evolution), evo_ok,
                    jnum(b.gamma_evolution_wrapped), b.evolution_shift, jnum(b.total_phase),
                    jnum(b.dynamical_phase)});
  emit_record(rc, "berry", gi, t, b.cutoff);
  if (!b.evolution_available) {
    std::cerr << "note: evolution route unavailable: the gauge is not normalizable on this branch\n";
  }
  const bool ok = b.quadrature_ok && (!b.evolution_available || b.evolution_ok);
  return ok ? kSuccess : kUncertified;
}

int cmd_hannay(const RunConfig& rc) {
  Model m(rc.params, rc.settings);
  const auto gi = info_of(m);
  ptg_hannay h{};
  check(ptg_hannay_angle(m.ptr, &h));
  Table t{{"hannay_closed", "hannay_quadrature", "hannay_ok", "imag_residual", "linearity_residual"},
          {{jnum(h.dtheta_closed), jnum(h.dtheta_quadrature), h.ok != 0, jnum(h.imag_residual),
            jnum(h.linearity_residual)}}};
  emit_record(rc, "hannay", gi, t, 0);
  return h.ok ? kSuccess : kUncertified;
}

int cmd_correspond(const RunConfig& rc) {
  Model m(rc.params, rc.settings);
  const auto gi = info_of(m);
  ptg_correspondence c{};
  check(ptg_correspondence_check(m.ptr, rc.n, &c));
  Table t{{"n", "gamma_n", "hannay_closed", "hannay_quadrature", "correspondence_residual",
           "magnitude_residual", "realized_sign", "correspondence_ok"},
          {{c.n, jnum(c.gamma_n), jnum(c.dtheta_closed), jnum(c.dtheta_quadrature),
            jnum(c.residual), jnum(c.magnitude_residual), c.realized_sign, c.ok != 0}}};
  emit_record(rc, "correspond", gi, t, c.cutoff);
  return c.ok ? kSuccess : kUncertified;
}

int cmd_evolve(const RunConfig& rc) {
  Model m(rc.params, rc.settings);
  const auto gi = info_of(m);
  const int len = rc.settings.cutoff > 0 ? rc.settings.cutoff : 32;
  std::vector<int> idx = {rc.n};
  idx.insert(idx.end(), rc.superpose.begin(), rc.superpose.end());
  std::vector<double> re(len), im(len);
  check(ptg_basis_superposition(idx.data(), static_cast<int>(idx.size()), len, re.data(), im.data()));
  const double t1 = rc.t1 ? *rc.t1 : gi.period;
  const int s = rc.samples;
  if (s < 2) throw UsageError("--samples must be at least 2");
  std::vector<double> times(s), norms(s), ore(s), oim(s);
  check(ptg_evolve(m.ptr, re.data(), im.data(), len, 0.0, t1, s, times.data(), norms.data(),
                   ore.data(), oim.data()));
  Table t{{"t", "norm", "overlap_re", "overlap_im"}, {}};
  for (int k = 0; k < s; ++k) t.rows.push_back({jnum(times[k]), jnum(norms[k]), jnum(ore[k]), jnum(oim[k])});
  emit_record(rc, "evolve", gi, t, len);
  return kSuccess;
}

int cmd_verify(const RunConfig& rc) {
  Model m(rc.params, rc.settings);
  const auto gi = info_of(m);
  int count = 0;
  check(ptg_verify(m.ptr, rc.inject_fault ? 1 : 0, nullptr, 0, &count));
  std::vector<ptg_check> checks(count);
  check(ptg_verify(m.ptr, rc.inject_fault ? 1 : 0, checks.data(), count, &count));
  Table t{{"check", "residual", "tolerance", "status", "note"}, {}};
  bool failed = false;
  for (const auto& c : checks) {
    const char* status = c.status == 1 ? "pass" : c.status == 0 ? "FAIL" : "skipped";
    failed = failed || c.status == 0;
    t.rows.push_back({std::string(c.name), jnum(c.residual), jnum(c.tolerance), status,
                      std::string(c.note)});
  }
  emit_record(rc, "verify", gi, t, 0);
  return failed ? kVerifyFailed : kSuccess;
}

struct SweepPoint {
  double value = 0.0;
  bool ok = false;       // computation succeeded
  bool certified = false;
  double delta = NAN, eta = NAN, gamma = NAN, quantity = NAN;
  std::string error;
};

SweepPoint sweep_point(const RunConfig& rc, double value) {
  SweepPoint p;
  p.value = value;
  ptg_params params = rc.params;
  if (rc.sweep_param == "omega-cap") params.omega_cap = value;
  if (rc.sweep_param == "g") params.coupling = value;
  if (rc.sweep_param == "drive") params.drive = value;
  try {
    Model m(params, rc.settings);
    const auto gi = info_of(m);
    p.delta = gi.delta;
    p.eta = gi.eta;
    p.gamma = gi.gamma;
    const std::string& q = rc.quantity;
    if (q == "Gamma") {
      p.quantity = gi.gamma;
      p.certified = true;
    } else if (q == "E_n") {
      std::vector<double> e(rc.n + 1);
      check(ptg_spectrum(m.ptr, rc.n + 1, e.data()));
      p.quantity = e[rc.n];
      p.certified = true;
    } else if (q == "gamma_closed" || q == "gamma_quadrature" || q == "gamma_evolution") {
      ptg_berry b{};
      check(ptg_berry_phase(m.ptr, rc.n, &b));
      if (q == "gamma_closed") {
        p.quantity = b.gamma_closed;
        p.certified = true;
      } else if (q == "gamma_quadrature") {
        p.quantity = b.gamma_quadrature;
        p.certified = b.quadrature_ok;
      } else {
        p.quantity = b.gamma_evolution;
        p.certified = b.evolution_available && b.evolution_ok;
      }
    } else if (q == "hannay_closed" || q == "hannay_quadrature") {
      ptg_hannay h{};
      check(ptg_hannay_angle(m.ptr, &h));
      p.quantity = q == "hannay_closed" ? h.dtheta_closed : h.dtheta_quadrature;
      p.certified = h.ok;
    } else if (q == "correspondence_residual") {
      ptg_correspondence c{};
      check(ptg_correspondence_check(m.ptr, rc.n, &c));
      p.quantity = c.residual;
      p.certified = c.ok;
    }
    p.ok = true;
  } catch (const ApiError& e) {
    p.error = e.what();
  }
  return p;
}

int cmd_sweep(const RunConfig& rc) {
  static const std::vector<std::string> quantities = {
      "Gamma", "E_n", "gamma_closed", "gamma_quadrature", "gamma_evolution",
      "hannay_closed", "hannay_quadrature", "correspondence_residual"};
  if (std::find(quantities.begin(), quantities.end(), rc.quantity) == quantities.end()) {
    throw UsageError("unknown --quantity " + rc.quantity);
  }
  std::vector<double> grid(rc.sweep_steps);
  check(ptg_linspace(rc.sweep_min, rc.sweep_max, rc.sweep_steps, grid.data()));

  std::vector<SweepPoint> points(grid.size());
  const unsigned workers =
      std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), grid.size()));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < grid.size(); i += workers) points[i] = sweep_point(rc, grid[i]);
    });
  }
  for (auto& th : pool) th.join();

  const std::string col = rc.sweep_param;
  Table t{{col, "delta", "eta", "gamma", rc.quantity, "tolerance_met"}, {}};
  int succeeded = 0;
  for (const auto& p : points) {
    succeeded += p.ok;
    t.rows.push_back({jnum(p.value), jnum(p.delta), jnum(p.eta), jnum(p.gamma), jnum(p.quantity),
                      p.ok && p.certified});
    if (!p.ok) std::cerr << "point " << num(p.value) << ": " << p.error << "\n";
  }
  if (rc.format == "csv") {
    emit(rc, to_csv(t));
  } else {
    json rec = {{"command", "sweep"},
                {"inputs", inputs_json(rc)},
                {"sweep",
                 {{"param", rc.sweep_param},
                  {"min", rc.sweep_min},
                  {"max", rc.sweep_max},
                  {"steps", rc.sweep_steps},
                  {"quantity", rc.quantity},
                  {"n", rc.n}}},
                {"records", rows_json(t)},
                {"provenance", provenance_json(rc, rc.settings.cutoff)}};
    emit(rc, rec.dump(2) + "\n");
  }
  return succeeded > 0 ? kSuccess : kPhysics;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--omega-cap", o.omega_cap, "Omega, the static frequency");
  sub->add_option("--g", o.g, "G, the coupling frequency");
  sub->add_option("--drive", o.drive, "omega, the driving frequency (> 0)");
  sub->add_option("--branch", o.branch, "sign branch of sin(eta) = +-2G/Delta: + or -");
  sub->add_option("--cutoff", o.cutoff, "fixed Fock cutoff (default: certified automatically)");
  sub->add_option("--max-cutoff", o.max_cutoff, "hard maximum for automatic cutoff certification");
  sub->add_option("--tol-ode", o.tol_ode, "relative tolerance of time integration");
  sub->add_option("--tol-quad", o.tol_quad, "absolute tolerance of phase quadratures");
  sub->add_option("--tol-assert", o.tol_assert, "assertion tolerance for certified states");
  sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", o.out, "output path (default: standard output)");
  sub->add_option("--config", o.config, "key = value config file (default: $PTGAUGE_CONFIG)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ptgauge: PT-symmetric su(1,1) gauge reduction, Berry phase and Hannay angle"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ptg_version()));
  Options o;

  auto* spectrum = app.add_subcommand("spectrum", "E_n = (n + 1/2) Gamma of the static kernel");
  add_common(spectrum, o);
  spectrum->add_option("--nmax", o.nmax, "number of levels (default 3)");

  auto* gauge = app.add_subcommand("gauge", "gauge-transformed Hamiltonian at given times");
  add_common(gauge, o);
  gauge->add_option("--t", o.times, "time(s) at which to transform (default 0)");
  gauge->add_option("--nmax", o.nmax, "size of the checked diagonal block (default 3)");

  auto* berry = app.add_subcommand("berry", "Berry phase by closed form, quadrature and evolution");
  add_common(berry, o);
  berry->add_option("--n", o.n, "Fock index (default 0)");

  auto* hannay = app.add_subcommand("hannay", "Hannay angle by closed form and quadrature");
  add_common(hannay, o);

  auto* correspond = app.add_subcommand("correspond", "quantum-classical correspondence residual");
  add_common(correspond, o);
  correspond->add_option("--n", o.n, "Fock index (default 0)");

  auto* evolve = app.add_subcommand("evolve", "norm and overlap of an evolved basis superposition");
  add_common(evolve, o);
  evolve->add_option("--n", o.n, "basis state of the initial vector (default 0)");
  evolve->add_option("--superpose", o.superpose, "further basis states in an equal superposition");
  evolve->add_option("--t1", o.t1, "final time (default one driving period)");
  evolve->add_option("--samples", o.samples, "number of sample times (default 11)");

  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  add_common(verify, o);
  verify->add_flag("--inject-fault", o.inject_fault, "test only: flip a sign in the connection term")
      ->group("");

  auto* sweep = app.add_subcommand("sweep", "evaluate a quantity over a parameter grid");
  add_common(sweep, o);
  sweep->add_option("--param", o.sweep_param, "swept parameter: omega-cap, g or drive");
  sweep->add_option("--min", o.sweep_min, "first grid value");
  sweep->add_option("--max", o.sweep_max, "last grid value");
  sweep->add_option("--steps", o.sweep_steps, "number of grid points (>= 2)");
  sweep->add_option("--quantity", o.quantity,
                    "Gamma, E_n, gamma_closed, gamma_quadrature, gamma_evolution, hannay_closed, "
                    "hannay_quadrature or correspondence_residual");
  sweep->add_option("--n", o.n, "Fock index for state-dependent quantities (default 0)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    const std::string name = active->get_name();
    const RunConfig rc = resolve(o, name == "sweep");
    if (name == "spectrum") return cmd_spectrum(rc);
    if (name == "gauge") return cmd_gauge(rc);
    if (name == "berry") return cmd_berry(rc);
    if (name == "hannay") return cmd_hannay(rc);
    if (name == "correspond") return cmd_correspond(rc);
    if (name == "evolve") return cmd_evolve(rc);
    if (name == "verify") return cmd_verify(rc);
    if (name == "sweep") return cmd_sweep(rc);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << active->help();
    return kUsage;
  } catch (const ApiError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.status);
  }
  return kUsage;
}
