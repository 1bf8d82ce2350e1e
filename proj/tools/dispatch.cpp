#include "dispatch.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "causal/errors.hpp"
#include "causal/extend.hpp"
#include "causal/qft.hpp"
#include "causal/quadrature.hpp"
#include "causal/report.hpp"
#include "causal/split.hpp"
#include "causal/testfunc.hpp"
#include "causal/verify.hpp"

extern char** environ;

namespace causal::cli {

namespace {

using report::format_double;
using Params = std::map<std::string, std::string>;

class VerificationFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string normalize_key(std::string k) {
  for (auto& c : k) {
    c = c == '-' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return k;
}

double parse_double(const std::string& key, const std::string& text) {
  const auto t = trim(text);
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    throw InputError(key + ": not a number: '" + text + "'");
  }
  return v;
}

// Typed view of the resolved parameters.
class View {
 public:
  explicit View(const Params& p) : p_(p) {}

  bool has(const std::string& k) const { return p_.count(k) > 0; }

  std::string str(const std::string& k, const std::string& def) const {
    const auto it = p_.find(k);
    return it == p_.end() ? def : trim(it->second);
  }

  double num(const std::string& k, double def) const {
    const auto it = p_.find(k);
    return it == p_.end() ? def : parse_double(k, it->second);
  }

  int integer(const std::string& k, int def) const {
    if (!has(k)) return def;
    const double v = num(k, def);
    if (v != std::floor(v) || std::abs(v) > 1e6) throw InputError(k + ": expected an integer");
    return static_cast<int>(v);
  }

  bool flag(const std::string& k) const {
    const auto v = str(k, "false");
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw InputError(k + ": expected a boolean, got '" + v + "'");
  }

 private:
  const Params& p_;
};

// `mu2` overrides the parameter, for scans where it holds a grid.
testfunc::SrtfParams srtf_params(const View& v, std::optional<double> mu2 = {}) {
  testfunc::SrtfParams s;
  s.mu2 = mu2 ? *mu2 : v.num("mu2", 2.0);
  s.alpha = v.num("alpha", s.alpha);
  s.alpha_limit = v.flag("alpha_limit");
  s.rise_width = v.num("rise_width", s.rise_width);
  s.partition.variant = testfunc::variant_from_string(v.str("variant", "nu_integral"));
  s.partition.nu = v.num("nu", s.partition.nu);
  s.partition.epsilon = v.num("epsilon", s.partition.epsilon);
  s.partition.h = v.num("h", s.partition.h);
  s.validate();
  return s;
}

double positive(const View& v, const std::string& k, double def) {
  const double x = v.num(k, def);
  if (!(x > 0.0) || !std::isfinite(x)) throw InputError(k + " must be > 0");
  return x;
}

void apply_quadrature(const View& v) {
  auto& d = quad::quadrature_defaults();
  if (v.has("rel_tol")) {
    const double t = v.num("rel_tol", d.rel_tol);
    if (!(t > 0.0) || !(t < 1.0)) throw InputError("rel_tol must lie in (0, 1)");
    d.rel_tol = t;
  }
  if (v.has("max_subdiv")) {
    const int n = v.integer("max_subdiv", d.max_subdivisions);
    if (n < 1) throw InputError("max_subdiv must be >= 1");
    d.max_subdivisions = n;
  }
}

// Evaluates fn(0..n-1) on a thread pool; results come back in index order
// and the first failure by index is rethrown.
template <class T>
std::vector<T> ordered_map(std::size_t n, const std::function<T(std::size_t)>& fn) {
  std::vector<std::optional<T>> results(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        results[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads =
      std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::vector<T> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*results[i]));
  }
  return out;
}

std::optional<double> rel_gap(std::complex<double> a, std::complex<double> b) {
  const double scale = std::max(std::abs(b), 1e-300);
  return std::abs(a - b) / scale;
}

const char* kUnits =
    "units: m in units of the mass scale Lambda = m; X = p^2/m^2 and mu2 are dimensionless";

std::string closed_form_note(const std::string& obs, int D, bool minkowski) {
  if (obs == "loop4") {
    return "closed_form: (log mu2 - int_0^1 log(1 + (k2/m^2) x(1-x)) dx)/(16 pi^2)";
  }
  if (obs == "sunset") return "closed_form: none (numeric only)";
  if (minkowski) {
    return D == 4 ? "closed_form: -i pi^2 m^2 (mu2 - 1 - log mu2)"
                  : "closed_form: -2 i pi log mu2";
  }
  return D == 4 ? "closed_form: m^2/(16 pi^2) (mu2 - 1 - log mu2)"
                : "closed_form: log(mu2)/(4 pi)";
}

report::ScanRow to_row(std::vector<double> params, const qft::ObservableResult& r) {
  report::ScanRow row;
  row.params = std::move(params);
  row.value = r.value;
  row.closed_form = r.closed_form;
  row.rel_deviation = r.rel_deviation;
  if (row.closed_form && !row.rel_deviation) row.rel_deviation = rel_gap(r.value, *r.closed_form);
  return row;
}

struct Observable {
  std::string name;
  int D = 4;
  bool minkowski = false;
};

Observable observable(const View& v, const std::string& def_obs) {
  Observable o;
  o.name = v.str("obs", def_obs);
  if (o.name == "minkowski") {
    o.name = "delta0";
    o.minkowski = true;
  }
  if (o.name != "delta0" && o.name != "loop4" && o.name != "sunset") {
    throw InputError("obs must be one of delta0, minkowski, loop4, sunset");
  }
  o.minkowski = o.minkowski || v.str("metric", "euclidean") == "minkowski";
  const auto metric = v.str("metric", "euclidean");
  if (metric != "euclidean" && metric != "minkowski") {
    throw InputError("metric must be euclidean or minkowski");
  }
  o.D = v.integer("d", 4);
  if (o.name == "delta0" && o.D != 2 && o.D != 4) throw InputError("D must be 2 or 4");
  return o;
}

qft::ObservableResult evaluate(const Observable& o, const View& v, double mu2) {
  const auto s = srtf_params(v, mu2);
  const double m = positive(v, "m", 1.0);
  if (o.name == "delta0") {
    return o.minkowski ? qft::delta0_minkowski(o.D, m, s) : qft::delta0_euclid(o.D, m, s);
  }
  if (o.name == "loop4") {
    const double k2 = v.num("k2", 1.0);
    if (k2 < 0.0) throw InputError("k2 must be >= 0");
    return qft::one_loop_I(k2, m, s);
  }
  return qft::sunset_qualitative(m, s, v.num("cutoff", 0.0), v.num("upper", 0.0));
}

std::vector<std::string> value_columns(const report::Table& t) {
  std::vector<std::string> ys;
  for (const auto& c : t.columns) {
    if (c.rfind("numeric", 0) == 0 || c.rfind("closed_form", 0) == 0) ys.push_back(c);
  }
  return ys;
}

void emit(const report::Table& t, const View& v, std::ostream& out, std::vector<std::string> ys) {
  const auto format = v.str("format", "csv");
  if (format != "csv" && format != "json") throw InputError("format must be csv or json");
  const std::string body = format == "csv" ? report::to_csv(t, !v.flag("no_timestamp"))
                                           : report::to_json(t).dump(2) + "\n";
  const auto path = v.str("output", "");
  if (path.empty() || path == "-") {
    out << body;
  } else {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot open output file: " + path);
    f << body;
  }
  const auto plot = v.str("plot", "");
  if (!plot.empty()) {
    std::ofstream f(plot, std::ios::binary);
    if (!f) throw InputError("cannot open plot file: " + plot);
    const std::string x = t.axis.empty() ? t.columns.front() : t.axis;
    f << report::plot_script(t, path.empty() ? "-" : path, x, ys.empty() ? value_columns(t) : ys);
  }
}

int run_observable(const std::string& obs_default, const RunConfig& cfg, std::ostream& out) {
  const View v(cfg.params);
  const auto o = observable(v, obs_default);
  const double mu2 = v.num("mu2", 2.0);
  const auto r = evaluate(o, v, mu2);
  report::ScanReport sr;
  sr.axis = "mu2";
  sr.complex_values = o.minkowski;
  std::vector<std::string> notes{kUnits, closed_form_note(o.name, o.D, o.minkowski)};
  std::vector<double> params;
  if (o.name == "delta0") {
    sr.param_names = {"D", "m", "mu2"};
    params = {static_cast<double>(o.D), v.num("m", 1.0), mu2};
  } else if (o.name == "loop4") {
    sr.param_names = {"k2", "m", "mu2"};
    params = {v.num("k2", 1.0), v.num("m", 1.0), mu2};
  } else {
    sr.param_names = {"m", "mu2"};
    params = {v.num("m", 1.0), mu2};
  }
  for (const auto& [k, val] : r.metadata) {
    if (k == "warning") notes.push_back("warning: " + val);
  }
  sr.rows.push_back(to_row(params, r));
  const std::string title = o.minkowski ? "Minkowski coincident-point propagator"
                            : o.name == "delta0" ? "Euclidean coincident-point propagator"
                            : o.name == "loop4"  ? "one-loop four-point function"
                                                 : "two-loop sunset at zero momentum";
  emit(sr.to_table(title, notes, config_hash(cfg)), v, out, {});
  return kOk;
}

int run_scan(const RunConfig& cfg, std::ostream& out) {
  const View v(cfg.params);
  const auto o = observable(v, "delta0");
  const auto grid = parse_grid(v.str("mu2", "1.5:4:0.5"));
  for (double mu2 : grid) {
    if (!(mu2 > 1.0)) throw InputError("mu2 grid values must be > 1");
  }
  std::vector<double> sorted = grid;
  std::sort(sorted.begin(), sorted.end());
  const auto results = ordered_map<qft::ObservableResult>(
      sorted.size(), [&](std::size_t i) { return evaluate(o, v, sorted[i]); });
  report::ScanReport sr;
  sr.axis = "mu2";
  sr.complex_values = o.minkowski;
  std::vector<std::string> notes{kUnits, closed_form_note(o.name, o.D, o.minkowski)};
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    std::vector<double> params;
    if (o.name == "delta0") {
      sr.param_names = {"D", "m", "mu2"};
      params = {static_cast<double>(o.D), v.num("m", 1.0), sorted[i]};
    } else if (o.name == "loop4") {
      sr.param_names = {"k2", "m", "mu2"};
      params = {v.num("k2", 1.0), v.num("m", 1.0), sorted[i]};
    } else {
      sr.param_names = {"m", "mu2"};
      params = {v.num("m", 1.0), sorted[i]};
    }
    for (const auto& [k, val] : results[i].metadata) {
      if (k == "warning") notes.push_back("warning at mu2=" + format_double(sorted[i]) + ": " + val);
    }
    sr.rows.push_back(to_row(params, results[i]));
  }
  emit(sr.to_table("scan over mu2: " + o.name + (o.minkowski ? " (Minkowski)" : ""), notes,
                   config_hash(cfg)),
       v, out, {});
  return kOk;
}

int run_testfn(const RunConfig& cfg, std::ostream& out) {
  const View v(cfg.params);
  const auto s = srtf_params(v);
  std::string grid = v.str("x", "");
  if (grid.empty()) {
    const double hi = s.alpha_limit ? 5.0 : 1.05 * s.x_max();
    grid = "0:" + format_double(hi) + ":" + format_double(hi / 400.0);
  }
  const auto xs = parse_grid(grid);
  report::Table t;
  t.title = "super-regular test function";
  t.notes = {"X = p^2/Lambda^2, dimensionless",
             "f: rise from the origin, plateau, roll-off of width mu2 X^alpha - 1",
             "f_uv: 1 on [0, 1], then the same roll-off",
             "variant " + testfunc::to_string(s.partition.variant) + ", mu2 " +
                 format_double(s.mu2) + ", alpha " +
                 (s.alpha_limit ? std::string("limit") : format_double(s.alpha))};
  t.columns = {"X", "f", "f_uv"};
  t.axis = "X";
  t.config_hash = config_hash(cfg);
  std::vector<double> sorted = xs;
  std::sort(sorted.begin(), sorted.end());
  for (double X : sorted) {
    if (X < 0.0) throw InputError("X must be >= 0");
    t.rows.push_back({X, testfunc::srtf_f(X, s), testfunc::srtf_uv(X, s)});
  }
  emit(t, v, out, {"f", "f_uv"});
  return kOk;
}

int run_extend(const RunConfig& cfg, std::ostream& out) {
  const View v(cfg.params);
  const auto name = v.str("dist", "inv_x");
  const auto T = extend::builtin(name, positive(v, "m2", 1.0));
  const auto mode = v.str("mode", "ir");
  extend::ExtendedDistribution ext;
  std::string note;
  if (mode == "ir") {
    const int k = v.integer("k", std::max(0, extend::scaling_order(T, extend::Region::IR)));
    const auto bound_name = v.str("bound", "mu_tilde_x");
    if (bound_name != "mu_tilde_x" && bound_name != "inverse_mu2") {
      throw InputError("bound must be mu_tilde_x or inverse_mu2");
    }
    const auto bound = bound_name == "mu_tilde_x" ? extend::LowerBound::mu_tilde_x
                                                  : extend::LowerBound::inverse_mu2;
    ext = extend::extend_ir(T, k, positive(v, "mu_tilde", 0.5), bound, v.num("mu2", 0.0));
    note = "IR extension, k = " + std::to_string(k);
  } else if (mode == "uv") {
    const int k = v.integer("k", std::max(0, extend::scaling_order(T, extend::Region::UV)));
    ext = extend::extend_uv(T, k, srtf_params(v));
    note = "UV extension, k = " + std::to_string(k);
  } else if (mode == "uv_alt") {
    const int k = v.integer("k", std::max(0, extend::scaling_order(T, extend::Region::UV)));
    ext = extend::extend_uv_alt(T, k, v.integer("d_radial", T.d), positive(v, "mu2", 2.0));
    note = "UV extension, d-dimensional radial form, k = " + std::to_string(k);
  } else {
    throw InputError("mode must be ir, uv or uv_alt");
  }
  const auto xs = parse_grid(v.str("x", "0.05:3:0.05"));
  std::vector<double> sorted = xs;
  std::sort(sorted.begin(), sorted.end());
  const auto vals = ordered_map<std::pair<double, double>>(sorted.size(), [&](std::size_t i) {
    const double X = sorted[i];
    if (!(X > 0.0)) throw InputError("X must be > 0");
    return std::pair{T(X), ext(X)};
  });
  report::Table t;
  t.title = "extension of " + name;
  t.notes = {"X = p^2/Lambda^2 with Lambda = m, dimensionless", note};
  t.columns = {"X", "T", "extended"};
  t.axis = "X";
  t.config_hash = config_hash(cfg);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    t.rows.push_back({sorted[i], vals[i].first, vals[i].second});
  }
  emit(t, v, out, {"T", "extended"});
  return kOk;
}

int run_dispersion(const RunConfig& cfg, std::ostream& out) {
  const View v(cfg.params);
  const auto Tm = split::model(v.str("model", "gaussian"), v.integer("omega", -1));
  const double mu2 = positive(v, "mu2", 2.0);
  const auto ps = parse_grid(v.str("p", "-3:3:0.25"));
  std::vector<double> sorted = ps;
  std::sort(sorted.begin(), sorted.end());
  const auto res = ordered_map<split::SplitResult>(sorted.size(), [&](std::size_t i) {
    return split::splitting_difference_check(Tm, sorted[i], mu2);
  });
  report::Table t;
  t.title = "causal splitting of model " + Tm.name + ", omega " + std::to_string(Tm.omega);
  t.notes = {"p in units of the model scale; mu2 " + format_double(mu2),
             "difference_dispersion: retarded - advanced from the subtracted dispersion integrals",
             "difference_taylor: Taylor remainder of the model at p about p/mu2, order omega",
             "abs_gap: |difference_dispersion - difference_taylor|"};
  t.columns = {"p",           "retarded_re",  "retarded_im",  "advanced_re",
               "advanced_im", "difference_dispersion_re", "difference_dispersion_im",
               "difference_taylor", "abs_gap"};
  t.axis = "p";
  t.config_hash = config_hash(cfg);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const auto& r = res[i];
    t.rows.push_back({sorted[i], r.retarded.real(), r.retarded.imag(), r.advanced.real(),
                      r.advanced.imag(), r.difference.real(), r.difference.imag(),
                      r.bphz_remainder.real(), std::abs(r.difference - r.bphz_remainder)});
  }
  emit(t, v, out, {"difference_dispersion_re", "difference_taylor"});
  return kOk;
}

int run_verify(const RunConfig& cfg, std::ostream& out) {
  const View v(cfg.params);
  verify::Options opt;
  if (v.has("verify_tol_override")) opt.threshold_override = v.num("verify_tol_override", 0.0);
  const auto rep = verify::run_suite(v.str("suite", "all"), opt);
  const auto body = rep.to_json().dump(2) + "\n";
  const auto path = v.str("output", "");
  if (path.empty() || path == "-") {
    out << body;
  } else {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot open output file: " + path);
    f << body;
  }
  if (!rep.passed()) {
    std::size_t failed = 0;
    for (const auto& r : rep.records) failed += r.pass ? 0 : 1;
    throw VerificationFailed(std::to_string(failed) + " of " + std::to_string(rep.records.size()) +
                             " invariants failed");
  }
  return kOk;
}

void error_record(std::ostream& err, const RunConfig& cfg, int code, const std::string& kind,
                  const std::string& message) {
  nlohmann::json j;
  j["error"] = {{"kind", kind}, {"message", message}, {"exit_code", code},
                {"subcommand", cfg.subcommand}};
  err << j.dump() << "\n";
}

}  // namespace

std::vector<std::string> subcommands() {
  return {"testfn", "extend", "propagator", "loop4", "sunset", "scan-mu", "dispersion-check",
          "verify"};
}

std::vector<double> parse_grid(const std::string& text) {
  const auto s = trim(text);
  std::vector<double> out;
  if (s.empty()) throw InputError("empty scan");
  if (s.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 3) throw InputError("grid must look like start:stop:step");
    const double a = parse_double("grid", parts[0]);
    const double b = parse_double("grid", parts[1]);
    const double step = parse_double("grid", parts[2]);
    if (!(step > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
      throw InputError("grid step must be > 0 and bounds finite");
    }
    const double span = (b - a) / step;
    if (span > 1e6) throw InputError("grid has too many points");
    // Index form avoids accumulating the step; the slack keeps b itself.
    for (long i = 0; a + i * step <= b + 1e-9 * step; ++i) out.push_back(a + i * step);
  } else {
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
      if (!trim(item).empty()) out.push_back(parse_double("grid", item));
    }
  }
  if (out.empty()) throw InputError("empty scan");
  return out;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot read config file: " + path);
  Params out;
  std::string line;
  for (int n = 1; std::getline(f, line); ++n) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || trim(line.substr(0, eq)).empty()) {
      throw InputError(path + ":" + std::to_string(n) + ": expected key=value");
    }
    out[normalize_key(trim(line.substr(0, eq)))] = trim(line.substr(eq + 1));
  }
  return out;
}

std::map<std::string, std::string> env_params() {
  Params out;
  for (char** e = environ; e && *e; ++e) {
    const std::string entry(*e);
    if (entry.rfind("CAUSAL_", 0) != 0) continue;
    const auto eq = entry.find('=');
    if (eq == std::string::npos || eq == 7) continue;
    out[normalize_key(entry.substr(7, eq - 7))] = entry.substr(eq + 1);
  }
  return out;
}

std::map<std::string, std::string> merge(const std::vector<std::map<std::string, std::string>>& layers) {
  Params out;
  for (const auto& layer : layers) {
    for (const auto& [k, v] : layer) out[normalize_key(k)] = v;
  }
  return out;
}

std::string config_hash(const RunConfig& cfg) {
  std::string text = cfg.subcommand + "\n";
  for (const auto& [k, v] : cfg.params) {
    if (k == "output" || k == "plot" || k == "config" || k == "no_timestamp" || k == "format") {
      continue;
    }
    text += k + "=" + trim(v) + "\n";
  }
  return report::fnv1a_hex(text);
}

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const View v(cfg.params);
    apply_quadrature(v);
    const auto& c = cfg.subcommand;
    if (c == "testfn") return run_testfn(cfg, out);
    if (c == "extend") return run_extend(cfg, out);
    if (c == "propagator") {
      RunConfig fixed = cfg;
      fixed.params.erase("obs");
      return run_observable("delta0", fixed, out);
    }
    if (c == "loop4") {
      RunConfig fixed = cfg;
      fixed.params["obs"] = "loop4";
      return run_observable("loop4", fixed, out);
    }
    if (c == "sunset") {
      RunConfig fixed = cfg;
      fixed.params["obs"] = "sunset";
      return run_observable("sunset", fixed, out);
    }
    if (c == "scan-mu") return run_scan(cfg, out);
    if (c == "dispersion-check") return run_dispersion(cfg, out);
    if (c == "verify") return run_verify(cfg, out);
    throw InputError("unknown subcommand: '" + c + "'");
  } catch (const VerificationFailed& e) {
    error_record(err, cfg, kVerificationFailure, "verification-failure", e.what());
    return kVerificationFailure;
  } catch (const InputError& e) {
    error_record(err, cfg, kBadConfig, "bad-config", e.what());
    return kBadConfig;
  } catch (const std::exception& e) {
    error_record(err, cfg, kNumericFailure, "numeric-failure", e.what());
    return kNumericFailure;
  }
}

}  // namespace causal::cli
