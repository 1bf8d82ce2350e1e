#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "causal/errors.hpp"
#include "causal/report.hpp"
#include "dispatch.hpp"
#include "json.hpp"

namespace {

using causal::cli::RunConfig;

// Options of one subcommand, each stored as text until dispatch.
struct Sub {
  CLI::App* app = nullptr;
  std::map<std::string, std::string> values;
  std::map<std::string, bool> flags;
  std::vector<std::pair<std::string, CLI::Option*>> options;

  void opt(const std::string& key, const std::string& names, const std::string& help) {
    options.emplace_back(key, app->add_option(names, values[key], help));
  }
  void flag(const std::string& key, const std::string& names, const std::string& help) {
    options.emplace_back(key, app->add_flag(names, flags[key], help));
  }

  std::map<std::string, std::string> given() const {
    std::map<std::string, std::string> out;
    for (const auto& [key, o] : options) {
      if (o->count() == 0) continue;
      const auto f = flags.find(key);
      out[key] = f != flags.end() ? (f->second ? "true" : "false") : values.at(key);
    }
    return out;
  }
};

void add_common(Sub& s) {
  s.opt("config", "--config", "key=value file; flags override it, it overrides CAUSAL_* env");
  s.opt("output", "-o,--output", "output file (default stdout)");
  s.opt("format", "--format", "csv or json");
  s.opt("plot", "--plot", "write a plot recipe to this file");
  s.flag("no_timestamp", "--no-timestamp", "omit the '# generated' line");
  s.opt("rel_tol", "--rel-tol", "quadrature relative tolerance");
  s.opt("max_subdiv", "--max-subdiv", "quadrature subdivision limit");
}

void add_srtf(Sub& s, bool with_mu2 = true) {
  if (with_mu2) s.opt("mu2", "--mu2", "RG scale parameter mu^2 > 1");
  s.opt("alpha", "--alpha", "roll-off exponent in (0, 1)");
  s.flag("alpha_limit", "--alpha-limit", "take alpha -> 1");
  s.opt("variant", "--variant", "nu_integral or mollifier_convolution");
  s.opt("nu", "--nu", "nu of the nu-integral partition");
  s.opt("epsilon", "--epsilon", "mollifier half-width of the convolution partition");
  s.opt("h", "--cell-width", "partition cell width h");
  s.opt("rise_width", "--rise-width", "width of the rise from the origin");
}

int error_exit(const std::string& sub, int code, const std::string& kind, const std::string& msg) {
  nlohmann::json j;
  j["error"] = {{"kind", kind}, {"message", msg}, {"exit_code", code}, {"subcommand", sub}};
  std::cerr << j.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Causal (Epstein-Glaser) extension of singular distributions with "
               "super-regular test functions"};
  app.set_version_flag("--version", std::string(causal::report::kVersion));
  app.require_subcommand(1);

  std::map<std::string, std::unique_ptr<Sub>> subs;
  auto make = [&](const std::string& name, const std::string& help) -> Sub& {
    auto s = std::make_unique<Sub>();
    s->app = app.add_subcommand(name, help);
    add_common(*s);
    auto& ref = *s;
    subs[name] = std::move(s);
    return ref;
  };

  auto& testfn = make("testfn", "tabulate the test function f(X) and its UV form");
  add_srtf(testfn);
  testfn.opt("x", "--x", "X grid: start:stop:step or a comma list");

  auto& ext = make("extend", "tabulate a built-in distribution and its extension");
  add_srtf(ext);
  ext.opt("dist", "--dist", "inv_x, inv_x2, euclid_prop_d2, euclid_prop_d4, inv_omega");
  ext.opt("mode", "--mode", "ir, uv or uv_alt");
  ext.opt("k", "--k", "subtraction order (default: fitted scaling order)");
  ext.opt("mu_tilde", "--mu-tilde", "IR scale mu~");
  ext.opt("bound", "--bound", "IR t lower bound: mu_tilde_x or inverse_mu2");
  ext.opt("m2", "--m2", "mass squared inside the distribution");
  ext.opt("d_radial", "--d-radial", "radial dimension of the uv_alt form");
  ext.opt("x", "--x", "X grid");

  auto& prop = make("propagator", "coincident-point propagator against its closed form");
  add_srtf(prop);
  prop.opt("d", "--D", "spacetime dimension, 2 or 4");
  prop.opt("m", "--m", "mass");
  prop.opt("metric", "--metric", "euclidean or minkowski");

  auto& loop = make("loop4", "one-loop four-point function against its closed form");
  add_srtf(loop);
  loop.opt("k2", "--k2", "external momentum squared");
  loop.opt("m", "--m", "mass");

  auto& sun = make("sunset", "two-loop sunset at zero momentum (no closed form)");
  add_srtf(sun);
  sun.opt("m", "--m", "mass");
  sun.opt("cutoff", "--cutoff", "lower Schwinger cutoff (default 1/(mu2 m^2))");
  sun.opt("upper", "--upper", "upper Schwinger cutoff (default 50/m^2)");

  auto& scan = make("scan-mu", "scan an observable over a mu2 grid");
  add_srtf(scan, false);
  scan.opt("mu2", "--mu2", "mu2 grid: start:stop:step or a comma list");
  scan.opt("obs", "--obs", "delta0, minkowski, loop4 or sunset");
  scan.opt("d", "--D", "spacetime dimension for delta0");
  scan.opt("m", "--m", "mass");
  scan.opt("k2", "--k2", "external momentum squared for loop4");
  scan.opt("metric", "--metric", "euclidean or minkowski");
  scan.opt("cutoff", "--cutoff", "sunset lower cutoff");
  scan.opt("upper", "--upper", "sunset upper cutoff");

  auto& disp = make("dispersion-check", "retarded minus advanced against the Taylor remainder");
  disp.opt("model", "--model", "gaussian, lorentz, p2_lorentz or p4_lorentz");
  disp.opt("omega", "--omega", "singular order (default: the model's own)");
  disp.opt("mu2", "--mu2", "subtraction scale mu2");
  disp.opt("p", "--p", "p grid");

  auto& ver = make("verify", "run invariant suites and print a JSON report");
  ver.opt("suite", "suite", "partition, lagrange, extend, qft, split or all");
  ver.opt("verify_tol_override", "--tol-override", "replace every threshold");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return error_exit("", causal::cli::kBadConfig, "bad-config", e.what());
  }

  for (const auto& [name, s] : subs) {
    if (!s->app->parsed()) continue;
    RunConfig cfg;
    cfg.subcommand = name;
    try {
      const auto flags = s->given();
      const auto env = causal::cli::env_params();
      std::map<std::string, std::string> file;
      const auto path = flags.count("config") ? flags.at("config")
                        : env.count("config") ? env.at("config")
                                              : std::string();
      if (!path.empty()) file = causal::cli::read_config_file(path);
      cfg.params = causal::cli::merge({env, file, flags});
    } catch (const causal::InputError& e) {
      return error_exit(name, causal::cli::kBadConfig, "bad-config", e.what());
    }
    return causal::cli::dispatch(cfg, std::cout, std::cerr);
  }
  return error_exit("", causal::cli::kBadConfig, "bad-config", "no subcommand");
}
