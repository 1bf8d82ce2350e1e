#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "causal/errors.hpp"
#include "causal/report.hpp"
#include "causal/verify.hpp"
#include "dispatch.hpp"
#include "doctest.h"

using namespace causal;
using doctest::Approx;

TEST_CASE("round-trip number formatting") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, -2.5}) {
    CHECK(std::stod(report::format_double(v)) == v);
  }
  CHECK(report::format_double(NAN) == "nan");
  CHECK(report::fnv1a_hex("") == "cbf29ce484222325");
  CHECK(report::fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("scan report invariants and serialisation") {
  report::ScanReport s;
  s.axis = "mu2";
  s.param_names = {"mu2"};
  s.rows.push_back({{1.5}, 0.25, std::complex<double>(0.25), 0.0});
  s.rows.push_back({{2.0}, 0.5, std::nullopt, std::nullopt});
  const auto t = s.to_table("title", {"a note"}, "abc");
  const auto csv = report::to_csv(t, false);
  CHECK(csv ==
        "# title\n# a note\n# version 0.1.0, config abc\nmu2,numeric,closed_form,rel_deviation\n"
        "1.5,0.25,0.25,0\n2,0.5,,\n");
  CHECK(report::to_csv(t, true).find("# generated ") != std::string::npos);
  const auto j = report::to_json(t);
  CHECK(j["rows"][1][2].is_null());

  auto bad = s;
  bad.rows[1].closed_form = 1.0;
  CHECK_THROWS_AS(bad.validate(), InputError);
  auto unordered = s;
  std::swap(unordered.rows[0], unordered.rows[1]);
  CHECK_THROWS_AS(unordered.validate(), InputError);
  const auto plot = report::plot_script(t, "out.csv", "mu2", {"numeric"});
  CHECK(plot.find("y: column 2 (numeric)") != std::string::npos);
}

TEST_CASE("grid parsing") {
  const auto g = cli::parse_grid("1.1:4:0.1");
  CHECK(g.size() == 30);
  CHECK(g.back() == Approx(4.0));
  CHECK(cli::parse_grid("1,2.5, 3").size() == 3);
  CHECK(cli::parse_grid("7").size() == 1);
  CHECK_THROWS_WITH_AS(cli::parse_grid("4:1:0.1"), "empty scan", InputError);
  CHECK_THROWS_WITH_AS(cli::parse_grid(""), "empty scan", InputError);
  CHECK_THROWS_AS(cli::parse_grid("1:2:0"), InputError);
  CHECK_THROWS_AS(cli::parse_grid("1:x:0.1"), InputError);
}

TEST_CASE("configuration precedence") {
  const std::string path = "test_cli_config.cfg";
  {
    std::ofstream f(path);
    f << "# comment\nmu2 = 3\nrel-tol=1e-10\n";
  }
  const auto file = cli::read_config_file(path);
  CHECK(file.at("mu2") == "3");
  CHECK(file.at("rel_tol") == "1e-10");
  const auto merged = cli::merge({{{"mu2", "2"}, {"m", "5"}}, file, {{"mu2", "4"}}});
  CHECK(merged.at("mu2") == "4");
  CHECK(merged.at("m") == "5");
  CHECK(merged.at("rel_tol") == "1e-10");
  CHECK_THROWS_AS(cli::read_config_file("missing.cfg"), InputError);
  ::setenv("CAUSAL_MAX_SUBDIV", "77", 1);
  CHECK(cli::env_params().at("max_subdiv") == "77");
  ::unsetenv("CAUSAL_MAX_SUBDIV");
}

TEST_CASE("dispatch results and exit codes") {
  cli::RunConfig c;
  c.subcommand = "propagator";
  c.params = {{"d", "4"}, {"m", "1"}, {"mu2", "2"}, {"no_timestamp", "true"}};
  std::ostringstream out1, out2, err;
  CHECK(cli::dispatch(c, out1, err) == cli::kOk);
  CHECK(cli::dispatch(c, out2, err) == cli::kOk);
  CHECK(out1.str() == out2.str());
  CHECK(out1.str().find("closed_form: m^2/(16 pi^2) (mu2 - 1 - log mu2)") != std::string::npos);

  cli::RunConfig scan;
  scan.subcommand = "scan-mu";
  scan.params = {{"obs", "delta0"}, {"d", "2"}, {"mu2", "1.1:4:0.1"}, {"format", "json"}};
  std::ostringstream js;
  CHECK(cli::dispatch(scan, js, err) == cli::kOk);
  const auto j = nlohmann::json::parse(js.str());
  double prev = -1.0;
  for (const auto& row : j["rows"]) {
    const double v = row[3].get<double>();
    CHECK(v > prev);
    CHECK(v == Approx(std::log(row[2].get<double>()) / (4.0 * M_PI)).epsilon(1e-6));
    prev = v;
  }

  std::ostringstream sink, e2;
  scan.params["mu2"] = "3:2:0.1";
  CHECK(cli::dispatch(scan, sink, e2) == cli::kBadConfig);
  CHECK(nlohmann::json::parse(e2.str())["error"]["message"] == "empty scan");

  cli::RunConfig unknown;
  unknown.subcommand = "frobnicate";
  CHECK(cli::dispatch(unknown, sink, err) == cli::kBadConfig);

  cli::RunConfig bad = c;
  bad.params["mu2"] = "two";
  CHECK(cli::dispatch(bad, sink, err) == cli::kBadConfig);

  cli::RunConfig v;
  v.subcommand = "verify";
  v.params = {{"suite", "partition"}};
  CHECK(cli::dispatch(v, sink, err) == cli::kOk);
  v.params["verify_tol_override"] = "1e-20";
  CHECK(cli::dispatch(v, sink, err) == cli::kVerificationFailure);
  v.params = {{"suite", "nonsense"}};
  CHECK(cli::dispatch(v, sink, err) == cli::kBadConfig);
}

TEST_CASE("config hash ignores output placement") {
  cli::RunConfig a;
  a.subcommand = "loop4";
  a.params = {{"k2", "1"}};
  auto b = a;
  b.params["output"] = "x.csv";
  b.params["no_timestamp"] = "true";
  CHECK(cli::config_hash(a) == cli::config_hash(b));
  b.params["k2"] = "2";
  CHECK(cli::config_hash(a) != cli::config_hash(b));
}

TEST_CASE("sunset fit quality") {
  std::vector<double> mu2, y;
  for (double m = 2.0; m <= 128.0; m *= 2.0) {
    mu2.push_back(m);
    const double L = std::log(m);
    y.push_back(0.1 + 0.01 * m + 0.3 * L + 0.05 * L * L);
  }
  CHECK(verify::sunset_fit_r2(mu2, y) == Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(verify::sunset_fit_r2({1.0, 2.0}, {1.0, 2.0}), InputError);
}
