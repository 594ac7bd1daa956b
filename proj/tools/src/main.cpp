#include <CLI11.hpp>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "config.hpp"
#include "output.hpp"
#include "scenarios.hpp"
#include "tiqs/errors.hpp"
#include "tiqs/version.hpp"

using namespace tiqs::cli;

namespace {

enum Exit { kOk = 0, kMalformed = 2, kSchema = 3, kStrict = 4, kRuntime = 5 };

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

double parse_power_law(const std::string& s) {
  const std::string key = "s=";
  std::string v = s.rfind(key, 0) == 0 ? s.substr(key.size()) : s;
  if (v == "inf") return std::numeric_limits<double>::infinity();
  size_t used = 0;
  double x = std::stod(v, &used);
  if (used != v.size()) throw std::invalid_argument(s);
  return x;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trapped-ion quantum simulation pipelines"};
  app.set_version_flag("--version", std::string("tiqs ") + TIQS_VERSION_STRING);
  app.require_subcommand(1);

  std::string config_path, out_dir = ".";
  bool strict = false;
  int threads = 1;
  std::uint64_t seed = 12345;
  std::vector<std::string> power_law;

  for (const auto& name : scenario_names()) {
    CLI::App* sub = app.add_subcommand(name, name + " scenario");
    sub->add_option("--config", config_path, "JSON experiment config");
    sub->add_option("--out", out_dir, "output directory")->capture_default_str();
    sub->add_flag("--strict", strict, "treat regime violations as errors");
    sub->add_option("--threads", threads, "worker threads for scans")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "seed for randomized starts")->capture_default_str();
    if (name == "nlsm") sub->add_option("--power-law", power_law, "power-law exponent, s=<value>");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kSchema;
  }
  const std::string scenario = app.get_subcommands().front()->get_name();

  json config = json::object();
  std::string raw;
  if (!config_path.empty()) {
    std::ifstream f(config_path, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot read " << config_path << "\n";
      return kMalformed;
    }
    std::stringstream ss;
    ss << f.rdbuf();
    raw = ss.str();
    try {
      config = json::parse(raw);
    } catch (const json::parse_error& e) {
      std::cerr << "error: malformed JSON in " << config_path << ": " << e.what() << "\n";
      return kMalformed;
    }
  } else if (scenario != "nlsm" || power_law.empty()) {
    std::cerr << "error: --config is required for " << scenario << "\n";
    return kSchema;
  }

  RunOptions opts;
  opts.strict = strict;
  opts.threads = threads;
  opts.seed = seed;
  try {
    for (const auto& p : power_law) opts.power_law.push_back(parse_power_law(p));
  } catch (const std::exception&) {
    std::cerr << "error: --power-law expects s=<number>\n";
    return kSchema;
  }

  json canon;
  canon["scenario"] = scenario;
  canon["config"] = config;
  canon["seed"] = seed;
  canon["power_law"] = power_law;
  Provenance prov;
  prov.scenario = scenario;
  prov.config_hash = hex64(fnv1a64(canon.dump()));
  prov.timestamp = utc_now();

  ArtifactSet out(prov);
  try {
    run_scenario(scenario, config, opts, out);
    out.commit(out_dir);
  } catch (const SchemaError& e) {
    std::cerr << "error: schema: " << e.what() << "\n";
    return kSchema;
  } catch (const StrictViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kStrict;
  } catch (const tiqs::ValidityError& e) {
    std::cerr << "error: invalid parameters: " << e.what() << "\n";
    return kSchema;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
  std::cout << "wrote " << scenario << " outputs to " << out_dir << " (config fnv1a64:" << prov.config_hash << ")\n";
  return kOk;
}
