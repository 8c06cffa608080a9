#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <system_error>

#include "boundpair/bethe.hpp"
#include "boundpair/errors.hpp"

#ifndef BOUNDPAIR_VERSION_STRING
#define BOUNDPAIR_VERSION_STRING "unknown"
#endif

namespace boundpair::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

struct HelpRequested : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr std::array<const char*, 5> kExperiments = {"band", "packet", "fidelity", "scatter", "switch"};

bool is_experiment(const std::string& s) {
  return std::find(kExperiments.begin(), kExperiments.end(), s) != kExperiments.end();
}

double parse_number(const std::string& flag, const std::string& text) {
  double x = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, x);
  if (ec != std::errc() || ptr != last || !std::isfinite(x)) {
    throw ConfigError(kConfig, "--" + flag + ": not a number: '" + text + "'");
  }
  return x;
}

std::optional<double> parse_auto(const std::string& flag, const std::string& text) {
  if (text.empty() || text == "auto") return std::nullopt;
  return parse_number(flag, text);
}

std::string json_scalar_text(const std::string& key, const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return format_double(v.get<double>());
  throw ConfigError(kConfig, "config key '" + key + "' must be a number or string");
}

struct Flags {
  std::string sites, kappa, interaction, alpha, center, k0 = "auto", time, samples, out, format, jobs;
  std::string swap_factor, sp_center, bp_center, bp_k0, snapshots;
  std::string qubit_site, qubit_init, packets, u_small, kappa0 = "auto";
  std::string config;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--sites", f.sites, "Ring size N (odd), or chain length M for switch");
  sub->add_option("--kappa", f.kappa, "Hopping amplitude (default 1)");
  sub->add_option("--interaction", f.interaction, "On-site interaction U");
  sub->add_option("--alpha", f.alpha, "Gaussian width parameter in k (default 2/15)");
  sub->add_option("--center", f.center, "Packet centre site");
  sub->add_option("--k0", f.k0, "Carrier momentum, or 'auto'");
  sub->add_option("--time", f.time, "Evolution / stop time");
  sub->add_option("--out", f.out, "Output directory (default .)");
  sub->add_option("--format", f.format, "Table format: csv or json");
  sub->add_option("--jobs", f.jobs, "Worker threads for per-k sweeps");
  sub->add_option("--config", f.config, "JSON file with option values");
}

RunConfig to_config(const std::string& experiment, const Flags& f) {
  RunConfig c;
  c.experiment = experiment;
  auto integer = [](const std::string& flag, const std::string& text) {
    const double x = parse_number(flag, text);
    if (x != std::floor(x) || std::abs(x) > 1e9) throw ConfigError(kConfig, "--" + flag + ": expected an integer");
    return static_cast<int>(x);
  };
  if (!f.sites.empty()) c.sites = integer("sites", f.sites);
  if (!f.kappa.empty()) c.kappa = parse_number("kappa", f.kappa);
  if (!f.interaction.empty()) c.interaction = parse_number("interaction", f.interaction);
  if (!f.alpha.empty()) c.alpha = parse_number("alpha", f.alpha);
  if (!f.center.empty()) c.center = parse_number("center", f.center);
  c.k0 = parse_auto("k0", f.k0);
  if (!f.time.empty()) c.time = parse_number("time", f.time);
  if (!f.samples.empty()) c.samples = integer("samples", f.samples);
  if (!f.out.empty()) c.out = f.out;
  if (!f.format.empty()) c.format = f.format;
  if (!f.jobs.empty()) c.jobs = integer("jobs", f.jobs);
  if (!f.swap_factor.empty()) {
    c.swap_factor = f.swap_factor == "sqrt2" ? std::sqrt(2.0) : parse_number("swap-factor", f.swap_factor);
  }
  if (!f.sp_center.empty()) c.sp_center = parse_number("sp-center", f.sp_center);
  if (!f.bp_center.empty()) c.bp_center = parse_number("bp-center", f.bp_center);
  if (!f.bp_k0.empty()) c.bp_k0 = parse_number("bp-k0", f.bp_k0);
  if (!f.snapshots.empty()) c.snapshots = integer("snapshots", f.snapshots);
  if (!f.qubit_site.empty()) c.qubit_site = integer("qubit-site", f.qubit_site);
  if (!f.qubit_init.empty()) c.qubit_init = f.qubit_init;
  if (!f.packets.empty()) c.packets = integer("packets", f.packets);
  if (!f.u_small.empty()) c.u_small = parse_number("u-small", f.u_small);
  c.kappa0 = parse_auto("kappa0", f.kappa0);
  return c;
}

bool needs_bound_pair(const std::string& experiment) { return experiment != "switch"; }

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  os << text;
  if (!os) throw std::runtime_error("failed writing " + path.string());
}

std::string csv_table(const Table& t) {
  std::string s;
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) s += ',';
    s += t.columns[i];
  }
  s += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) s += ',';
      s += format_double(row[i]);
    }
    s += '\n';
  }
  return s;
}

ordered_json json_table(const Table& t) {
  ordered_json j;
  j["columns"] = t.columns;
  j["rows"] = ordered_json::array();
  for (const auto& row : t.rows) j["rows"].push_back(row);
  return j;
}

ordered_json config_echo(const RunConfig& c) {
  ordered_json j;
  j["experiment"] = c.experiment;
  j["sites"] = c.sites;
  j["kappa"] = c.kappa;
  j["alpha"] = c.alpha;
  j["format"] = c.format;
  j["jobs"] = c.jobs;
  if (c.interaction) j["interaction"] = *c.interaction;
  j["k0"] = c.k0 ? ordered_json(*c.k0) : ordered_json("auto");
  if (c.center) j["center"] = *c.center;
  if (c.time) j["time"] = *c.time;
  if (c.experiment == "fidelity") j["samples"] = c.samples;
  if (c.experiment == "scatter") {
    j["swap_factor"] = c.swap_factor;
    if (c.sp_center) j["sp_center"] = *c.sp_center;
    if (c.bp_center) j["bp_center"] = *c.bp_center;
    j["bp_k0"] = c.bp_k0;
    j["snapshots"] = c.snapshots;
  }
  if (c.experiment == "switch") {
    if (c.qubit_site) j["qubit_site"] = *c.qubit_site;
    j["qubit_init"] = c.qubit_init;
    j["packets"] = c.packets;
    j["u_small"] = c.u_small;
    j["kappa0"] = c.kappa0 ? ordered_json(*c.kappa0) : ordered_json("auto");
  }
  return j;
}

}  // namespace

std::string format_double(double x) {
  if (x == 0.0) return std::signbit(x) ? "-0" : "0";
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc()) throw std::runtime_error("float formatting failed");
  return std::string(buf.data(), ptr);
}

RunConfig parse_config(const std::vector<std::string>& args) {
  // locate the subcommand and an optional --config file
  std::string experiment;
  std::string config_path;
  std::vector<std::string> rest;
  for (std::size_t i = 1; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (experiment.empty() && is_experiment(a)) {
      experiment = a;
      continue;
    }
    if (a == "--config" && i + 1 < args.size()) {
      config_path = args[i + 1];
    } else if (a.rfind("--config=", 0) == 0) {
      config_path = a.substr(9);
    }
    rest.push_back(a);
  }

  std::vector<std::string> from_file;
  if (!config_path.empty()) {
    std::ifstream is(config_path);
    if (!is) throw ConfigError(kConfig, "cannot read config file '" + config_path + "'");
    nlohmann::json j;
    try {
      is >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(kConfig, "config file '" + config_path + "': " + e.what());
    }
    if (!j.is_object()) throw ConfigError(kConfig, "config file must hold a JSON object");
    for (const auto& [key, value] : j.items()) {
      if (key == "experiment") {
        const std::string name = value.is_string() ? value.get<std::string>() : "";
        if (!is_experiment(name)) throw ConfigError(kConfig, "config: unknown experiment '" + name + "'");
        if (experiment.empty()) experiment = name;
        continue;
      }
      std::string flag = key;
      std::replace(flag.begin(), flag.end(), '_', '-');
      if (flag == "config") throw ConfigError(kConfig, "config files cannot nest");
      from_file.push_back("--" + flag);
      from_file.push_back(json_scalar_text(key, value));
    }
  }
  if (experiment.empty()) {
    bool help = std::any_of(rest.begin(), rest.end(), [](const std::string& a) {
      return a == "-h" || a == "--help" || a == "--version";
    });
    if (!help) throw ConfigError(kConfig, "missing experiment: one of band, packet, fidelity, scatter, switch");
  }

  CLI::App app{"Bound-pair dynamics in a Bose-Hubbard ring", "boundpair"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.set_version_flag("--version", BOUNDPAIR_VERSION_STRING);
  Flags flags;
  std::map<std::string, CLI::App*> subs;
  for (const char* name : kExperiments) {
    CLI::App* sub = app.add_subcommand(name);
    add_common(sub, flags);
    subs[name] = sub;
  }
  subs["band"]->description("Bound-pair band: numeric vs closed form");
  subs["packet"]->description("Bound-pair Gaussian packet under the full two-boson Hamiltonian");
  subs["fidelity"]->description("Loschmidt echo of a band packet against its linearized dispersion");
  subs["fidelity"]->add_option("--samples", flags.samples, "Number of time samples in [0, T] (default 61)");
  auto* scatter = subs["scatter"];
  scatter->description("Single particle meeting a bound pair in the hardcore ring model");
  scatter->add_option("--swap-factor", flags.swap_factor, "Swap amplitude in units of kappa: 1, sqrt2 or a number");
  scatter->add_option("--sp-center", flags.sp_center, "Single-particle packet centre");
  scatter->add_option("--bp-center", flags.bp_center, "Bound-pair packet centre");
  scatter->add_option("--bp-k0", flags.bp_k0, "Bound-pair carrier momentum (default 0)");
  scatter->add_option("--snapshots", flags.snapshots, "Minimum number of stroboscopic profiles");
  auto* sw = subs["switch"];
  sw->description("Single-particle packets scattering off a bound-pair charge qubit");
  sw->add_option("--qubit-site", flags.qubit_site, "Qubit window start s (sites s .. s+3)");
  sw->add_option("--qubit-init", flags.qubit_init, "Initial qubit state: L or R");
  sw->add_option("--packets", flags.packets, "Number of sequential packets");
  sw->add_option("--u-small", flags.u_small, "Interaction U0 inside the window");
  sw->add_option("--kappa0", flags.kappa0, "Window hopping, or 'auto' (kappa / sqrt 2)");
  app.require_subcommand(1);

  std::vector<std::string> argv_store{args.empty() ? std::string("boundpair") : args[0]};
  if (!experiment.empty()) argv_store.push_back(experiment);
  argv_store.insert(argv_store.end(), from_file.begin(), from_file.end());
  argv_store.insert(argv_store.end(), rest.begin(), rest.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = experiment.empty() ? &app : subs[experiment];
    throw HelpRequested(target->help());
  } catch (const CLI::CallForVersion&) {
    throw;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(kConfig, e.what());
  }

  RunConfig cfg = to_config(experiment, flags);
  validate(cfg);
  return cfg;
}

void validate(RunConfig& c) {
  if (!is_experiment(c.experiment)) throw ConfigError(kConfig, "unknown experiment '" + c.experiment + "'");
  const bool sw = c.experiment == "switch";
  if (c.sites == 0) c.sites = sw ? 161 : 201;
  if (!c.interaction) {
    c.interaction = c.experiment == "scatter" ? 20.0 : sw ? 100.0 : 5.0;
  }
  if (!(c.kappa > 0.0)) throw ConfigError(kConfig, "--kappa must be positive");
  if (!(c.alpha > 0.0)) throw ConfigError(kConfig, "--alpha must be positive");
  if (c.jobs < 1) throw ConfigError(kConfig, "--jobs must be at least 1");
  if (c.format != "csv" && c.format != "json") throw ConfigError(kConfig, "--format must be csv or json");
  if (c.time && *c.time < 0.0) throw ConfigError(kConfig, "--time must be non-negative");
  if (c.samples < 2) throw ConfigError(kConfig, "--samples must be at least 2");
  if (c.snapshots < 1) throw ConfigError(kConfig, "--snapshots must be at least 1");
  if (sw) {
    if (c.sites < 8) throw ConfigError(kConfig, "--sites: switch chain needs at least 8 sites");
    if (c.qubit_init != "L" && c.qubit_init != "R") throw ConfigError(kConfig, "--qubit-init must be L or R");
    if (c.packets < 1) throw ConfigError(kConfig, "--packets must be at least 1");
    if (!(c.u_small > 0.0)) throw ConfigError(kConfig, "--u-small must be positive");
    if (c.kappa0 && !(*c.kappa0 > 0.0)) throw ConfigError(kConfig, "--kappa0 must be positive");
  } else {
    if (c.sites < 5) throw ConfigError(kConfig, "--sites must be at least 5");
    if (c.sites % 2 == 0) throw ConfigError(kEvenSites, "--sites must be odd (got " + std::to_string(c.sites) + ")");
  }
  if (*c.interaction == 0.0 && (needs_bound_pair(c.experiment) || sw)) {
    throw ConfigError(kNoInteraction, c.experiment + ": U = 0 has no bound pair");
  }
  const double bound = 2.0 * (2.0 * kPi / c.sites);
  if (c.experiment != "band" && c.alpha < bound) {
    throw ConfigError(kUnresolvable, "--alpha " + format_double(c.alpha) + " is below the resolvable minimum " +
                                         format_double(bound) + " for " + std::to_string(c.sites) + " sites");
  }
}

RunOutput execute(const RunConfig& c) {
  const double u = *c.interaction;
  if (c.experiment == "switch") {
    const int s = c.qubit_site ? *c.qubit_site : c.sites / 2 - 1;
    const SwitchConfig cfg(c.sites, s, c.kappa, u, c.u_small, c.kappa0 ? *c.kappa0 : -1.0);
    const PacketSpec spec{c.k0 ? *c.k0 : 0.5 * kPi, c.center ? *c.center : 0.5 * (1 + s), c.alpha};
    const QubitState q = c.qubit_init == "L" ? QubitState::L() : QubitState::R();
    return switch_run(cfg, q, c.packets, spec, SwitchOptions{c.time ? *c.time : 0.0});
  }

  const LatticeParams params(c.sites, c.kappa, u);
  if (c.experiment == "band") return band_scan(params, c.jobs);

  if (c.experiment == "scatter") {
    const double sp_default = std::max(1.0, std::round(0.15 * c.sites));
    const PacketSpec sp{c.k0 ? *c.k0 : 0.5 * kPi, c.sp_center ? *c.sp_center : sp_default, c.alpha};
    const PacketSpec bp{c.bp_k0, c.bp_center ? *c.bp_center : 0.5 * (c.sites + 1), c.alpha};
    ScatterOptions opt;
    opt.stop_time = c.time ? *c.time : 0.0;
    opt.snapshots = c.snapshots;
    return scattering_run(params, sp, bp, c.swap_factor * c.kappa, opt);
  }

  const double k0 = c.k0 ? *c.k0 : linear_point(params).k0;
  const PacketSpec spec{k0, c.center ? *c.center : 0.5 * (c.sites + 1), c.alpha};
  if (c.experiment == "packet") return packet_evolution(params, spec, c.time ? *c.time : 15.0 / c.kappa, c.jobs);

  // fidelity
  const double v = band_slope(k0, params);
  const double t_max = c.time ? *c.time : (v != 0.0 ? 30.0 / std::abs(v) : 30.0 / c.kappa);
  std::vector<double> times(c.samples);
  for (int i = 0; i < c.samples; ++i) times[i] = t_max * i / (c.samples - 1);
  return fidelity_scan(params, spec, times);
}

void write_outputs(const RunOutput& run, const RunConfig& cfg, double wall_seconds) {
  std::filesystem::create_directories(cfg.out);
  for (const Table& t : run.tables) {
    if (cfg.format == "csv") {
      write_text(cfg.out / (t.name + ".csv"), csv_table(t));
    } else {
      write_text(cfg.out / (t.name + ".json"), json_table(t).dump(1) + "\n");
    }
  }

  ordered_json summary;
  summary["experiment"] = run.experiment;
  for (const auto& [key, value] : run.summary) summary[key] = value;
  ordered_json prov;
  prov["tool"] = "boundpair";
  prov["version"] = BOUNDPAIR_VERSION_STRING;
  prov["config"] = config_echo(cfg);
  for (const auto& [key, value] : run.provenance) {
    std::visit([&, &k = key](const auto& v) { prov["run"][k] = v; }, value);
  }
  summary["provenance"] = prov;
  write_text(cfg.out / "summary.json", summary.dump(1) + "\n");

  ordered_json timing;
  timing["wall_seconds"] = wall_seconds;
  write_text(cfg.out / "timing.json", timing.dump(1) + "\n");
}

int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_config(args);
  } catch (const HelpRequested& h) {
    out << h.what();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << BOUNDPAIR_VERSION_STRING << '\n';
    return kOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return e.code();
  }

  try {
    const auto start = std::chrono::steady_clock::now();
    const RunOutput run = execute(cfg);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_outputs(run, cfg, wall);
    for (const auto& [key, value] : run.summary) out << key << " = " << format_double(value) << '\n';
    out << "wrote " << run.tables.size() + 2 << " files to " << cfg.out.string() << '\n';
    return kOk;
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << '\n';
    return kPrecondition;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const DomainError& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace boundpair::cli
