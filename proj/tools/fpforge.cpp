// fpforge command-line front end.
//
//   fpforge <subcommand> [--config FILE] [--out DIR] [--<key> VALUE ...]
//
// Every config key of a subcommand is also a flag, with '_' spelled '-'.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "fpforge/config.hpp"
#include "fpforge/run.hpp"

namespace {

struct SubcommandFlags {
  fpforge::Subcommand sub;
  CLI::App* app = nullptr;
  std::string config_path;
  std::string out;
  bool print_config = false;
  std::map<std::string, std::string> values;
  std::map<std::string, bool> switches;
};

std::string flag_name(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return "--" + key;
}

const char* describe(fpforge::Subcommand sub) {
  using fpforge::Subcommand;
  switch (sub) {
    case Subcommand::SolveVolterra: return "solve u(t) = f(u(t)) + int_0^t g(s, u(s)) ds";
    case Subcommand::SolveHammerstein: return "solve u(t) = f(t, u(t)) + Phi(t, int_0^t k(t, s) u(s) ds)";
    case Subcommand::Elliptic: return "solve -u'' + lambda u = mu |u|^{p-2} u + a |u|^{q-2} u + h on (0, 1)";
    case Subcommand::Geometry: return "moduli of convexity, epsilon0, triangle-inequality fuzzing";
    case Subcommand::Certify: return "radius and expansivity certificates";
    case Subcommand::Fuzz: return "randomized property checks";
  }
  return "";
}

int config_failure(const SubcommandFlags& flags, const std::vector<std::string>& messages) {
  for (const auto& msg : messages) std::cerr << "config error: " << msg << "\n";
  try {
    fpforge::write_error_manifest(flags.out.empty() ? "out" : flags.out, fpforge::to_string(flags.sub),
                                  fpforge::kExitConfig, "Config", messages);
  } catch (const std::exception& e) {
    std::cerr << "cannot write manifest: " << e.what() << "\n";
  }
  return fpforge::kExitConfig;
}

int execute(SubcommandFlags& flags) {
  using namespace fpforge;
  if (flags.print_config) {
    std::cout << emit_config(parse_config(flags.sub, ""));
    return kExitOk;
  }

  std::string text;
  if (!flags.config_path.empty()) {
    std::ifstream is(flags.config_path);
    if (!is) return config_failure(flags, {"cannot read config file '" + flags.config_path + "'"});
    std::ostringstream ss;
    ss << is.rdbuf();
    text = ss.str();
  }

  std::vector<std::pair<std::string, std::string>> overrides;
  for (const auto& spec : schema(flags.sub)) {
    if (auto it = flags.values.find(spec.name); it != flags.values.end() && flags.app->count(flag_name(spec.name))) {
      overrides.emplace_back(spec.name, it->second);
    }
    if (auto it = flags.switches.find(spec.name); it != flags.switches.end() && flags.app->count(flag_name(spec.name))) {
      overrides.emplace_back(spec.name, it->second ? "true" : "false");
    }
  }
  if (!flags.out.empty()) overrides.emplace_back("output_dir", flags.out);

  RunConfig cfg;
  try {
    cfg = parse_config(flags.sub, text, overrides);
    apply_environment(cfg);
  } catch (const ConfigError& e) {
    std::vector<std::string> messages;
    for (const auto& issue : e.issues()) messages.push_back(issue.format());
    return config_failure(flags, messages);
  }

  RunManifest m;
  try {
    m = run(cfg);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  std::cout << to_string(cfg.subcommand) << ": " << m.status;
  if (!m.message.empty()) std::cout << " (" << m.message << ")";
  std::cout << "\n";
  for (const auto& [k, v] : m.summary) std::cout << "  " << k << " = " << v << "\n";
  for (const auto& c : m.certificates) {
    std::cout << "  certificate " << to_string(c.kind) << ": " << to_string(c.verdict) << " margin " << c.margin
              << "\n";
  }
  std::cout << "  outputs in " << cfg.output_dir << "\n";
  if (m.exit_code != kExitOk && !m.message.empty()) std::cerr << m.message << "\n";
  return m.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fpforge: sum-of-operators fixed-point solvers with certificates"};
  app.require_subcommand(1);

  std::vector<SubcommandFlags> subs;
  subs.reserve(fpforge::all_subcommands().size());
  for (fpforge::Subcommand sub : fpforge::all_subcommands()) {
    subs.push_back({sub});
    SubcommandFlags& flags = subs.back();
    flags.app = app.add_subcommand(fpforge::to_string(sub), describe(sub));
    flags.app->add_option("--config", flags.config_path, "key = value config file");
    flags.app->add_option("--out", flags.out, "output directory (overrides output_dir)");
    flags.app->add_flag("--print-config", flags.print_config, "print the default config and exit");
    for (const auto& spec : fpforge::schema(sub)) {
      std::string help = spec.help;
      if (!spec.default_value.empty()) help += " [" + spec.default_value + "]";
      if (spec.kind == fpforge::ValueKind::Flag) {
        flags.app->add_flag(flag_name(spec.name), flags.switches[spec.name], help);
      } else {
        flags.app->add_option(flag_name(spec.name), flags.values[spec.name], help);
      }
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : fpforge::kExitConfig;
  }

  for (auto& flags : subs) {
    if (flags.app->parsed()) {
      try {
        return execute(flags);
      } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return fpforge::kExitInternal;
      }
    }
  }
  return fpforge::kExitInternal;
}
