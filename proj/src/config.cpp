#include "fpforge/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

namespace fpforge {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

KeySpec real(std::string name, std::string def, std::string help, Bound bound = Bound::Any) {
  return {std::move(name), ValueKind::Real, std::move(def), std::move(help), bound};
}
KeySpec count(std::string name, std::string def, std::string help) {
  return {std::move(name), ValueKind::Integer, std::move(def), std::move(help), Bound::Positive};
}
KeySpec flag(std::string name, std::string help) {
  return {std::move(name), ValueKind::Flag, "false", std::move(help)};
}
KeySpec preset(std::string name, PresetSlot slot, std::string def, std::string help) {
  KeySpec k{std::move(name), ValueKind::Preset, std::move(def), std::move(help)};
  k.slot = slot;
  return k;
}
KeySpec choice(std::string name, std::vector<std::string> choices, std::string def, std::string help) {
  KeySpec k{std::move(name), ValueKind::Choice, std::move(def), std::move(help)};
  k.choices = std::move(choices);
  k.required = k.default_value.empty();
  return k;
}

std::vector<KeySpec> with_common(std::vector<KeySpec> keys) {
  keys.insert(keys.begin(), {
                                {"seed", ValueKind::Integer, "42", "run seed (FPFORGE_SEED overrides)", Bound::NonNegative},
                                {"output_dir", ValueKind::Text, "out", "directory for CSVs and the manifest"},
                            });
  return keys;
}

std::optional<std::string> check_bound(const KeySpec& spec, double v) {
  if (spec.bound == Bound::Positive && !(v > 0.0)) return spec.name + " must be positive";
  if (spec.bound == Bound::NonNegative && !(v >= 0.0)) return spec.name + " must be non-negative";
  return std::nullopt;
}

}  // namespace

const char* to_string(Subcommand sub) noexcept {
  switch (sub) {
    case Subcommand::SolveVolterra: return "solve-volterra";
    case Subcommand::SolveHammerstein: return "solve-hammerstein";
    case Subcommand::Elliptic: return "elliptic";
    case Subcommand::Geometry: return "geometry";
    case Subcommand::Certify: return "certify";
    case Subcommand::Fuzz: return "fuzz";
  }
  return "?";
}

const std::vector<Subcommand>& all_subcommands() {
  static const std::vector<Subcommand> subs{Subcommand::SolveVolterra, Subcommand::SolveHammerstein,
                                            Subcommand::Elliptic,      Subcommand::Geometry,
                                            Subcommand::Certify,       Subcommand::Fuzz};
  return subs;
}

std::optional<Subcommand> parse_subcommand(std::string_view name) {
  for (Subcommand s : all_subcommands()) {
    if (name == to_string(s)) return s;
  }
  return std::nullopt;
}

const std::vector<KeySpec>& schema(Subcommand sub) {
  static const std::vector<KeySpec> volterra = with_common({
      real("T", "1", "final time", Bound::Positive),
      count("n_steps", "2000", "grid intervals"),
      count("dim", "1", "dimension d of the state"),
      {"vector_p", ValueKind::VectorNorm, "2", "pointwise norm exponent (>= 1 or inf)"},
      real("tol", "1e-10", "outer residual tolerance", Bound::Positive),
      count("max_outer", "500", "outer iteration budget"),
      count("max_inner", "10000", "resolvent iteration budget"),
      preset("f", PresetSlot::VolterraF, "affine(c=0.5, w0=1)", "contraction part f"),
      preset("g", PresetSlot::VolterraG, "linear(kappa=0.5)", "integrand g with its growth bound"),
  });
  static const std::vector<KeySpec> hammerstein = with_common({
      real("T", "1", "final time", Bound::Positive),
      count("n_steps", "2000", "grid intervals"),
      count("dim", "1", "dimension d of the state"),
      real("p", "2", "time exponent of L^p, > 1", Bound::Positive),
      {"vector_p", ValueKind::VectorNorm, "2", "pointwise norm exponent (>= 1 or inf)"},
      real("tol", "1e-8", "outer residual tolerance", Bound::Positive),
      count("max_outer", "500", "outer iteration budget"),
      count("max_inner", "10000", "resolvent iteration budget"),
      preset("f", PresetSlot::HammersteinF, "linear(c=-0.5)", "pointwise part f(t, x)"),
      preset("k", PresetSlot::Kernel, "exp_decay(rate=1)", "kernel k(t, s)"),
      preset("Phi", PresetSlot::Phi, "tanh(shift=0.5)", "outer map Phi(t, v) with its bound G psi"),
      {"profile", ValueKind::Profile, "auto", "convexity profile for A5 checks (auto = lp:p)"},
      flag("override_certificate", "solve even when the ball certificate fails"),
  });
  static const std::vector<KeySpec> elliptic = with_common({
      count("n", "100", "interior grid points"),
      real("lambda", "0", "coefficient of u"),
      real("mu", "0", "coefficient of |u|^{p-2} u", Bound::NonNegative),
      real("p", "4", "power p > 2"),
      real("q", "1.5", "power q in [3/2, 2)"),
      real("a", "0", "coefficient of |u|^{q-2} u", Bound::NonNegative),
      {"h_preset", ValueKind::Forcing, "sine:0.001", "forcing: sine:<eps> or const:<c>"},
      {"R", ValueKind::OptionalReal, "none", "ball radius for the mu* certificate", Bound::Positive},
      flag("auto_mu_star", "set mu to half the certified mu*"),
      count("gamma_samples", "10000", "random samples for the gamma estimate"),
      real("tol", "1e-10", "outer residual tolerance", Bound::Positive),
      count("max_outer", "500", "outer iteration budget"),
      count("max_inner", "10000", "resolvent iteration budget"),
      flag("override_certificate", "solve even when mu is not certified"),
  });
  static const std::vector<KeySpec> geometry = with_common({
      choice("op", {"modulus", "epsilon0", "triang-fuzz", "a5-demo"}, "epsilon0", "operation"),
      {"profile", ValueKind::Profile, "hilbert", "hilbert, lp:<p> or table:<csv>"},
      real("eps", "1", "argument of the modulus, in [0, 2]", Bound::NonNegative),
      count("samples", "10000", "random instances for triang-fuzz"),
      count("dim_min", "2", "smallest dimension for triang-fuzz"),
      count("dim_max", "8", "largest dimension for triang-fuzz"),
  });
  static const std::vector<KeySpec> certify = with_common({
      choice("kind", {"mu-star", "power", "c6", "expanding"}, "", "certificate to compute"),
      real("C", "0.1", "c6: constant C", Bound::Positive),
      real("T", "1", "c6: final time", Bound::Positive),
      real("r", "1", "c6: growth exponent", Bound::NonNegative),
      real("f0", "0", "c6: norm of f(., 0)", Bound::NonNegative),
      real("a", "1", "power, mu-star: coefficient a", Bound::NonNegative),
      real("p", "2", "power, mu-star: exponent p", Bound::Positive),
      real("q", "0.5", "mu-star: sublinear exponent q", Bound::Positive),
      real("b", "0", "mu-star: constant term b", Bound::NonNegative),
      real("lam_b", "0", "mu-star: lambda times Lip(B)", Bound::NonNegative),
      real("R_lo", "1e-6", "mu-star: bracket low end", Bound::Positive),
      real("R_hi", "1e6", "mu-star: bracket high end", Bound::Positive),
      preset("B", PresetSlot::ExpandingB, "scale(c=-1)", "expanding: operator B"),
      count("samples", "1000", "expanding: random samples"),
      count("n_steps", "50", "expanding: grid intervals of the samples"),
      {"lambdas", ValueKind::RealList, "0.5, 1, 2", "expanding: lambda grid", Bound::Positive},
  });
  static const std::vector<KeySpec> fuzz = with_common({
      choice("target", {"triangle", "tube", "resolvent"}, "triangle", "property to fuzz"),
      count("samples", "1000", "random instances"),
      {"profile", ValueKind::Profile, "hilbert", "triangle: convexity profile"},
      count("n_steps", "100", "tube: grid intervals"),
  });
  switch (sub) {
    case Subcommand::SolveVolterra: return volterra;
    case Subcommand::SolveHammerstein: return hammerstein;
    case Subcommand::Elliptic: return elliptic;
    case Subcommand::Geometry: return geometry;
    case Subcommand::Certify: return certify;
    case Subcommand::Fuzz: return fuzz;
  }
  return geometry;
}

std::pair<std::optional<std::string>, std::string> canonicalize(const KeySpec& spec, std::string_view raw) {
  const std::string_view value = trim(raw);
  const std::string shown(value);
  auto fail = [](std::string msg) { return std::pair<std::optional<std::string>, std::string>{std::nullopt, msg}; };
  auto ok = [](std::string v) { return std::pair<std::optional<std::string>, std::string>{std::move(v), ""}; };

  switch (spec.kind) {
    case ValueKind::Real: {
      const auto v = parse_real(value);
      if (!v) return fail(spec.name + " expects a number, got '" + shown + "'");
      if (auto e = check_bound(spec, *v)) return fail(*e);
      return ok(format_real(*v));
    }
    case ValueKind::OptionalReal: {
      if (value == "none") return ok("none");
      const auto v = parse_real(value);
      if (!v) return fail(spec.name + " expects a number or 'none', got '" + shown + "'");
      if (auto e = check_bound(spec, *v)) return fail(*e);
      return ok(format_real(*v));
    }
    case ValueKind::Integer: {
      std::uint64_t v = 0;
      const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
      if (value.empty() || ec != std::errc() || ptr != value.data() + value.size()) {
        return fail(spec.name + " expects a non-negative integer, got '" + shown + "'");
      }
      if (spec.bound == Bound::Positive && v == 0) return fail(spec.name + " must be positive");
      return ok(std::to_string(v));
    }
    case ValueKind::Flag: {
      if (value == "true" || value == "1" || value == "yes") return ok("true");
      if (value == "false" || value == "0" || value == "no") return ok("false");
      return fail(spec.name + " expects true or false, got '" + shown + "'");
    }
    case ValueKind::Choice: {
      if (std::find(spec.choices.begin(), spec.choices.end(), shown) != spec.choices.end()) return ok(shown);
      std::string known;
      for (const auto& c : spec.choices) known += (known.empty() ? "" : ", ") + c;
      return fail(spec.name + " must be one of " + known + ", got '" + shown + "'");
    }
    case ValueKind::Text:
      if (value.empty()) return fail(spec.name + " must not be empty");
      return ok(shown);
    case ValueKind::Preset:
      try {
        return ok(canonical(parse_preset(spec.slot, value)));
      } catch (const Error& e) {
        return fail(spec.name + ": " + std::string(e.what()).substr(std::string("Config: ").size()));
      }
    case ValueKind::Forcing:
      try {
        return ok(canonical(parse_forcing(value)));
      } catch (const Error& e) {
        return fail(spec.name + ": " + std::string(e.what()).substr(std::string("Config: ").size()));
      }
    case ValueKind::Profile: {
      if (value == "hilbert" || (value == "auto" && spec.default_value == "auto")) return ok(shown);
      if (value.starts_with("lp:")) {
        const auto p = parse_real(value.substr(3));
        if (!p || !(*p > 1.0)) return fail(spec.name + ": lp exponent must be a number > 1");
        return ok("lp:" + format_real(*p));
      }
      if (value.starts_with("table:") && value.size() > 6) return ok(shown);
      return fail(spec.name + " must be hilbert, lp:<p> or table:<csv path>, got '" + shown + "'");
    }
    case ValueKind::VectorNorm: {
      if (value == "inf") return ok("inf");
      const auto v = parse_real(value);
      if (!v || *v < 1.0) return fail(spec.name + " must be a number >= 1 or inf, got '" + shown + "'");
      return ok(format_real(*v));
    }
    case ValueKind::RealList: {
      std::string out;
      std::string_view rest = value;
      while (true) {
        const auto comma = rest.find(',');
        const auto v = parse_real(rest.substr(0, comma));
        if (!v) return fail(spec.name + " expects comma-separated numbers, got '" + shown + "'");
        if (auto e = check_bound(spec, *v)) return fail(*e);
        out += (out.empty() ? "" : ", ") + format_real(*v);
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
      }
      return ok(out);
    }
  }
  return fail("unsupported key kind");
}

std::string ConfigIssue::format() const {
  if (line == 0) return "command line: " + message;
  return "line " + std::to_string(line) + ": " + message;
}

namespace {
std::string join_issues(const std::vector<ConfigIssue>& issues) {
  std::string out;
  for (const auto& i : issues) out += (out.empty() ? "" : "; ") + i.format();
  return out;
}
}  // namespace

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : Error(ErrorCode::Config, join_issues(issues)), issues_(std::move(issues)) {}

const std::string& RunConfig::text(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end()) throw Error(ErrorCode::Config, "missing key '" + key + "'");
  return it->second;
}

double RunConfig::real(const std::string& key) const {
  const auto& t = text(key);
  if (t == "inf") return std::numeric_limits<double>::infinity();
  const auto v = parse_real(t);
  if (!v) throw Error(ErrorCode::Config, key + " is not a number");
  return *v;
}

std::optional<double> RunConfig::optional_real(const std::string& key) const {
  if (text(key) == "none") return std::nullopt;
  return real(key);
}

std::size_t RunConfig::count(const std::string& key) const { return std::stoull(text(key)); }

bool RunConfig::flag(const std::string& key) const { return text(key) == "true"; }

std::vector<double> RunConfig::real_list(const std::string& key) const {
  std::vector<double> out;
  std::stringstream ss(text(key));
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(*parse_real(item));
  return out;
}

RunConfig parse_config(Subcommand sub, std::string_view text,
                       const std::vector<std::pair<std::string, std::string>>& overrides) {
  const auto& keys = schema(sub);
  auto find_spec = [&](std::string_view name) -> const KeySpec* {
    for (const auto& k : keys) {
      if (k.name == name) return &k;
    }
    return nullptr;
  };

  std::vector<ConfigIssue> issues;
  std::map<std::string, std::string> values;
  std::map<std::string, std::size_t> first_line;

  auto assign = [&](std::size_t line, std::string_view key, std::string_view value) {
    const KeySpec* spec = find_spec(key);
    if (spec == nullptr) {
      issues.push_back({line, "unknown key '" + std::string(key) + "' for " + to_string(sub)});
      return;
    }
    if (line != 0) {
      if (const auto it = first_line.find(spec->name); it != first_line.end()) {
        issues.push_back({line, "duplicate key '" + spec->name + "' (first set on line " +
                                    std::to_string(it->second) + ")"});
        return;
      }
      first_line[spec->name] = line;
    }
    auto [canon, err] = canonicalize(*spec, value);
    if (!canon) {
      issues.push_back({line, err});
      return;
    }
    values[spec->name] = *canon;
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      issues.push_back({line_no, "expected 'key = value', got '" + std::string(line) + "'"});
      continue;
    }
    const std::string_view key = trim(line.substr(0, eq));
    if (key.empty()) {
      issues.push_back({line_no, "missing key before '='"});
      continue;
    }
    assign(line_no, key, line.substr(eq + 1));
  }
  for (const auto& [k, v] : overrides) assign(0, k, v);

  for (const auto& k : keys) {
    if (values.contains(k.name)) continue;
    if (k.required) {
      issues.push_back({line_no + 1, "missing required key '" + k.name + "' (end of input)"});
      continue;
    }
    values[k.name] = *canonicalize(k, k.default_value).first;
  }
  if (!issues.empty()) throw ConfigError(std::move(issues));

  RunConfig cfg;
  cfg.subcommand = sub;
  cfg.seed = std::stoull(values.at("seed"));
  cfg.output_dir = values.at("output_dir");
  values.erase("seed");
  values.erase("output_dir");
  cfg.params = std::move(values);
  return cfg;
}

std::string emit_config(const RunConfig& config) {
  std::ostringstream os;
  os << "# " << to_string(config.subcommand) << "\n";
  for (const auto& k : schema(config.subcommand)) {
    os << "# " << k.help << "\n";
    if (k.name == "seed") os << "seed = " << config.seed << "\n";
    else if (k.name == "output_dir") os << "output_dir = " << config.output_dir << "\n";
    else os << k.name << " = " << config.params.at(k.name) << "\n";
  }
  return os.str();
}

}  // namespace fpforge
