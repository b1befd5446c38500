#include "fpforge/presets.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "fpforge/error.hpp"

namespace fpforge {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorCode::Config, what); }

double pointwise_scale(std::size_t dim, double vector_p) {
  // ||(1, ..., 1)|| in the vector p-norm.
  return std::isinf(vector_p) ? 1.0 : std::pow(static_cast<double>(dim), 1.0 / vector_p);
}

}  // namespace

const char* to_string(PresetSlot slot) noexcept {
  switch (slot) {
    case PresetSlot::VolterraF: return "f";
    case PresetSlot::VolterraG: return "g";
    case PresetSlot::HammersteinF: return "f";
    case PresetSlot::Kernel: return "k";
    case PresetSlot::Phi: return "Phi";
    case PresetSlot::ExpandingB: return "B";
  }
  return "?";
}

const std::vector<PresetFamily>& preset_families(PresetSlot slot) {
  static const std::vector<PresetFamily> volterra_f{
      {"affine", {{"c", 0.5}, {"w0", 1.0}}, "f(x) = c x + w0 (every component)"},
      {"neg_arctan", {{"s", 0.5}}, "f(x) = -s arctan(x), componentwise"},
      {"zero", {}, "f = 0"},
  };
  static const std::vector<PresetFamily> volterra_g{
      {"linear", {{"kappa", 0.5}}, "g(s, u) = kappa u; alpha = |kappa|, phi(x) = 1 + x"},
      {"sine", {{"kappa", 1.0}}, "g(s, u) = kappa sin(u); alpha = |kappa| d^{1/p}, phi = 1"},
      {"const", {{"c", 1.0}}, "g(s, u) = c; alpha = |c| d^{1/p}, phi = 1"},
      {"zero", {}, "g = 0"},
  };
  static const std::vector<PresetFamily> hammerstein_f{
      {"linear", {{"c", -0.5}}, "f(t, x) = c x"},
      {"zero", {}, "f = 0"},
  };
  static const std::vector<PresetFamily> kernel{
      {"const", {{"kappa", 1.0}}, "k(t, s) = kappa"},
      {"product", {{"kappa", 1.0}}, "k(t, s) = kappa t s"},
      {"exp_decay", {{"rate", 1.0}}, "k(t, s) = exp(-rate (t - s))"},
  };
  static const std::vector<PresetFamily> phi{
      {"identity", {}, "Phi(t, v) = v; G = 1, psi(x) = x"},
      {"shift", {{"h", 1.0}}, "Phi(t, v) = v + h; G = 1, psi(x) = x + |h| d^{1/p}"},
      {"tanh", {{"shift", 0.0}}, "Phi(t, v) = tanh(v + shift); G = 1, psi = d^{1/p}"},
  };
  static const std::vector<PresetFamily> expanding{
      {"scale", {{"c", -1.0}}, "B(u) = c u"},
      {"cube", {{"c", -1.0}}, "B(u) = c u^3, componentwise"},
  };
  switch (slot) {
    case PresetSlot::VolterraF: return volterra_f;
    case PresetSlot::VolterraG: return volterra_g;
    case PresetSlot::HammersteinF: return hammerstein_f;
    case PresetSlot::Kernel: return kernel;
    case PresetSlot::Phi: return phi;
    case PresetSlot::ExpandingB: return expanding;
  }
  return volterra_f;
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::optional<double> parse_real(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

PresetCall parse_preset(PresetSlot slot, std::string_view text) {
  text = trim(text);
  const auto open = text.find('(');
  const std::string name(trim(text.substr(0, open)));
  const auto& families = preset_families(slot);
  const PresetFamily* family = nullptr;
  for (const auto& f : families) {
    if (f.name == name) family = &f;
  }
  if (family == nullptr) {
    std::string known;
    for (const auto& f : families) known += (known.empty() ? "" : ", ") + f.name;
    config_error("unknown " + std::string(to_string(slot)) + " preset '" + name + "' (known: " + known + ")");
  }

  PresetCall call{name, {}};
  for (const auto& [k, v] : family->params) call.args[k] = v;
  if (open == std::string_view::npos) return call;
  if (text.back() != ')') config_error("preset '" + std::string(text) + "' is missing ')'");

  std::string_view body = text.substr(open + 1, text.size() - open - 2);
  std::vector<std::string> seen;
  while (!trim(body).empty()) {
    const auto comma = body.find(',');
    const std::string_view item = trim(body.substr(0, comma));
    body = comma == std::string_view::npos ? std::string_view{} : body.substr(comma + 1);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) config_error("preset argument '" + std::string(item) + "' must be key=value");
    const std::string key(trim(item.substr(0, eq)));
    if (!call.args.contains(key)) {
      config_error("preset '" + name + "' has no parameter '" + key + "'");
    }
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
      config_error("preset parameter '" + key + "' given twice");
    }
    seen.push_back(key);
    const auto value = parse_real(item.substr(eq + 1));
    if (!value) config_error("preset parameter '" + key + "' must be a finite number");
    call.args[key] = *value;
  }
  return call;
}

std::string canonical(const PresetCall& call) {
  if (call.args.empty()) return call.name;
  std::string out = call.name + "(";
  bool first = true;
  for (const auto& [k, v] : call.args) {
    out += (first ? "" : ", ") + k + "=" + format_real(v);
    first = false;
  }
  return out + ")";
}

VolterraProblem make_volterra(const PresetCall& f, const PresetCall& g, Grid grid, std::size_t dim,
                              double vector_p) {
  VolterraProblem prob;
  prob.grid = grid;
  prob.dim = dim;
  prob.vector_p = vector_p;
  const double ones = pointwise_scale(dim, vector_p);

  if (f.name == "affine") {
    const double c = f.arg("c");
    const double w0 = f.arg("w0");
    prob.f = [c, w0](std::span<const double> x, std::span<double> out) {
      for (std::size_t k = 0; k < x.size(); ++k) out[k] = c * x[k] + w0;
    };
    prob.lam = std::abs(c);
  } else if (f.name == "neg_arctan") {
    const double s = f.arg("s");
    prob.f = [s](std::span<const double> x, std::span<double> out) {
      for (std::size_t k = 0; k < x.size(); ++k) out[k] = -s * std::atan(x[k]);
    };
    prob.lam = std::abs(s);
  } else {
    prob.f = [](std::span<const double>, std::span<double> out) { std::fill(out.begin(), out.end(), 0.0); };
    prob.lam = 0.0;
  }

  if (g.name == "linear") {
    const double kappa = g.arg("kappa");
    prob.g = [kappa](double, std::span<const double> x, std::span<double> out) {
      for (std::size_t k = 0; k < x.size(); ++k) out[k] = kappa * x[k];
    };
    prob.alpha = [kappa](double) { return std::abs(kappa); };
    prob.phi = [](double x) { return 1.0 + x; };
  } else if (g.name == "sine") {
    const double kappa = g.arg("kappa");
    prob.g = [kappa](double, std::span<const double> x, std::span<double> out) {
      for (std::size_t k = 0; k < x.size(); ++k) out[k] = kappa * std::sin(x[k]);
    };
    prob.alpha = [kappa, ones](double) { return std::abs(kappa) * ones; };
    prob.phi = [](double) { return 1.0; };
  } else if (g.name == "const") {
    const double c = g.arg("c");
    prob.g = [c](double, std::span<const double>, std::span<double> out) { std::fill(out.begin(), out.end(), c); };
    prob.alpha = [c, ones](double) { return std::abs(c) * ones; };
    prob.phi = [](double) { return 1.0; };
  } else {
    prob.g = [](double, std::span<const double>, std::span<double> out) { std::fill(out.begin(), out.end(), 0.0); };
    prob.alpha = [](double) { return 0.0; };
    prob.phi = [](double) { return 1.0; };
  }
  return prob;
}

HammersteinProblem make_hammerstein(const PresetCall& f, const PresetCall& k, const PresetCall& phi, double p,
                                    Grid grid, std::size_t dim, double vector_p) {
  HammersteinProblem prob;
  prob.p = p;
  prob.grid = grid;
  prob.dim = dim;
  prob.vector_p = vector_p;
  const double ones = pointwise_scale(dim, vector_p);

  if (f.name == "linear") {
    const double c = f.arg("c");
    prob.f = [c](double, std::span<const double> x, std::span<double> out) {
      for (std::size_t i = 0; i < x.size(); ++i) out[i] = c * x[i];
    };
    prob.f_lip = std::abs(c);
  } else {
    prob.f = [](double, std::span<const double>, std::span<double> out) { std::fill(out.begin(), out.end(), 0.0); };
    prob.f_lip = 0.0;
  }

  if (k.name == "const") {
    const double kappa = k.arg("kappa");
    prob.k = [kappa](double, double) { return kappa; };
  } else if (k.name == "product") {
    const double kappa = k.arg("kappa");
    prob.k = [kappa](double t, double s) { return kappa * t * s; };
  } else {
    const double rate = k.arg("rate");
    prob.k = [rate](double t, double s) { return std::exp(-rate * (t - s)); };
  }

  prob.G = [](double) { return 1.0; };
  if (phi.name == "shift") {
    const double h = phi.arg("h");
    prob.Phi = [h](double, std::span<const double> v, std::span<double> out) {
      for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] + h;
    };
    prob.psi = [h, ones](double x) { return x + std::abs(h) * ones; };
  } else if (phi.name == "tanh") {
    const double shift = phi.arg("shift");
    prob.Phi = [shift](double, std::span<const double> v, std::span<double> out) {
      for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::tanh(v[i] + shift);
    };
    prob.psi = [ones](double) { return ones; };
  } else {
    prob.Phi = [](double, std::span<const double> v, std::span<double> out) { std::copy(v.begin(), v.end(), out.begin()); };
    prob.psi = [](double x) { return x; };
  }
  return prob;
}

Operator make_expanding(const PresetCall& b) {
  const double c = b.arg("c");
  if (b.name == "cube") {
    return [c](const GridFunction& u) {
      GridFunction out = u;
      for (double& v : out.values()) v = c * v * v * v;
      return out;
    };
  }
  return [c](const GridFunction& u) { return scale(c, u); };
}

ForcingSpec parse_forcing(std::string_view text) {
  text = trim(text);
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) config_error("forcing must be sine:<eps> or const:<c>");
  const std::string kind(trim(text.substr(0, colon)));
  if (kind != "sine" && kind != "const") config_error("unknown forcing '" + kind + "' (known: sine, const)");
  const auto value = parse_real(text.substr(colon + 1));
  if (!value) config_error("forcing amplitude must be a finite number");
  return {kind, *value};
}

std::string canonical(const ForcingSpec& spec) { return spec.kind + ":" + format_real(spec.value); }

std::vector<double> make_forcing(const ForcingSpec& spec, std::size_t n_interior) {
  std::vector<double> h(n_interior, spec.value);
  if (spec.kind == "sine") {
    const double dx = 1.0 / static_cast<double>(n_interior + 1);
    for (std::size_t i = 0; i < n_interior; ++i) {
      h[i] = spec.value * std::sin(std::numbers::pi * static_cast<double>(i + 1) * dx);
    }
  }
  return h;
}

}  // namespace fpforge
