#pragma once

// Registry of built-in parametric families used by the command-line front
// end: `name` or `name(key=value, ...)` with numeric arguments.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fpforge/elliptic.hpp"
#include "fpforge/engine.hpp"
#include "fpforge/integral.hpp"

namespace fpforge {

enum class PresetSlot { VolterraF, VolterraG, HammersteinF, Kernel, Phi, ExpandingB };

[[nodiscard]] const char* to_string(PresetSlot slot) noexcept;

struct PresetCall {
  std::string name;
  std::map<std::string, double> args;  ///< every parameter of the family, defaults filled in

  [[nodiscard]] double arg(const std::string& key) const { return args.at(key); }
  friend bool operator==(const PresetCall&, const PresetCall&) = default;
};

struct PresetFamily {
  std::string name;
  std::vector<std::pair<std::string, double>> params;  ///< name and default
  std::string summary;
};

[[nodiscard]] const std::vector<PresetFamily>& preset_families(PresetSlot slot);

/// Parses and validates against the registry; throws Error(Config) with a
/// readable message on unknown names, unknown parameters or bad numbers.
[[nodiscard]] PresetCall parse_preset(PresetSlot slot, std::string_view text);
/// name(k1=v1, k2=v2) with parameters sorted by name and %.17g values.
[[nodiscard]] std::string canonical(const PresetCall& call);

[[nodiscard]] VolterraProblem make_volterra(const PresetCall& f, const PresetCall& g, Grid grid, std::size_t dim,
                                            double vector_p);
[[nodiscard]] HammersteinProblem make_hammerstein(const PresetCall& f, const PresetCall& k, const PresetCall& phi,
                                                  double p, Grid grid, std::size_t dim, double vector_p);
[[nodiscard]] Operator make_expanding(const PresetCall& b);

/// Elliptic forcing `sine:eps` (eps sin(pi x)) or `const:c`, sampled at the
/// interior nodes.
struct ForcingSpec {
  std::string kind;
  double value;
};
[[nodiscard]] ForcingSpec parse_forcing(std::string_view text);
[[nodiscard]] std::string canonical(const ForcingSpec& spec);
[[nodiscard]] std::vector<double> make_forcing(const ForcingSpec& spec, std::size_t n_interior);

/// %.17g, the number format of every CSV and config the tool writes.
[[nodiscard]] std::string format_real(double v);
/// Strict full-string parse; nullopt on trailing garbage or non-finite input.
[[nodiscard]] std::optional<double> parse_real(std::string_view text);

}  // namespace fpforge
