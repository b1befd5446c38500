#pragma once

// Flat `key = value` run configuration. Every subcommand has a schema of
// typed keys with defaults; values are stored in canonical text form so that
// emit -> parse round-trips exactly.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fpforge/error.hpp"
#include "fpforge/presets.hpp"

namespace fpforge {

enum class Subcommand { SolveVolterra, SolveHammerstein, Elliptic, Geometry, Certify, Fuzz };

[[nodiscard]] const char* to_string(Subcommand sub) noexcept;
[[nodiscard]] std::optional<Subcommand> parse_subcommand(std::string_view name);
[[nodiscard]] const std::vector<Subcommand>& all_subcommands();

enum class ValueKind {
  Real,
  Integer,
  Flag,
  Choice,
  Text,
  Preset,
  Forcing,
  Profile,       ///< hilbert | lp:<p> | table:<csv path> (| auto where allowed)
  VectorNorm,    ///< real >= 1 or inf
  OptionalReal,  ///< real or none
  RealList,      ///< comma-separated reals
};

enum class Bound { Any, Positive, NonNegative };

struct KeySpec {
  std::string name;
  ValueKind kind;
  std::string default_value;  ///< empty for required keys
  std::string help;
  Bound bound = Bound::Any;
  std::vector<std::string> choices;
  PresetSlot slot = PresetSlot::VolterraF;
  bool required = false;
};

[[nodiscard]] const std::vector<KeySpec>& schema(Subcommand sub);

/// Canonical form of `value` for `spec`, or the error message.
[[nodiscard]] std::pair<std::optional<std::string>, std::string> canonicalize(const KeySpec& spec,
                                                                              std::string_view value);

struct ConfigIssue {
  std::size_t line = 0;  ///< 1-based; 0 for command-line overrides
  std::string message;

  [[nodiscard]] std::string format() const;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<ConfigIssue> issues);
  [[nodiscard]] const std::vector<ConfigIssue>& issues() const noexcept { return issues_; }

 private:
  std::vector<ConfigIssue> issues_;
};

struct RunConfig {
  Subcommand subcommand = Subcommand::Geometry;
  std::map<std::string, std::string> params;  ///< canonical text, seed and output_dir excluded
  std::uint64_t seed = 42;
  std::string output_dir = "out";

  [[nodiscard]] const std::string& text(const std::string& key) const;
  [[nodiscard]] double real(const std::string& key) const;
  [[nodiscard]] std::optional<double> optional_real(const std::string& key) const;
  [[nodiscard]] std::size_t count(const std::string& key) const;
  [[nodiscard]] bool flag(const std::string& key) const;
  [[nodiscard]] std::vector<double> real_list(const std::string& key) const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Overrides are applied after the file, as if appended; they are reported
/// with line 0. Throws ConfigError listing every problem found.
[[nodiscard]] RunConfig parse_config(Subcommand sub, std::string_view text,
                                     const std::vector<std::pair<std::string, std::string>>& overrides = {});

[[nodiscard]] std::string emit_config(const RunConfig& config);

}  // namespace fpforge
