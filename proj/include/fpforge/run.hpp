#pragma once

// Dispatch of a RunConfig to the owning module, CSV emission and the JSON
// run manifest.

#include <string>
#include <utility>
#include <vector>

#include "fpforge/certificate.hpp"
#include "fpforge/config.hpp"
#include "fpforge/error.hpp"

namespace fpforge {

inline constexpr const char* kToolVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitCertificate = 3;
inline constexpr int kExitNoConvergence = 4;
inline constexpr int kExitInternal = 5;

[[nodiscard]] int exit_code_for(ErrorCode code) noexcept;

struct RunManifest {
  RunConfig config;
  std::string version = kToolVersion;
  double wall_seconds = 0.0;
  /// "ok", "fail" (primary verdict negative) or "error".
  std::string status = "ok";
  int exit_code = kExitOk;
  std::string error_code;  ///< ErrorCode name when status is "error"
  std::string message;
  std::vector<Certificate> certificates;
  std::vector<std::pair<std::string, double>> summary;
  std::vector<std::string> outputs;  ///< file names relative to output_dir
};

/// Runs the configured subcommand, writes its CSVs and `manifest.json` into
/// config.output_dir. Documented failures are reported through the manifest
/// and exit_code; only failures to write the output directory escape, as
/// std::exception.
[[nodiscard]] RunManifest run(const RunConfig& config);

[[nodiscard]] std::string manifest_json(const RunManifest& manifest);

/// Writes `manifest.json` for a run that failed before a RunConfig existed.
void write_error_manifest(const std::string& output_dir, const std::string& subcommand, int exit_code,
                          const std::string& error_code, const std::vector<std::string>& messages);

/// Applies FPFORGE_SEED when set. Throws ConfigError on a malformed value.
void apply_environment(RunConfig& config);

}  // namespace fpforge
