#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fpforge {

enum class CertificateKind { MuStar, PowerRadius, C6Radius, BallA3, BoundB, Expanding, A5 };
enum class Verdict { Pass, Fail, PassVacuous };

[[nodiscard]] constexpr const char* to_string(CertificateKind k) noexcept {
  switch (k) {
    case CertificateKind::MuStar: return "mu-star";
    case CertificateKind::PowerRadius: return "power";
    case CertificateKind::C6Radius: return "c6";
    case CertificateKind::BallA3: return "ball-a3";
    case CertificateKind::BoundB: return "bound-b";
    case CertificateKind::Expanding: return "expanding";
    case CertificateKind::A5: return "a5";
  }
  return "unknown";
}

[[nodiscard]] constexpr const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::PassVacuous: return "PASS-VACUOUS";
  }
  return "unknown";
}

/// Outcome of a hypothesis check. PASS implies margin >= 0.
struct Certificate {
  CertificateKind kind;
  Verdict verdict = Verdict::Fail;
  std::optional<double> radius;
  double margin = 0.0;
  std::vector<std::pair<std::string, double>> witness;
  std::string note;

  [[nodiscard]] bool passed() const noexcept { return verdict != Verdict::Fail; }

  [[nodiscard]] std::optional<double> witness_value(std::string_view name) const {
    for (const auto& [k, v] : witness) {
      if (k == name) return v;
    }
    return std::nullopt;
  }
};

}  // namespace fpforge
