#include "fpforge/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "fpforge/elliptic.hpp"
#include "fpforge/engine.hpp"
#include "fpforge/geometry.hpp"
#include "fpforge/integral.hpp"
#include "fpforge/presets.hpp"
#include "fpforge/radius.hpp"
#include "fpforge/rng.hpp"

namespace fpforge {

namespace fs = std::filesystem;

namespace {

using Row = std::vector<std::string>;

std::string cell(double v) { return std::isnan(v) ? std::string() : format_real(v); }

class Writer {
 public:
  Writer(const RunConfig& cfg, RunManifest& manifest) : dir_(cfg.output_dir), manifest_(manifest) {
    fs::create_directories(dir_);
  }

  std::ofstream open(const std::string& name) {
    std::ofstream os(dir_ / name, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + (dir_ / name).string());
    if (std::find(manifest_.outputs.begin(), manifest_.outputs.end(), name) == manifest_.outputs.end()) {
      manifest_.outputs.push_back(name);
    }
    return os;
  }

  void table(const std::string& name, const Row& header, const std::vector<Row>& rows) {
    std::ofstream os = open(name);
    auto line = [&os](const Row& r) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
      os << "\n";
    };
    line(header);
    for (const auto& r : rows) line(r);
  }

  void grid_function(const std::string& name, const GridFunction& u) {
    std::ofstream os = open(name);
    write_csv(os, u);
  }

  void report(const IterationReport& rep) {
    std::vector<Row> rows;
    for (std::size_t k = 0; k < rep.history.size(); ++k) {
      const auto& h = rep.history[k];
      rows.push_back({std::to_string(k), cell(h.residual), h.membership_ok ? "1" : "0", cell(h.a5_margin)});
    }
    table("report.csv", {"iter", "residual", "membership_ok", "a5_margin"}, rows);
  }

  void certificates(const std::vector<Certificate>& certs, const std::string& name = "certificates.csv") {
    std::vector<Row> rows;
    for (const auto& c : certs) {
      rows.push_back({to_string(c.kind), to_string(c.verdict), c.radius ? format_real(*c.radius) : "",
                      format_real(c.margin)});
    }
    table(name, {"kind", "verdict", "radius", "margin"}, rows);
  }

 private:
  fs::path dir_;
  RunManifest& manifest_;
};

SolveOptions solve_options(const RunConfig& cfg) {
  return {cfg.real("tol"), cfg.count("max_outer"), cfg.count("max_inner")};
}

ConvexityProfile load_profile(const std::string& text, double auto_p) {
  if (text == "hilbert") return ConvexityProfile::hilbert();
  if (text == "auto") return ConvexityProfile::lp(auto_p);
  if (text.starts_with("lp:")) return ConvexityProfile::lp(*parse_real(text.substr(3)));
  const std::string path = text.substr(6);
  std::ifstream is(path);
  if (!is) throw Error(ErrorCode::Config, "cannot read profile table '" + path + "'");
  try {
    return ConvexityProfile::table_csv(is);
  } catch (const Error& e) {
    throw Error(ErrorCode::Config, "profile table '" + path + "': " + e.what());
  }
}

/// Pointwise exponent that matches a profile: the profile's p, else 2.
double profile_vector_p(const ConvexityProfile& profile) {
  return profile.kind() == ProfileKind::Lp || profile.kind() == ProfileKind::LpSmall ? profile.p() : 2.0;
}

void add(RunManifest& m, const std::string& key, double v) { m.summary.emplace_back(key, v); }

// ---------------------------------------------------------------- solves

void run_volterra(const RunConfig& cfg, RunManifest& m, Writer& out) {
  const Grid grid(cfg.real("T"), cfg.count("n_steps"));
  const VolterraProblem prob = make_volterra(parse_preset(PresetSlot::VolterraF, cfg.text("f")),
                                             parse_preset(PresetSlot::VolterraG, cfg.text("g")), grid,
                                             cfg.count("dim"), cfg.real("vector_p"));
  const VolterraResult res = solve_volterra(prob, solve_options(cfg));

  Certificate tube{CertificateKind::BoundB, Verdict::Pass};
  tube.radius = res.bound(grid.n_steps());
  tube.note = "tube radius b(T); membership is reported as membership_violations";
  m.certificates.push_back(tube);

  out.grid_function("solution.csv", res.report.final);
  out.grid_function("bound.csv", res.bound);
  out.report(res.report);
  out.certificates(m.certificates);
  add(m, "iterations", static_cast<double>(res.report.iterations));
  add(m, "final_residual", res.report.final_residual());
  add(m, "membership_violations", static_cast<double>(res.report.membership_violations));
  add(m, "tightness", res.tightness);
  add(m, "u_T", res.report.final(grid.n_steps(), 0));
}

void run_hammerstein(const RunConfig& cfg, RunManifest& m, Writer& out) {
  const Grid grid(cfg.real("T"), cfg.count("n_steps"));
  const double p = cfg.real("p");
  const HammersteinProblem prob = make_hammerstein(
      parse_preset(PresetSlot::HammersteinF, cfg.text("f")), parse_preset(PresetSlot::Kernel, cfg.text("k")),
      parse_preset(PresetSlot::Phi, cfg.text("Phi")), p, grid, cfg.count("dim"), cfg.real("vector_p"));
  const ConvexityProfile profile = load_profile(cfg.text("profile"), p);

  const Certificate ball = ball_certificate_a3(prob);
  m.certificates.push_back(ball);
  out.certificates(m.certificates);

  const HammersteinResult res =
      solve_hammerstein(prob, profile, {solve_options(cfg), cfg.flag("override_certificate")});

  Certificate a5{CertificateKind::A5};
  a5.verdict = res.a5_fail > 0 ? Verdict::Fail : (res.a5_pass > 0 ? Verdict::Pass : Verdict::PassVacuous);
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& h : res.report.history) {
    if (!std::isnan(h.a5_margin)) worst = std::min(worst, h.a5_margin);
  }
  a5.margin = std::isinf(worst) ? 0.0 : worst;
  a5.witness = {{"pass", static_cast<double>(res.a5_pass)},
                {"vacuous", static_cast<double>(res.a5_vacuous)},
                {"fail", static_cast<double>(res.a5_fail)},
                {"lemma_ball_violations", static_cast<double>(res.lemma_ball_violations)},
                {"hard_a5_blocks", static_cast<double>(res.hard_a5_blocks)}};
  a5.note = "advisory per iterate; only the final ball check blocks";
  m.certificates.push_back(a5);

  out.grid_function("solution.csv", res.report.final);
  out.report(res.report);
  out.certificates(m.certificates);
  add(m, "iterations", static_cast<double>(res.report.iterations));
  add(m, "final_residual", res.report.final_residual());
  add(m, "eps0", res.eps0);
  add(m, "hard_a5_blocks", static_cast<double>(res.hard_a5_blocks));
  add(m, "u_T", res.report.final(grid.n_steps(), 0));
  if (res.hard_a5_blocks > 0) {
    m.status = "fail";
    m.exit_code = kExitCertificate;
    m.message = "final iterate violates the ball bound ||A(u) + B(u)||_p <= R";
  }
}

void run_elliptic(const RunConfig& cfg, RunManifest& m, Writer& out) {
  EllipticProblem prob;
  prob.n_interior = cfg.count("n");
  prob.lambda = cfg.real("lambda");
  prob.mu = cfg.real("mu");
  prob.p_exp = cfg.real("p");
  prob.q_exp = cfg.real("q");
  prob.a_coef = cfg.real("a");
  prob.h_data = make_forcing(parse_forcing(cfg.text("h_preset")), prob.n_interior);
  prob.validate();

  EllipticOptions opts;
  opts.solve = solve_options(cfg);
  opts.seed = cfg.seed;
  opts.gamma_samples = cfg.count("gamma_samples");
  opts.override_certificate = cfg.flag("override_certificate");
  opts.radius = cfg.optional_real("R");

  const bool auto_mu = cfg.flag("auto_mu_star");
  const double h_norm = weighted_norm(prob.h_data, 2.0, prob.spacing());
  add(m, "lambda1", prob.lambda1());
  add(m, "h_norm", h_norm);

  std::optional<Certificate> power;
  if (prob.mu > 0.0 || auto_mu || opts.radius) {
    const GammaEstimate g = gamma_estimate(prob, prob.p_exp - 1.0, cfg.seed, opts.gamma_samples);
    opts.gamma = g.certified;
    add(m, "gamma", g.gamma);
    add(m, "gamma_certified", g.certified);
    // Power-growth ball for ||A w|| <= gamma^{p-1} ||w||^{p-1} (mu = 1 scale).
    const double a_pow = (prob.mu > 0.0 ? prob.mu : 1.0) * std::pow(g.certified, prob.p_exp - 1.0);
    power = radius_power(a_pow, prob.p_exp - 1.0);
    if (!opts.radius) opts.radius = *power->witness_value("r_star");
    if (auto_mu) {
      const Certificate c = mu_star(prob, g.certified, *opts.radius);
      if (!c.passed()) {
        m.certificates.push_back(c);
        out.certificates(m.certificates);
        throw Error(ErrorCode::CertificateRequired, "auto_mu_star: no positive mu* for R = " +
                                                        format_real(*opts.radius));
      }
      prob.mu = 0.5 * *c.witness_value("mu_star");
      add(m, "mu_used", prob.mu);
    }
  }

  EllipticResult res;
  try {
    res = solve_elliptic(prob, opts);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::CertificateRequired && opts.radius && opts.gamma) {
      m.certificates.push_back(mu_star(prob, *opts.gamma, *opts.radius));
      out.certificates(m.certificates);
    }
    throw;
  }
  if (res.certificate) m.certificates.push_back(*res.certificate);

  const double w_norm = weighted_norm(interior(res.report.final), 2.0, prob.spacing());
  if (power && prob.a_coef == 0.0 && prob.mu > 0.0) {
    Certificate c = *power;
    const double R = *c.radius;
    c.verdict = (R > 0.0 && h_norm < R) ? Verdict::Pass : Verdict::Fail;
    c.margin = R - h_norm;
    c.witness.emplace_back("final_norm", w_norm);
    c.note = "requires ||h||_2 < R; the fixed point lies in the ball of radius r_star";
    m.certificates.push_back(c);
  }

  std::vector<Row> rows{{"0", "0"}};
  for (std::size_t i = 0; i < prob.n_interior; ++i) {
    rows.push_back({format_real(prob.node(i)), format_real(res.solution[i])});
  }
  rows.push_back({"1", "0"});
  out.table("solution.csv", {"x", "u"}, rows);
  out.report(res.report);
  out.certificates(m.certificates);
  add(m, "iterations", static_cast<double>(res.report.iterations));
  add(m, "final_residual", res.report.final_residual());
  add(m, "final_norm", w_norm);
}

// ---------------------------------------------------------------- geometry

struct TriangleFuzz {
  std::size_t violations = 0;
  double worst_slack = std::numeric_limits<double>::infinity();
  std::vector<Row> rows;
};

TriangleFuzz triangle_fuzz(const ConvexityProfile& profile, std::size_t samples, std::size_t dim_min,
                           std::size_t dim_max, std::uint64_t seed) {
  require(dim_min >= 1 && dim_min <= dim_max, "dim_min must not exceed dim_max");
  auto rng = substream(seed, "triangle");
  std::normal_distribution<double> gauss;
  std::uniform_int_distribution<std::size_t> dims(dim_min, dim_max);
  std::uniform_int_distribution<int> terms(2, 5);
  std::uniform_real_distribution<double> log_mag(std::log(1e-2), std::log(1e2));
  const double vp = profile_vector_p(profile);

  TriangleFuzz out;
  for (std::size_t i = 0; i < samples; ++i) {
    const std::size_t d = dims(rng);
    std::vector<std::vector<double>> vs(static_cast<std::size_t>(terms(rng)), std::vector<double>(d));
    for (auto& v : vs) {
      const double mag = std::exp(log_mag(rng));
      for (double& x : v) x = mag * gauss(rng);
    }
    const TriangleBound tb = strong_triangle_bound(vs, vp, profile);
    const double slack = tb.bound - tb.lhs;
    const bool ok = slack >= -1e-12 * (1.0 + tb.lhs);
    if (!ok) ++out.violations;
    out.worst_slack = std::min(out.worst_slack, slack / (1.0 + tb.lhs));
    out.rows.push_back({std::to_string(i), ok ? "1" : "0", format_real(slack)});
  }
  return out;
}

void run_geometry(const RunConfig& cfg, RunManifest& m, Writer& out) {
  const ConvexityProfile profile = load_profile(cfg.text("profile"), 2.0);
  const std::string op = cfg.text("op");
  std::vector<Row> rows;
  if (op == "modulus") {
    const double eps = cfg.real("eps");
    const double d = modulus(profile, eps);
    rows.push_back({"modulus", format_real(d), ""});
    add(m, "modulus", d);
  } else if (op == "epsilon0") {
    const double e0 = epsilon0(profile);
    const SplitMinimum split = min_split_sum(profile, e0);
    rows.push_back({"epsilon0", format_real(e0), format_real(split.value - 0.5)});
    rows.push_back({"split_eps1", format_real(split.eps1), ""});
    add(m, "epsilon0", e0);
  } else if (op == "triang-fuzz") {
    const TriangleFuzz fz =
        triangle_fuzz(profile, cfg.count("samples"), cfg.count("dim_min"), cfg.count("dim_max"), cfg.seed);
    rows.push_back({"instances", std::to_string(cfg.count("samples")), ""});
    rows.push_back({"violations", std::to_string(fz.violations), format_real(fz.worst_slack)});
    add(m, "violations", static_cast<double>(fz.violations));
    if (fz.violations > 0) {
      m.status = "fail";
      m.exit_code = kExitCertificate;
      m.message = "strengthened triangle inequality violated";
    }
  } else {
    // Constant-in-time pairs (Au, Bu) in R^2 at a range of opening angles.
    const double e0 = epsilon0(profile);
    const double vp = profile_vector_p(profile);
    const Grid grid(1.0, 4);
    for (int deg : {0, 60, 120, 150, 170}) {
      const double th = deg * std::numbers::pi / 180.0;
      const GridFunction au = GridFunction::sample(grid, 2, [](double, std::span<double> o) { o[0] = 1.0; o[1] = 0.0; });
      const GridFunction bu = GridFunction::sample(grid, 2, [th](double, std::span<double> o) {
        o[0] = std::cos(th);
        o[1] = std::sin(th);
      });
      Certificate c = check_a5(au, bu, SpaceSpec::sup(vp), e0);
      rows.push_back({"a5_angle_" + std::to_string(deg), to_string(c.verdict), format_real(c.margin)});
      m.certificates.push_back(std::move(c));
    }
    rows.push_back({"epsilon0", format_real(e0), ""});
  }
  out.table("report.csv", {"quantity", "value", "margin"}, rows);
}

// ---------------------------------------------------------------- certify

void run_certify(const RunConfig& cfg, RunManifest& m, Writer& out) {
  const std::string kind = cfg.text("kind");
  Certificate c{CertificateKind::C6Radius};
  if (kind == "c6") {
    c = radius_c6(cfg.real("C"), cfg.real("T"), cfg.real("r"), cfg.real("f0"));
  } else if (kind == "power") {
    c = radius_power(cfg.real("a"), cfg.real("p"));
  } else if (kind == "mu-star") {
    c = radius_mu_star({cfg.real("p"), cfg.real("q"), cfg.real("a"), cfg.real("b"), cfg.real("lam_b")},
                       {cfg.real("R_lo"), cfg.real("R_hi")});
  } else {
    const GridFunction shape(Grid(1.0, cfg.count("n_steps")), 1);
    c = check_expanding(make_expanding(parse_preset(PresetSlot::ExpandingB, cfg.text("B"))), shape,
                        SpaceSpec::sup(), cfg.count("samples"), cfg.real_list("lambdas"), cfg.seed);
  }
  m.certificates.push_back(c);
  out.certificates(m.certificates, "certificate.csv");
  if (!c.passed()) {
    m.status = "fail";
    m.exit_code = kExitCertificate;
    m.message = c.note.empty() ? "certificate failed" : c.note;
  }
}

// ---------------------------------------------------------------- fuzz

void run_fuzz(const RunConfig& cfg, RunManifest& m, Writer& out) {
  const std::string target = cfg.text("target");
  const std::size_t samples = cfg.count("samples");
  std::vector<Row> rows;
  std::size_t violations = 0;

  if (target == "triangle") {
    const TriangleFuzz fz = triangle_fuzz(load_profile(cfg.text("profile"), 2.0), samples, 2, 8, cfg.seed);
    rows = fz.rows;
    violations = fz.violations;
  } else if (target == "tube") {
    // phi = 1 families: b is affine in t, so the discrete bound chain is exact.
    auto rng = substream(cfg.seed, "tube");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss;
    const Grid grid(1.0, cfg.count("n_steps"));
    for (std::size_t i = 0; i < samples; ++i) {
      const std::size_t dim = 1 + static_cast<std::size_t>(unit(rng) * 3.0);
      const PresetCall f{"affine", {{"c", unit(rng) - 0.5}, {"w0", 2.0 * unit(rng) - 1.0}}};
      const PresetCall g{"sine", {{"kappa", 2.0 * unit(rng)}}};
      const VolterraProblem prob = make_volterra(f, g, grid, dim, 2.0);
      const GridFunction b = bound_b(prob);
      GridFunction u(grid, dim);
      for (std::size_t n = 0; n < grid.size(); ++n) {
        auto row = u.at(n);
        for (double& x : row) x = gauss(rng);
        const double nr = vector_norm(row, 2.0);
        const double r = b(n) * unit(rng);
        for (double& x : row) x = nr > 0.0 ? x * r / nr : 0.0;
      }
      const GridFunction au = volterra_A(prob, u);
      double slack = std::numeric_limits<double>::infinity();
      for (std::size_t n = 0; n < grid.size(); ++n) slack = std::min(slack, b(n) + 1e-8 - vector_norm(au.at(n), 2.0));
      const bool ok = slack >= 0.0;
      if (!ok) ++violations;
      rows.push_back({std::to_string(i), ok ? "1" : "0", format_real(slack)});
    }
  } else {
    // Affine scalar contractions B(u) = a u + c against the closed form.
    auto rng = substream(cfg.seed, "resolvent");
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const Grid grid(1.0, 1);
    for (std::size_t i = 0; i < samples; ++i) {
      const double a = 0.95 * unit(rng);
      const double c = unit(rng);
      const double w = 5.0 * unit(rng);
      const Operator B = [a, c](const GridFunction& u) {
        GridFunction out = scale(a, u);
        for (double& v : out.values()) v += c;
        return out;
      };
      const GridFunction wf(grid, 1, {w, w});
      const ResolventResult r = resolve_contraction(B, std::abs(a), wf, SpaceSpec::sup(), 1e-13, 10000);
      const double err = std::abs(r.u(0) - (w + c) / (1.0 - a));
      const double slack = 1e-10 * (1.0 + std::abs(w + c) / (1.0 - a)) - err;
      const bool ok = slack >= 0.0;
      if (!ok) ++violations;
      rows.push_back({std::to_string(i), ok ? "1" : "0", format_real(slack)});
    }
  }
  out.table("fuzz.csv", {"case", "passed", "slack"}, rows);
  add(m, "cases", static_cast<double>(samples));
  add(m, "violations", static_cast<double>(violations));
  if (violations > 0) {
    m.status = "fail";
    m.exit_code = kExitCertificate;
    m.message = std::to_string(violations) + " property violations";
  }
}

nlohmann::json certificate_json(const Certificate& c) {
  nlohmann::json j{{"kind", to_string(c.kind)}, {"verdict", to_string(c.verdict)}, {"margin", c.margin}};
  j["radius"] = c.radius ? nlohmann::json(*c.radius) : nlohmann::json(nullptr);
  nlohmann::json w = nlohmann::json::object();
  for (const auto& [k, v] : c.witness) w[k] = std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(format_real(v));
  j["witness"] = w;
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

void write_manifest(const fs::path& dir, const std::string& text) {
  fs::create_directories(dir);
  std::ofstream os(dir / "manifest.json", std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + (dir / "manifest.json").string());
  os << text << "\n";
}

}  // namespace

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Config:
    case ErrorCode::InvalidArgument:
    case ErrorCode::NotAContraction: return kExitConfig;
    case ErrorCode::CertificateRequired:
    case ErrorCode::BlowupBeforeT:
    case ErrorCode::NoEpsilon0: return kExitCertificate;
    case ErrorCode::NoConvergence:
    case ErrorCode::ContinuationStalled: return kExitNoConvergence;
    case ErrorCode::GridMismatch:
    case ErrorCode::DegenerateAngle: return kExitInternal;
  }
  return kExitInternal;
}

std::string manifest_json(const RunManifest& m) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : m.config.params) params[k] = v;
  nlohmann::json certs = nlohmann::json::array();
  for (const auto& c : m.certificates) certs.push_back(certificate_json(c));
  nlohmann::json summary = nlohmann::json::object();
  for (const auto& [k, v] : m.summary) summary[k] = std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(format_real(v));
  nlohmann::json j{
      {"tool", "fpforge"},
      {"version", m.version},
      {"config",
       {{"subcommand", to_string(m.config.subcommand)},
        {"seed", m.config.seed},
        {"output_dir", m.config.output_dir},
        {"params", params}}},
      {"wall_seconds", m.wall_seconds},
      {"status", m.status},
      {"exit_code", m.exit_code},
      {"certificates", certs},
      {"summary", summary},
      {"outputs", m.outputs},
  };
  if (!m.error_code.empty()) j["error_code"] = m.error_code;
  if (!m.message.empty()) j["message"] = m.message;
  return j.dump(2);
}

void write_error_manifest(const std::string& output_dir, const std::string& subcommand, int exit_code,
                          const std::string& error_code, const std::vector<std::string>& messages) {
  nlohmann::json j{{"tool", "fpforge"},   {"version", kToolVersion},    {"config", {{"subcommand", subcommand}}},
                   {"status", "error"},   {"exit_code", exit_code},     {"error_code", error_code},
                   {"errors", messages},  {"outputs", nlohmann::json::array()}};
  write_manifest(output_dir, j.dump(2));
}

void apply_environment(RunConfig& config) {
  const char* env = std::getenv("FPFORGE_SEED");
  if (env == nullptr) return;
  const KeySpec seed_spec{"seed", ValueKind::Integer, "42", "", Bound::NonNegative};
  const auto [canon, err] = canonicalize(seed_spec, env);
  if (!canon) throw ConfigError({{0, "FPFORGE_SEED: " + err}});
  config.seed = std::stoull(*canon);
}

RunManifest run(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  RunManifest m;
  m.config = config;
  Writer out(config, m);

  try {
    switch (config.subcommand) {
      case Subcommand::SolveVolterra: run_volterra(config, m, out); break;
      case Subcommand::SolveHammerstein: run_hammerstein(config, m, out); break;
      case Subcommand::Elliptic: run_elliptic(config, m, out); break;
      case Subcommand::Geometry: run_geometry(config, m, out); break;
      case Subcommand::Certify: run_certify(config, m, out); break;
      case Subcommand::Fuzz: run_fuzz(config, m, out); break;
    }
  } catch (const NoConvergence& e) {
    if (e.report()) out.report(*e.report());
    m.status = "error";
    m.exit_code = kExitNoConvergence;
    m.error_code = to_string(e.code());
    m.message = e.what();
  } catch (const Error& e) {
    m.status = "error";
    m.exit_code = exit_code_for(e.code());
    m.error_code = to_string(e.code());
    m.message = e.what();
  } catch (const std::exception& e) {
    m.status = "error";
    m.exit_code = kExitInternal;
    m.error_code = "Internal";
    m.message = e.what();
  }

  m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (std::find(m.outputs.begin(), m.outputs.end(), "manifest.json") == m.outputs.end()) {
    m.outputs.push_back("manifest.json");
  }
  write_manifest(config.output_dir, manifest_json(m));
  return m;
}

}  // namespace fpforge
