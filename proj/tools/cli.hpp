#pragma once

// `qlna` command line: argument parsing into a Command and dispatch to the
// library. Kept in a header so the test suite can drive it in-process.

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qlna/appendix_a.hpp"
#include "qlna/fockspace.hpp"
#include "qlna/io.hpp"
#include "qlna/params.hpp"
#include "qlna/response.hpp"
#include "qlna/spectra.hpp"
#include "qlna/validate.hpp"

namespace qlna::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kComputeError = 1, kUsageError = 2, kValidationFailure = 3 };

struct Command {
  std::string verb;
  std::string config;
  EvaluationMode mode = EvaluationMode::consistent;
  SweepGrid grid = SweepGrid::fixture();
  unsigned threads = 1;
  bool thermal = false;
  int j1 = 0, j2 = 0;
  std::optional<int> dim;
  double lambda = 1.0;
  std::string out;  // empty: stdout
  // Flags as given on the command line, echoed into the manifest.
  std::map<std::string, std::string> options;
};

struct ParseResult {
  std::optional<Command> command;
  int exit_code = kOk;
  std::string message;
};

inline unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

inline ParseResult parse_args(int argc, const char* const* argv) {
  CLI::App app{"Quantum noise analysis of a common-source LNA", "qlna"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Command cmd;
  cmd.threads = default_threads();
  std::string mode = "consistent";

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", cmd.config, "circuit parameter file (key = value)")
        ->envname("QLNA_CONFIG")
        ->required();
    sub->add_option("--mode", mode, "evaluation mode")->check(CLI::IsMember({"literal", "consistent"}));
  };
  auto output = [&](CLI::App* sub) { sub->add_option("--out", cmd.out, "output CSV (default: stdout)"); };
  auto threads = [&](CLI::App* sub) {
    sub->add_option("--threads", cmd.threads, "worker threads")->check(CLI::PositiveNumber);
  };
  auto grid = [&](CLI::App* sub) {
    sub->add_option("--win-min", cmd.grid.win_min, "lowest drive frequency (rad/s)");
    sub->add_option("--win-max", cmd.grid.win_max, "highest drive frequency (rad/s)");
    sub->add_option("--win-steps", cmd.grid.win_steps, "drive frequency points");
    sub->add_option("--gm-min", cmd.grid.gm_min, "lowest transconductance (S)");
    sub->add_option("--gm-max", cmd.grid.gm_max, "highest transconductance (S)");
    sub->add_option("--gm-steps", cmd.grid.gm_steps, "transconductance points");
    sub->add_flag("--thermal", cmd.thermal, "add Bose-Einstein occupation at T_c to the photon numbers");
  };

  CLI::App* derive = app.add_subcommand("derive", "circuit constants as CSV");
  common(derive);
  output(derive);

  CLI::App* modes = app.add_subcommand("modes", "oscillator frequencies and impedances");
  common(modes);
  output(modes);

  CLI::App* perturb = app.add_subcommand("perturb", "first-order state correction and spectrum");
  common(perturb);
  output(perturb);
  perturb->add_option("--j1", cmd.j1, "oscillator I level")->check(CLI::NonNegativeNumber);
  perturb->add_option("--j2", cmd.j2, "oscillator II level")->check(CLI::NonNegativeNumber);
  perturb->add_option("--dim", cmd.dim, "Fock levels per oscillator (default: config fock_dim)");
  perturb->add_option("--lambda", cmd.lambda, "scale of the cubic term in the exact spectrum");

  for (const char* name : {"sweep-photons", "sweep-nf"}) {
    CLI::App* sub = app.add_subcommand(name, name == std::string("sweep-nf") ? "noise figure over the drive grid"
                                                                            : "photon numbers over the drive grid");
    common(sub);
    output(sub);
    threads(sub);
    grid(sub);
  }

  CLI::App* validate = app.add_subcommand("validate", "run the invariant suite");
  common(validate);
  threads(validate);

  ParseResult result;
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    const int code = app.exit(e, out, err);
    result.message = out.str() + err.str();
    if (code == 0) {
      result.exit_code = kOk;
    } else {
      result.exit_code = kUsageError;
      result.message += "\n" + app.help();
    }
    return result;
  }

  CLI::App* chosen = app.get_subcommands().front();
  cmd.verb = chosen->get_name();
  cmd.mode = parse_mode(mode);
  for (const CLI::Option* opt : chosen->get_options()) {
    if (opt->count() == 0 || opt->get_name() == "--help") continue;
    const auto values = opt->results();
    cmd.options[opt->get_name()] = values.empty() ? "true" : values.back();
  }

  auto usage = [&](const std::string& what) {
    result.exit_code = kUsageError;
    result.message = "qlna " + cmd.verb + ": " + what + "\n" + chosen->help();
    return result;
  };
  if (cmd.verb == "sweep-photons" || cmd.verb == "sweep-nf") {
    const SweepGrid& g = cmd.grid;
    if (g.win_steps < 2 || g.gm_steps < 2) return usage("steps >= 2 required for --win-steps and --gm-steps");
    if (!(g.win_min > 0) || !(g.win_max > g.win_min)) return usage("need 0 < --win-min < --win-max");
    if (!(g.gm_min > 0) || !(g.gm_max > g.gm_min)) return usage("need 0 < --gm-min < --gm-max");
  }
  if (cmd.verb == "perturb" && cmd.dim && *cmd.dim < 4) return usage("--dim must be at least 4");

  result.command = std::move(cmd);
  return result;
}

// ---------------------------------------------------------------------------

struct NamedValue {
  std::string name;
  cplx value;
  std::string units;
};

inline std::vector<NamedValue> derive_table(const AppendixAConstants& c) {
  const ReciprocalCaps& r = c.rc;
  const DriveConsts& d = c.drive;
  const ModePair& m = c.modes;
  const SteadyStateCoefficients& k = c.coeffs;
  std::vector<NamedValue> t{
      {"C_ox_area", c.caps.C_ox_area, "F/m^2"},
      {"C_gs", c.caps.C_gs, "F"},
      {"C_gd", c.caps.C_gd, "F"},
      {"g_m3L", c.nl.g_m3L, "A/V^2"},
      {"g_NL", c.nl.g_NL, "A/V^2"},
      {"C_N", c.nl.C_N, "F"},
      {"I_s_bar", c.bias.I_s_bar, "A"},
      {"I_d_bar", c.bias.I_d_bar, "A"},
      {"M11", c.matrix.m00, "F"},
      {"M12", c.matrix.m01, "F"},
      {"M22", c.matrix.m11, "F"},
      {"C11", c.inverse.C11, "1/F"},
      {"C12", c.inverse.C12, "1/F"},
      {"C21", c.inverse.C21, "1/F"},
      {"C22", c.inverse.C22, "1/F"},
      {"det_C", c.inverse.det_C, "F^2"},
      {"C11_mode_delta", c.c11_mode_delta, "1"},
      {"r_q1", r.q1, "1/F"},
      {"r_q2", r.q2, "1/F"},
      {"r_q1q2", r.q1q2, "1/F"},
      {"r_p1", r.p1, "1/F"},
      {"r_p2", r.p2, "1/F"},
      {"r_q1p1", r.q1p1, "1/F"},
      {"r_q2p2", r.q2p2, "1/F"},
      {"r_q1p2", r.q1p2, "1/F"},
      {"r_p1p2", r.p1p2, "1/F"},
      {"r_q2p1", r.q2p1, "1/F"},
      {"r_p1p2_nl", r.p1p2_nl, "1/F"},
      {"r_q1p2_nl", r.q1p2_nl, "1/F"},
      {"r_q2p2_nl", r.q2p2_nl, "1/F"},
      {"P11", d.P11, "1"},
      {"P12", d.P12, "1"},
      {"P21", d.P21, "1"},
      {"P22", d.P22, "1"},
      {"P1", d.P1, "1"},
      {"P2", d.P2, "1"},
      {"q11", d.q11, "1"},
      {"q12", d.q12, "1"},
      {"q13", d.q13, "1"},
      {"q21", d.q21, "1"},
      {"q22", d.q22, "1"},
      {"q23", d.q23, "1"},
      {"G1", d.G1, "1"},
      {"G2", d.G2, "1"},
      {"force1", d.force1, "A"},
      {"force2", d.force2, "A"},
      {"omega1", m.omega1, "rad/s"},
      {"omega2", m.omega2, "rad/s"},
      {"Z1", m.Z1, "ohm"},
      {"Z2", m.Z2, "ohm"},
      {"L_g_eff", m.L_g_eff, "H"},
      {"L_d_eff", m.L_d_eff, "H"},
      {"C_q1", m.C_q1, "F"},
      {"C_q2", m.C_q2, "F"},
      {"A1", k.A1, "1"},
      {"A2", k.A2, "1"},
      {"A3", k.A3, "1"},
      {"B1", k.B1, "1"},
      {"B2", k.B2, "1"},
      {"B3", k.B3, "1"},
      {"E1w", k.E1w, "1/s"},
      {"E2w", k.E2w, "1/s"},
  };
  const EffectiveElements e = effective_elements(c);
  for (const auto& [name, v, u] : std::initializer_list<std::tuple<const char*, double, const char*>>{
           {"inv_C_Q1", e.inv_C_Q1, "1/F"},
           {"inv_C_Q12", e.inv_C_Q12, "1/F"},
           {"inv_C_Q2", e.inv_C_Q2, "1/F"},
           {"inv_C_Q21", e.inv_C_Q21, "1/F"},
           {"inv_L_g1", e.inv_L_g1, "1/H"},
           {"inv_L_g12", e.inv_L_g12, "1/H"},
           {"inv_L_d2", e.inv_L_d2, "1/H"},
           {"inv_L_d21", e.inv_L_d21, "1/H"}})
    t.push_back({name, v, u});
  return t;
}

namespace detail {

inline void emit(const Command& cmd, const CircuitParams& p, const std::string& csv, std::ostream& out,
                 std::vector<std::pair<std::string, std::string>> extra = {}) {
  if (cmd.out.empty()) {
    out << csv;
    return;
  }
  io::Manifest man{kVersion, cmd.verb, std::string(to_string(cmd.mode)), {}, to_config_text(p)};
  man.parameters.emplace_back("config_path", cmd.config);
  for (const auto& [k, v] : cmd.options)
    if (k != "--config" && k != "--threads") man.parameters.emplace_back(k, v);
  for (auto& kv : extra) man.parameters.push_back(std::move(kv));
  io::write_atomic(cmd.out, csv);
  io::write_atomic(io::manifest_path(cmd.out), man.render(io::wall_clock_utc()));
}

inline int run_derive(const Command& cmd, const CircuitParams& p, std::ostream& out) {
  const AppendixAConstants c = derive_constants(p, cmd.mode);
  std::string csv = "name,value_re,value_im,units,mode\n";
  const std::string mode(to_string(cmd.mode));
  for (const NamedValue& v : derive_table(c))
    csv += io::join_row({v.name, io::fmt(v.value.real()), io::fmt(v.value.imag()), v.units, mode});
  emit(cmd, p, csv, out);
  return kOk;
}

inline int run_modes(const Command& cmd, const CircuitParams& p, std::ostream& out) {
  const ModePair m = derive_constants(p, cmd.mode).modes;
  const double two_pi = 2 * kPi;
  std::string csv = "name,rad_per_s,hz\n";
  for (const auto& [name, w] : {std::pair{"omega1", m.omega1}, {"omega2", m.omega2}, {"omega1+omega2",
                                                                                       m.omega1 + m.omega2}})
    csv += io::join_row({name, io::fmt(w), io::fmt(w / two_pi)});
  if (!cmd.out.empty()) {
    emit(cmd, p, csv, out);
  }
  out << std::setprecision(6);
  out << "mode " << to_string(cmd.mode) << "\n";
  out << "omega1        " << m.omega1 << " rad/s   " << m.omega1 / two_pi << " Hz\n";
  out << "omega2        " << m.omega2 << " rad/s   " << m.omega2 / two_pi << " Hz\n";
  out << "omega1+omega2 " << m.omega1 + m.omega2 << " rad/s   " << (m.omega1 + m.omega2) / two_pi << " Hz\n";
  out << "Z1            " << m.Z1 << " ohm\n";
  out << "Z2            " << m.Z2 << " ohm\n";
  return kOk;
}

inline int run_perturb(const Command& cmd, const CircuitParams& p, std::ostream& out) {
  const int dim = cmd.dim.value_or(p.fock_dim);
  const AppendixAConstants c = derive_constants(p, cmd.mode);
  const Matrix h0 = build_h0(c, dim);
  const Matrix hp = build_hp(c, dim);
  const StateCorrection sc = first_order_state(cmd.j1, cmd.j2, hp, h0);

  std::string csv = "state,amplitude_re,amplitude_im,in_printed_subset\n";
  for (const auto& [key, amp] : sc.amplitudes)
    csv += io::join_row({"|" + std::to_string(key.j1) + ";" + std::to_string(key.j2) + ">",
                         io::fmt(amp.amplitude.real()), io::fmt(amp.amplitude.imag()),
                         amp.in_printed_subset ? "1" : "0"});

  std::vector<FockKey> levels;
  const int top = std::min(dim - 4, 3);
  for (int i1 = 0; i1 <= top; ++i1)
    for (int i2 = 0; i2 <= top; ++i2) levels.push_back({i1, i2});
  if (cmd.j1 > top || cmd.j2 > top) levels.push_back({cmd.j1, cmd.j2});
  const SpectrumReport rep = exact_spectrum(h0, hp, cmd.lambda, c, levels);

  csv += "\nlevel,literal_re,literal_im,numeric_re,numeric_im,exact_re,exact_im\n";
  for (const LevelReport& l : rep.levels)
    csv += io::join_row({"|" + std::to_string(l.level.j1) + ";" + std::to_string(l.level.j2) + ">",
                         io::fmt(l.literal.real()), io::fmt(l.literal.imag()), io::fmt(l.numeric.real()),
                         io::fmt(l.numeric.imag()), io::fmt(l.exact.real()), io::fmt(l.exact.imag())});
  emit(cmd, p, csv, out,
       {{"dim", std::to_string(dim)}, {"norm_correction", io::fmt(sc.norm_correction)}});
  return kOk;
}

inline int run_sweep(const Command& cmd, const CircuitParams& p, std::ostream& out) {
  const std::vector<NfPoint> rows = sweep(cmd.grid, p, {cmd.mode, cmd.threads, cmd.thermal});
  const SweepGrid& g = cmd.grid;
  emit(cmd, p, io::sweep_csv(rows), out,
       {{"win_min", io::fmt(g.win_min)},
        {"win_max", io::fmt(g.win_max)},
        {"win_steps", std::to_string(g.win_steps)},
        {"gm_min", io::fmt(g.gm_min)},
        {"gm_max", io::fmt(g.gm_max)},
        {"gm_steps", std::to_string(g.gm_steps)},
        {"row_order", "g_m outer, omega_in inner"}});
  return kOk;
}

inline int run_validate(const Command& cmd, const CircuitParams& p, std::ostream& out) {
  const std::vector<checks::CheckRow> rows = checks::run_all(p, cmd.threads);
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.name.size());
  out << std::left;
  for (const auto& r : rows) {
    out << std::setw(static_cast<int>(width) + 2) << r.name << checks::to_string(r.status) << "  "
        << std::setw(14) << io::fmt(r.measured);
    if (r.status != checks::Status::info) out << " limit " << std::setw(8) << io::fmt(r.limit);
    if (!r.note.empty()) out << "  " << r.note;
    out << '\n';
  }
  const bool ok = checks::all_pass(rows);
  out << (ok ? "all invariants hold\n" : "one or more invariants FAILED\n");
  return ok ? kOk : kValidationFailure;
}

}  // namespace detail

inline int run(const Command& cmd, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  try {
    const CircuitParams p = load_config(cmd.config);
    if (cmd.verb == "derive") return detail::run_derive(cmd, p, out);
    if (cmd.verb == "modes") return detail::run_modes(cmd, p, out);
    if (cmd.verb == "perturb") return detail::run_perturb(cmd, p, out);
    if (cmd.verb == "sweep-photons" || cmd.verb == "sweep-nf") return detail::run_sweep(cmd, p, out);
    if (cmd.verb == "validate") return detail::run_validate(cmd, p, out);
    err << "qlna: unknown verb " << cmd.verb << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "qlna " << cmd.verb << ": " << e.what() << '\n';
    return kComputeError;
  }
}

inline int main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  const ParseResult parsed = parse_args(argc, argv);
  if (!parsed.command) {
    (parsed.exit_code == kOk ? out : err) << parsed.message;
    return parsed.exit_code;
  }
  return run(*parsed.command, out, err);
}

}  // namespace qlna::cli
