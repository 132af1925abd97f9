#pragma once

// Circuit parameters for the common-source LNA model: config ingestion,
// validation, MOS capacitances from geometry, and the small-signal
// nonlinearity constants.

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "qlna/constants.hpp"
#include "qlna/error.hpp"
#include "qlna/units.hpp"

namespace qlna {

struct CircuitParams {
  // Geometry of the input transistor.
  double W = 300e-6;        // channel width, m
  double L_t = 50e-6;       // channel length, m
  double t_SiO2 = 200e-9;   // oxide thickness, m
  double L_ov = 5e-6;       // gate overlap length, m

  double T_c = 4.0;         // K
  double gamma = 2.0 / 3.0; // channel-noise coefficient

  double C_f = 0.2e-12;     // F, recorded but not used by the model
  double C_in = 1.8e-12;    // F
  double C_d = 0.08e-12;    // F
  double L_g = 1.2e-9;      // H
  double L_d = 0.95e-9;     // H

  double g_m = 0.1;         // S
  double g_m2 = 0.25;       // A/V^2
  double g_m3 = 1.3;        // A/V^3

  double V_rf = 3e-4;                      // V
  double omega_in = 2.0 * kPi * 10e9;      // rad/s
  double R_s = 50.0;                       // ohm
  double phi1dc_rate = 0.0;                // V, d(phi1)/dt at the bias point
  double phi2dc = 0.0;                     // Wb
  double I_s0 = 0.0;                       // A
  double I_d0 = 0.0;                       // A

  // Mode damping rates in rad/s. nullopt means "omega_k / 50", resolved
  // once the mode frequencies are known.
  std::optional<double> kappa1;
  std::optional<double> kappa2;

  int fock_dim = 16;

  // Keys that took their default value when loaded from a config file.
  std::vector<std::string> defaulted;
};

/// Table 1 values plus the documented defaults for everything else.
inline CircuitParams table1() { return CircuitParams{}; }

/// Drive-free, coupling-free limit: g_m = 0, V_rf = 0, no gate-drain
/// overlap (C_gd = 0) and no bias or noise currents.
inline CircuitParams decoupled_limit(CircuitParams p) {
  p.g_m = 0.0;
  p.V_rf = 0.0;
  p.L_ov = 0.0;
  p.T_c = 0.0;
  p.I_s0 = 0.0;
  p.I_d0 = 0.0;
  return p;
}

inline constexpr double kDefaultDampingDivisor = 50.0;

inline double resolve_kappa(const std::optional<double>& kappa, double omega) {
  return kappa ? *kappa : omega / kDefaultDampingDivisor;
}

// ---------------------------------------------------------------------------
// Validation

inline void validate(const CircuitParams& p) {
  auto positive = [](const char* key, double v) {
    if (!(v > 0.0) || !std::isfinite(v)) throw Error("params", std::string(key) + " must be positive");
  };
  auto non_negative = [](const char* key, double v) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw Error("params", std::string(key) + " must be non-negative");
  };
  auto finite = [](const char* key, double v) {
    if (!std::isfinite(v)) throw Error("params", std::string(key) + " must be finite");
  };

  positive("W", p.W);
  positive("L_t", p.L_t);
  positive("t_SiO2", p.t_SiO2);
  positive("L_ov", p.L_ov);
  positive("T_c", p.T_c);
  if (!(p.gamma > 0.0 && p.gamma <= 2.0)) throw Error("params", "gamma must lie in (0, 2]");
  positive("C_f", p.C_f);
  positive("C_in", p.C_in);
  positive("C_d", p.C_d);
  positive("L_g", p.L_g);
  positive("L_d", p.L_d);
  non_negative("g_m", p.g_m);
  finite("g_m2", p.g_m2);
  finite("g_m3", p.g_m3);
  finite("V_rf", p.V_rf);
  non_negative("omega_in", p.omega_in);
  positive("R_s", p.R_s);
  finite("phi1dc_rate", p.phi1dc_rate);
  finite("phi2dc", p.phi2dc);
  finite("I_s0", p.I_s0);
  finite("I_d0", p.I_d0);
  if (p.kappa1) non_negative("kappa1", *p.kappa1);
  if (p.kappa2) non_negative("kappa2", *p.kappa2);
  if (p.fock_dim < 4) throw Error("params", "fock_dim must be >= 4");
}

// ---------------------------------------------------------------------------
// Config files: "key = value" per line, '#' starts a comment, SI units.

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline double parse_double(const std::string& key, std::string_view text) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || begin == end)
    throw Error("params", "malformed number for " + key + ": '" + std::string(text) + "'");
  return value;
}

inline int parse_int(const std::string& key, std::string_view text) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw Error("params", "malformed integer for " + key + ": '" + std::string(text) + "'");
  return value;
}

}  // namespace detail

/// Keys a config file must define (the Table 1 quantities).
inline const std::vector<std::string>& required_config_keys() {
  static const std::vector<std::string> keys = {"W",   "L_t",  "t_SiO2", "L_ov", "T_c", "gamma", "C_f",
                                                "C_in", "C_d", "L_g",    "L_d",  "g_m2", "g_m3"};
  return keys;
}

inline CircuitParams parse_config(std::istream& in) {
  std::map<std::string, std::string> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = detail::trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos)
      throw Error("params", "line " + std::to_string(lineno) + ": expected 'key = value'");
    std::string key(detail::trim(view.substr(0, eq)));
    std::string value(detail::trim(view.substr(eq + 1)));
    if (key.empty()) throw Error("params", "line " + std::to_string(lineno) + ": empty key");
    if (value.empty()) throw Error("params", "missing value for " + key);
    if (!entries.emplace(key, value).second) throw Error("params", "duplicate key " + key);
  }

  for (const auto& key : required_config_keys())
    if (!entries.count(key)) throw Error("params", "missing required key " + key);

  CircuitParams p;
  p.defaulted.clear();
  std::map<std::string, double*> reals = {
      {"W", &p.W},         {"L_t", &p.L_t},         {"t_SiO2", &p.t_SiO2},     {"L_ov", &p.L_ov},
      {"T_c", &p.T_c},     {"gamma", &p.gamma},     {"C_f", &p.C_f},           {"C_in", &p.C_in},
      {"C_d", &p.C_d},     {"L_g", &p.L_g},         {"L_d", &p.L_d},           {"g_m", &p.g_m},
      {"g_m2", &p.g_m2},   {"g_m3", &p.g_m3},       {"V_rf", &p.V_rf},         {"omega_in", &p.omega_in},
      {"R_s", &p.R_s},     {"phi1dc_rate", &p.phi1dc_rate}, {"phi2dc", &p.phi2dc}, {"I_s0", &p.I_s0},
      {"I_d0", &p.I_d0}};

  for (const auto& [key, text] : entries) {
    if (auto it = reals.find(key); it != reals.end()) {
      *it->second = detail::parse_double(key, text);
    } else if (key == "kappa1") {
      p.kappa1 = detail::parse_double(key, text);
    } else if (key == "kappa2") {
      p.kappa2 = detail::parse_double(key, text);
    } else if (key == "fock_dim") {
      p.fock_dim = detail::parse_int(key, text);
    } else {
      throw Error("params", "unknown key " + key);
    }
  }
  for (const auto& [key, ptr] : reals)
    if (!entries.count(key)) p.defaulted.push_back(key);
  for (const char* key : {"kappa1", "kappa2", "fock_dim"})
    if (!entries.count(key)) p.defaulted.emplace_back(key);

  validate(p);
  return p;
}

inline CircuitParams parse_config(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

inline CircuitParams load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("params", "cannot open config file " + path);
  return parse_config(in);
}

/// Config text for `p`, round-trippable through parse_config.
inline std::string to_config_text(const CircuitParams& p);

// ---------------------------------------------------------------------------
// Derived device quantities

struct DeviceCaps {
  double C_gs;       // F
  double C_gd;       // F
  double C_ox_area;  // F/m^2
};

// Long-channel parallel-plate model: 2/3 of the channel area plus the
// overlap region for C_gs, overlap only for C_gd.
inline DeviceCaps derive_device_caps(const CircuitParams& p) {
  const double c_ox = kEpsilon0 * kEpsilonSiO2 / p.t_SiO2;
  const double overlap = p.W * p.L_ov * c_ox;
  return {(2.0 / 3.0) * p.W * p.L_t * c_ox + overlap, overlap, c_ox};
}

struct Nonlinearity {
  double g_m3L;  // A/V^2
  double g_NL;   // A/V^2
  double C_N;    // F
};

inline Nonlinearity derive_nonlinearity(const CircuitParams& p) {
  const double g_m3L = p.g_m3 * p.phi1dc_rate;
  return {g_m3L, p.g_m2 + 2.0 * g_m3L, (2.0 * p.g_m2 + 3.0 * g_m3L) * p.phi2dc};
}

struct BiasCurrents {
  double I_s_bar;  // A
  double I_d_bar;  // A
};

// Implemented as written: sqrt(4 k T R_s) is V not A. The noise-figure
// path does not use these values.
inline BiasCurrents bias_noise_currents(const CircuitParams& p) {
  return {p.I_s0 + std::sqrt(4.0 * kBoltzmann * p.T_c * p.R_s),
          p.I_d0 + std::sqrt(4.0 * kBoltzmann * p.T_c * p.gamma * p.g_m)};
}

// ---------------------------------------------------------------------------
// Unit audit: recompute each derived quantity's dimension from the
// dimensions of its inputs and compare with the declared unit.

struct UnitAuditRow {
  std::string name;
  double value;
  units::Dimension declared;
  units::Dimension derived;
  bool consistent;
  bool known_mismatch;  // documented oddity, reported rather than failed
};

inline std::vector<UnitAuditRow> unit_audit(const CircuitParams& p) {
  using namespace units;
  const DeviceCaps caps = derive_device_caps(p);
  const Nonlinearity nl = derive_nonlinearity(p);
  const BiasCurrents bias = bias_noise_currents(p);

  const Dimension eps0 = kFarad / kMeter;
  const Dimension c_ox = eps0 / kMeter;
  const Dimension g2 = kAmpere / pow(kVolt, 2);
  const Dimension g3 = kAmpere / pow(kVolt, 3);
  const Dimension kT = (kJoule / kKelvin) * kKelvin;
  const auto noise_s = units::sqrt(kT * kOhm);
  const auto noise_d = units::sqrt(kT * kSiemens);

  std::vector<UnitAuditRow> rows;
  auto add = [&](std::string name, double v, Dimension declared, Dimension derived, bool known = false) {
    rows.push_back({std::move(name), v, declared, derived, declared == derived, known});
  };
  add("C_ox_area", caps.C_ox_area, kFarad / pow(kMeter, 2), c_ox);
  add("C_gd", caps.C_gd, kFarad, kMeter * kMeter * c_ox);
  add("C_gs", caps.C_gs, kFarad, kMeter * kMeter * c_ox);
  add("g_m3L", nl.g_m3L, g2, g3 * kVolt);
  add("g_NL", nl.g_NL, g2, g2);
  add("C_N", nl.C_N, kFarad, g2 * kWeber);
  add("I_s_bar", bias.I_s_bar, kAmpere, noise_s.ok ? noise_s.dim : Dimension{}, true);
  add("I_d_bar", bias.I_d_bar, kAmpere, noise_d.ok ? noise_d.dim : Dimension{}, true);
  return rows;
}

// ---------------------------------------------------------------------------

namespace detail {
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}
}  // namespace detail

inline std::string to_config_text(const CircuitParams& p) {
  std::ostringstream out;
  auto put = [&](const char* key, double v) { out << key << " = " << detail::format_double(v) << '\n'; };
  put("W", p.W);
  put("L_t", p.L_t);
  put("t_SiO2", p.t_SiO2);
  put("L_ov", p.L_ov);
  put("T_c", p.T_c);
  put("gamma", p.gamma);
  put("C_f", p.C_f);
  put("C_in", p.C_in);
  put("C_d", p.C_d);
  put("L_g", p.L_g);
  put("L_d", p.L_d);
  put("g_m", p.g_m);
  put("g_m2", p.g_m2);
  put("g_m3", p.g_m3);
  put("V_rf", p.V_rf);
  put("omega_in", p.omega_in);
  put("R_s", p.R_s);
  put("phi1dc_rate", p.phi1dc_rate);
  put("phi2dc", p.phi2dc);
  put("I_s0", p.I_s0);
  put("I_d0", p.I_d0);
  if (p.kappa1) put("kappa1", *p.kappa1);
  if (p.kappa2) put("kappa2", *p.kappa2);
  out << "fock_dim = " << p.fock_dim << '\n';
  return out.str();
}

}  // namespace qlna
