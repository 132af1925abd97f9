#pragma once

// CSV emission and file output. Numbers are written with the shortest
// round-trip representation, so output is byte-stable across runs.

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "qlna/error.hpp"
#include "qlna/response.hpp"

namespace qlna::io {

inline std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// Commas and line breaks would break the row structure of a free-text cell.
inline std::string csv_cell(std::string s) {
  for (char& ch : s)
    if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
  return s;
}

inline std::string join_row(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) out += ',';
    out += cells[k];
  }
  out += '\n';
  return out;
}

inline constexpr const char* kSweepHeader = "omega_in,g_m,n1ph,n2ph,dV1sq,dV2sq,dI1sq,dI2sq,nf,nf_db,status";

inline std::string sweep_csv(const std::vector<NfPoint>& rows) {
  std::string out = std::string(kSweepHeader) + '\n';
  for (const NfPoint& r : rows)
    out += join_row({fmt(r.omega_in), fmt(r.g_m), fmt(r.n1ph), fmt(r.n2ph), fmt(r.fl.dV1sq), fmt(r.fl.dV2sq),
                     fmt(r.fl.dI1sq), fmt(r.fl.dI2sq), fmt(r.nf), fmt(r.nf_db), csv_cell(r.status)});
  return out;
}

/// Writes through a sibling temporary and renames it over the target, so a
/// reader never observes a partially written file.
inline void write_atomic(const std::filesystem::path& target, const std::string& content) {
  std::filesystem::path tmp = target;
  tmp += ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("io", "cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      std::filesystem::remove(tmp);
      throw Error("io", "write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("io", "cannot move output into place at " + target.string() + ": " + ec.message());
  }
}

/// `out/nf.csv` -> `out/nf.manifest.txt`.
inline std::filesystem::path manifest_path(const std::filesystem::path& csv) {
  std::filesystem::path m = csv;
  m.replace_extension(".manifest.txt");
  return m;
}

/// UTC timestamp; SOURCE_DATE_EPOCH pins it for reproducible manifests.
inline std::string wall_clock_utc() {
  std::time_t t = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    long long v = 0;
    const char* end = epoch + std::char_traits<char>::length(epoch);
    if (auto [p, ec] = std::from_chars(epoch, end, v); ec == std::errc{} && p == end) t = static_cast<std::time_t>(v);
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Manifest {
  std::string tool_version;
  std::string verb;
  std::string mode;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::string config_text;

  std::string render(const std::string& timestamp) const {
    std::string out;
    out += "tool = qlna " + tool_version + '\n';
    out += "verb = " + verb + '\n';
    out += "mode = " + mode + '\n';
    out += "wall_clock = " + timestamp + '\n';
    out += "[parameters]\n";
    for (const auto& [k, v] : parameters) out += k + " = " + v + '\n';
    out += "[config]\n";
    out += config_text;
    return out;
  }
};

}  // namespace qlna::io
