#pragma once

#include <string>

namespace qlna::units {

// Exponents over the SI base units kg, m, s, A, K. Used only by the unit
// audit tables; the numerical core works on plain doubles in SI.
struct Dimension {
  int kg = 0;
  int m = 0;
  int s = 0;
  int A = 0;
  int K = 0;

  friend constexpr bool operator==(const Dimension&, const Dimension&) = default;

  friend constexpr Dimension operator*(Dimension a, Dimension b) {
    return {a.kg + b.kg, a.m + b.m, a.s + b.s, a.A + b.A, a.K + b.K};
  }
  friend constexpr Dimension operator/(Dimension a, Dimension b) {
    return {a.kg - b.kg, a.m - b.m, a.s - b.s, a.A - b.A, a.K - b.K};
  }
};

constexpr Dimension pow(Dimension d, int n) {
  return {d.kg * n, d.m * n, d.s * n, d.A * n, d.K * n};
}

// Square root of a dimension; only defined when every exponent is even.
// Returns ok=false otherwise so the audit can flag it.
struct SqrtResult {
  Dimension dim;
  bool ok;
};

constexpr SqrtResult sqrt(Dimension d) {
  const bool even = d.kg % 2 == 0 && d.m % 2 == 0 && d.s % 2 == 0 && d.A % 2 == 0 && d.K % 2 == 0;
  if (!even) return {{}, false};
  return {{d.kg / 2, d.m / 2, d.s / 2, d.A / 2, d.K / 2}, true};
}

inline constexpr Dimension kDimensionless{};
inline constexpr Dimension kKilogram{1, 0, 0, 0, 0};
inline constexpr Dimension kMeter{0, 1, 0, 0, 0};
inline constexpr Dimension kSecond{0, 0, 1, 0, 0};
inline constexpr Dimension kAmpere{0, 0, 0, 1, 0};
inline constexpr Dimension kKelvin{0, 0, 0, 0, 1};

inline constexpr Dimension kJoule = kKilogram * pow(kMeter, 2) / pow(kSecond, 2);
inline constexpr Dimension kCoulomb = kAmpere * kSecond;
inline constexpr Dimension kVolt = kJoule / kCoulomb;
inline constexpr Dimension kOhm = kVolt / kAmpere;
inline constexpr Dimension kSiemens = kAmpere / kVolt;
inline constexpr Dimension kFarad = kCoulomb / kVolt;
inline constexpr Dimension kHenry = kOhm * kSecond;
inline constexpr Dimension kWeber = kVolt * kSecond;
inline constexpr Dimension kRadPerSecond = kDimensionless / kSecond;

inline std::string to_string(const Dimension& d) {
  std::string out;
  auto put = [&](const char* sym, int e) {
    if (e == 0) return;
    if (!out.empty()) out += ' ';
    out += sym;
    if (e != 1) out += '^' + std::to_string(e);
  };
  put("kg", d.kg);
  put("m", d.m);
  put("s", d.s);
  put("A", d.A);
  put("K", d.K);
  return out.empty() ? "1" : out;
}

}  // namespace qlna::units
