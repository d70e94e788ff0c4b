#pragma once

#include <cmath>
#include <numbers>

// Conversions between the engineering units used in configuration files and
// the SI units used everywhere inside the library (m, s, rad/s, W, J).
namespace brickwall::units {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double km(double v) { return v * 1e3; }
constexpr double to_km(double m) { return m * 1e-3; }

constexpr double ps(double v) { return v * 1e-12; }
constexpr double ns(double v) { return v * 1e-9; }
constexpr double pj(double v) { return v * 1e-12; }
constexpr double mw(double v) { return v * 1e-3; }

/// Ordinary frequency in GHz to angular frequency in rad/s.
constexpr double ghz_to_rad(double f_ghz) { return kTwoPi * f_ghz * 1e9; }
constexpr double rad_to_ghz(double w) { return w / (kTwoPi * 1e9); }

/// Power attenuation in dB/km to the field-energy coefficient alpha in 1/m.
inline double db_per_km_to_per_m(double db) { return db * std::log(10.0) / 10.0 / 1e3; }
inline double per_m_to_db_per_km(double a) { return a * 1e3 * 10.0 / std::log(10.0); }

constexpr double ps2_per_km_to_s2_per_m(double b) { return b * 1e-27; }
constexpr double s2_per_m_to_ps2_per_km(double b) { return b * 1e27; }

constexpr double per_w_per_km_to_per_w_per_m(double g) { return g * 1e-3; }
constexpr double per_w_per_m_to_per_w_per_km(double g) { return g * 1e3; }

}  // namespace brickwall::units
