#pragma once

#include <cmath>

namespace uavcpn::units {

inline double dbw_to_watt(double dbw) { return std::pow(10.0, dbw / 10.0); }
inline double watt_to_dbw(double w) { return 10.0 * std::log10(w); }
inline double dbm_to_watt(double dbm) { return std::pow(10.0, dbm / 10.0) * 1e-3; }
inline double watt_to_dbm(double w) { return 10.0 * std::log10(w * 1e3); }

// Attenuation quoted as "x dB" means a linear power factor of 10^(-x/10).
inline double db_attenuation_to_linear(double db) { return std::pow(10.0, -db / 10.0); }

inline double per_km2_to_per_m2(double d) { return d * 1e-6; }
inline double per_m2_to_per_km2(double d) { return d * 1e6; }

// Decimal megabyte: 10^6 bytes of 8 bits.
inline double megabytes_to_bits(double mb) { return mb * 8e6; }

inline double ms_to_s(double ms) { return ms * 1e-3; }
inline double s_to_ms(double s) { return s * 1e3; }

inline double km_to_m(double km) { return km * 1e3; }
inline double kj_to_j(double kj) { return kj * 1e3; }

}  // namespace uavcpn::units
