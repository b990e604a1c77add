#pragma once

#include <string>

// Natural units hbar = c = eps0 = mu0 = 1 with one reference angular
// frequency omega_ref; SI values appear only when a table is serialized.

namespace mqed::units {

inline constexpr double kHbar = 1.054571817e-34;     // J s
inline constexpr double kLight = 299792458.0;        // m/s
inline constexpr double kEps0 = 8.8541878128e-12;    // F/m
inline constexpr double kMu0 = 1.25663706212e-6;     // H/m

enum class Quantity {
  dimensionless,
  frequency,
  wavevector,
  length,
  velocity,
  rate,
  force_1d,
  stress_3d,
  power_1d,
  green_1d,
  correlation_1d,
  current_weight,
  coupling,
  label,  // non-numeric column
};

/// Multiplier taking a natural-unit value to SI for the given omega_ref (rad/s).
double si_factor(Quantity q, double omega_ref);

/// Unit string for the units header row.
std::string unit_label(Quantity q, bool si);

/// omega_ref from a frequency in Hz.
double omega_ref_from_hz(double hz);

}  // namespace mqed::units
