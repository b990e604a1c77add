#include "mqed/units.hpp"

#include <cmath>
#include <numbers>

namespace mqed::units {

double si_factor(Quantity q, double w) {
  switch (q) {
    case Quantity::dimensionless:
    case Quantity::label:
      return 1.0;
    case Quantity::frequency:
    case Quantity::rate:
      return w;
    case Quantity::wavevector:
      return w / kLight;
    case Quantity::length:
    case Quantity::green_1d:
      return kLight / w;
    case Quantity::velocity:
      return kLight;
    case Quantity::force_1d:
      return kHbar * w * w / kLight;
    case Quantity::stress_3d:
      return kHbar * std::pow(w, 4) / std::pow(kLight, 3);
    case Quantity::power_1d:
      return kHbar * w * w;
    case Quantity::correlation_1d:
      return kHbar * kMu0 * kLight * w;
    case Quantity::current_weight:
      return kHbar * kEps0 * w * w;
    case Quantity::coupling:
      return std::sqrt(kEps0 * w);
  }
  return 1.0;
}

std::string unit_label(Quantity q, bool si) {
  switch (q) {
    case Quantity::dimensionless:
      return "1";
    case Quantity::label:
      return "-";
    case Quantity::frequency:
      return si ? "rad/s" : "omega_ref";
    case Quantity::rate:
      return si ? "1/s" : "omega_ref";
    case Quantity::wavevector:
      return si ? "1/m" : "omega_ref/c";
    case Quantity::length:
      return si ? "m" : "c/omega_ref";
    case Quantity::green_1d:
      return si ? "m" : "c/omega_ref";
    case Quantity::velocity:
      return si ? "m/s" : "c";
    case Quantity::force_1d:
      return si ? "N" : "hbar*omega_ref^2/c";
    case Quantity::stress_3d:
      return si ? "Pa" : "hbar*omega_ref^4/c^3";
    case Quantity::power_1d:
      return si ? "W" : "hbar*omega_ref^2";
    case Quantity::correlation_1d:
      return si ? "V^2*s" : "hbar*mu0*c*omega_ref";
    case Quantity::current_weight:
      return si ? "A^2*s/m^2" : "hbar*eps0*omega_ref^2";
    case Quantity::coupling:
      return si ? "sqrt(F/(m*s))" : "sqrt(eps0*omega_ref)";
  }
  return "?";
}

double omega_ref_from_hz(double hz) { return 2.0 * std::numbers::pi * hz; }

}  // namespace mqed::units
