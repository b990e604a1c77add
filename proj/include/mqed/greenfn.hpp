#pragma once

#include <complex>
#include <string_view>

#include "mqed/material.hpp"
#include "mqed/quadrature.hpp"

namespace mqed {

/// Complex wavenumber on the decaying branch: Im >= 0, and Re >= 0 when Im = 0.
struct BranchRoot {
  cplx value{};
};

/// sqrt(z) on the BranchRoot branch. Handles -0.0 imaginary parts.
cplx branch_sqrt(cplx z);

/// omega * sqrt(eps) on the decaying branch.
BranchRoot sqrt_branch(cplx eps, double omega);

struct GreenEval {
  cplx g{};
  BranchRoot branch;
  double omega = 0.0;
  std::string_view geometry;
};

/// Retarded 1D Green function i e^{iq|x-x'|} / (2q), q = omega sqrt(eps).
GreenEval green_1d(double x, double xp, double omega, const MaterialModel& model);
GreenEval green_1d(double x, double xp, double omega, cplx eps);

/// 1 / (k^2 - omega^2 eps). Throws PoleError on the lossless pole.
cplx green_1d_k(double k, double omega, cplx eps);

struct IdentityCheck {
  double lhs = 0.0;
  /// Imaginary part of the quadrature, zero up to rounding.
  double lhs_imag = 0.0;
  double lhs_error = 0.0;
  double rhs = 0.0;
};

/// Both sides of Im eps * int g(x-x1) g*(x'-x1) dx1 = Im g(x-x') / omega^2.
/// The left side is evaluated by quadrature, split at the kinks.
IdentityCheck green_identity_check(double x, double xp, double omega, const MaterialModel& model,
                                   const quad::QuadSpec& spec = {1e-11, 1e-15, 4000});
IdentityCheck green_identity_check(double x, double xp, double omega, cplx eps,
                                   const quad::QuadSpec& spec = {1e-11, 1e-15, 4000});

/// p-polarised reflection at a vacuum/medium interface.
cplx fresnel_rp(const MaterialModel& model, double k_par, double omega);
cplx fresnel_rp(cplx eps, double k_par, double omega);

/// (eps - 1)/(eps + 1); negative omega goes through the reality condition.
cplx rp_electrostatic(const MaterialModel& model, double omega);

struct SlabRT {
  cplx r{};
  cplx t{};
};

/// Normal-incidence reflection and transmission of a slab in vacuum. The
/// transmission carries the phase across the slab, so a vacuum slab gives
/// t = e^{i omega a}.
SlabRT slab_rt(const MaterialModel& model, double thickness, double omega);
SlabRT slab_rt(cplx eps, double thickness, double omega);

/// Two half-spaces: the moving one fills x < 0, the resting one x > gap.
struct PlanarScenario {
  DopplerMaterial left;
  MaterialModel right;
  double gap = 1.0;
  double k_par = 1.0;
  double k_y = 1.0;
};

struct FluxTerm {
  double value = 0.0;
  double kappa = 0.0;
  /// Set when k_par / k0 <= 100 and the full retarded kappa and r_p were used.
  bool regime_warning = false;
};

/// Momentum-flux surface term (k_y e^{-2 kappa a} / k0^2) Im r_p(omega) Im r_p(omega_-)
/// with omega_- = omega - V k_y, valid for 0 < omega < V k_y.
FluxTerm plate_flux_term(const PlanarScenario& scenario, double omega);

}  // namespace mqed
