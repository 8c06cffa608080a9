#include "boundpair/bethe.hpp"

#include <cmath>
#include <limits>

#include "boundpair/errors.hpp"

namespace boundpair {
namespace {

void require_interaction(const LatticeParams& params) {
  if (params.interaction() == 0.0) {
    throw DomainError("bound-pair quantities are undefined for U = 0");
  }
}

// sqrt(1 + x) - 1 without cancellation
double sqrt1pm1(double x) { return x / (std::sqrt(1.0 + x) + 1.0); }

}  // namespace

double band_energy_magnitude(double k, const LatticeParams& params) {
  require_interaction(params);
  const double u = params.interaction();
  const double c = std::cos(0.5 * k);
  return std::sqrt(u * u + 16.0 * params.hopping() * params.hopping() * c * c);
}

double band_energy(double k, const LatticeParams& params) {
  const double magnitude = band_energy_magnitude(k, params);
  return params.interaction() > 0.0 ? -magnitude : magnitude;
}

double band_slope(double k, const LatticeParams& params) {
  const double kappa = params.hopping();
  const double slope = 4.0 * kappa * kappa * std::sin(k) / band_energy_magnitude(k, params);
  return params.interaction() > 0.0 ? slope : -slope;
}

double bound_zeta(double k, const LatticeParams& params) {
  require_interaction(params);
  return 4.0 * params.hopping() * std::cos(0.5 * k) / params.interaction();
}

double bound_mu(double k, const LatticeParams& params) {
  const double zeta = bound_zeta(k, params);
  if (zeta == 0.0) return std::numeric_limits<double>::infinity();
  return std::asinh(1.0 / zeta);
}

double bound_amplitude(double k, int r, const LatticeParams& params) {
  if (r < 0) throw DomainError("relative coordinate must be non-negative");
  const double zeta = bound_zeta(k, params);
  const double head = std::pow(1.0 + zeta * zeta, -0.25);
  if (r == 0) return head;
  if (zeta == 0.0) return 0.0;
  const double sign = (zeta < 0.0 && r % 2 == 1) ? -1.0 : 1.0;
  return sign * head * std::sqrt(2.0) * std::exp(-std::abs(bound_mu(k, params)) * r);
}

double pair_size(double k, const LatticeParams& params) {
  require_interaction(params);
  return std::abs(2.0 * std::sqrt(2.0) * params.hopping() / params.interaction() *
                  std::cos(0.5 * k));
}

double group_velocity_magnitude(const LatticeParams& params) {
  require_interaction(params);
  const double kappa = params.hopping();
  const double u = params.interaction();
  const double ratio = u * u / (8.0 * kappa * kappa);
  const double inner = 1.0 - ratio * sqrt1pm1(16.0 * kappa * kappa / (u * u));
  return 2.0 * kappa * std::sqrt(std::max(inner, 0.0));
}

BandDescriptor linear_point(const LatticeParams& params) {
  require_interaction(params);
  const double kappa = params.hopping();
  const double u = params.interaction();
  const double eta = u * u / (8.0 * kappa * kappa) + 1.0;
  // sqrt(eta^2 - 1) - eta, rewritten to avoid cancellation at large eta
  const double cos_k0 = -1.0 / (std::sqrt(eta * eta - 1.0) + eta);
  BandDescriptor d;
  d.eta = eta;
  d.k0 = std::acos(cos_k0);
  d.lambda_k0 = pair_size(d.k0, params);
  d.v_g = group_velocity(params);
  return d;
}

double group_velocity(const LatticeParams& params) {
  require_interaction(params);
  const double u = params.interaction();
  const double kappa = params.hopping();
  const double eta = u * u / (8.0 * kappa * kappa) + 1.0;
  const double k0 = std::acos(-1.0 / (std::sqrt(eta * eta - 1.0) + eta));
  const double h = 1e-5;
  const double slope = band_energy(k0 + h, params) - band_energy(k0 - h, params);
  const double magnitude = group_velocity_magnitude(params);
  return slope < 0.0 ? -magnitude : magnitude;
}

FidelityPoint analytic_fidelity(const PacketSpec& spec, double v_g, double t,
                                const LatticeParams& params) {
  const int n = params.n_sites();
  const double a2 = spec.width_param * spec.width_param;
  double omega = 0.0;
  double acc = 0.0;
  for (int m = 1; m <= n; ++m) {
    const double d = principal_angle(2.0 * kPi * m / n - spec.k0);
    const double w = std::exp(-d * d / a2);
    omega += w;
    acc += w * std::cos(d * d * d * v_g * t / 6.0);
  }
  return {t, v_g * t, acc / omega};
}

}  // namespace boundpair
