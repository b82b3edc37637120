#include "disslab/gas.hpp"

#include <cmath>
#include <string>

#include "disslab/error.hpp"

namespace disslab {

namespace {

void require_positive_density(double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw DomainError("density must be positive and finite, got " + std::to_string(rho));
  }
}

}  // namespace

GasLaw::GasLaw(double gamma, double energy_offset) : gamma_(gamma), offset_(energy_offset) {
  if (!(gamma >= 1.0) || !std::isfinite(gamma)) {
    throw DomainError("pressure exponent must satisfy gamma >= 1, got " + std::to_string(gamma));
  }
  if (!std::isfinite(energy_offset)) throw DomainError("energy offset must be finite");
}

double GasLaw::pressure(double rho) const {
  require_positive_density(rho);
  return std::pow(rho, gamma_);
}

double GasLaw::sound_speed_sq(double rho) const {
  require_positive_density(rho);
  return gamma_ * std::pow(rho, gamma_ - 1.0);
}

double GasLaw::internal_energy(double rho) const {
  require_positive_density(rho);
  // gamma == 1 is a separate branch, not the limit of the power law.
  if (isothermal()) return std::log(rho) + offset_;
  return std::pow(rho, gamma_ - 1.0) / (gamma_ - 1.0) + offset_;
}

double GasLaw::energy_density(double rho, double speed_sq) const {
  if (!(speed_sq >= 0.0)) throw DomainError("squared speed must be nonnegative");
  return rho * internal_energy(rho) + rho * speed_sq / 2.0;
}

}  // namespace disslab
