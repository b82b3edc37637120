#pragma once

namespace disslab {

/// Polytropic pressure law p(rho) = rho^gamma, gamma >= 1.
///
/// The specific internal energy uses the closure rho^2 eps'(rho) = p(rho):
/// eps = rho^(gamma-1)/(gamma-1) for gamma > 1 and eps = ln(rho) for gamma = 1.
/// `energy_offset` adds a constant to eps; it is 0 everywhere except in tests of
/// affine invariance.
class GasLaw {
 public:
  explicit GasLaw(double gamma, double energy_offset = 0.0);

  double gamma() const noexcept { return gamma_; }
  double energy_offset() const noexcept { return offset_; }
  bool isothermal() const noexcept { return gamma_ == 1.0; }

  double pressure(double rho) const;
  /// p'(rho) = gamma rho^(gamma-1).
  double sound_speed_sq(double rho) const;
  double internal_energy(double rho) const;
  /// rho eps(rho) + rho |v|^2 / 2.
  double energy_density(double rho, double speed_sq) const;

 private:
  double gamma_;
  double offset_;
};

}  // namespace disslab
