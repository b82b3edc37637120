#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "disslab/gas.hpp"
#include "disslab/keyval.hpp"
#include "disslab/riemann.hpp"
#include "disslab/solver.hpp"

namespace disslab {

/// Input of every CLI command: gas law, Riemann data, search grid and options.
///
///   [scenario]  name
///   [gas]       gamma
///   [data]      rho_minus, v_minus_1, v_minus_2, rho_plus, v_plus_1, v_plus_2
///   [search]    grid_rho1, grid_C (lo:hi:n), tol, margin_floor, L, seed, weak_tests
///
/// [search] and all of its keys are optional; grids are only needed by `search`.
struct Scenario {
  std::string name = "unnamed";
  double gamma = 2.0;
  RiemannData data;
  std::optional<GridAxis> grid_rho1;
  std::optional<GridAxis> grid_C;
  double tol = 1e-10;
  double margin_floor = 1e-6;
  double L = 1.0;
  std::uint64_t seed = 42;
  int weak_tests = 50;

  GasLaw law() const { return GasLaw(gamma); }
  SolverOptions solver_options() const;

  /// Throws DomainError on nonphysical values.
  void validate() const;

  /// Sections are named `<prefix>scenario`, `<prefix>gas`, ...
  static Scenario from_document(const keyval::Document& doc, const std::string& prefix = "");
  void write_to(keyval::Document& doc, const std::string& prefix = "") const;

  static Scenario load(const std::string& path);
};

}  // namespace disslab
