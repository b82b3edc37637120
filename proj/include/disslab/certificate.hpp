#pragma once

#include <string>
#include <vector>

#include "disslab/dissipation.hpp"
#include "disslab/keyval.hpp"
#include "disslab/riemann.hpp"
#include "disslab/scenario.hpp"
#include "disslab/subsolution.hpp"
#include "disslab/weakform.hpp"

namespace disslab {

inline constexpr const char* kToolVersion = "disslab 0.1.0";

/// Witness that a fan subsolution out-dissipates the self-similar solution for one
/// Riemann datum. Every number in it can be recomputed from the scenario echo and
/// the subsolution unknowns; verify() does exactly that.
struct Certificate {
  std::string tool_version = kToolVersion;
  Scenario scenario;
  SelfSimilarTwoShock self_sim;
  FanSubsolution sub;
  SystemResiduals residuals;
  FeasibilityMargins margins;
  DissipationReport dissipation;
  WeakSummary weak;
  /// Bound on normalized weak residuals and on -admissibility.
  double weak_tol = 1e-8;
  /// Relative tolerance when comparing stored and recomputed values.
  double replay_tol = 1e-9;

  bool dominant() const noexcept { return dissipation.verdict; }
  /// "dissipation-dominant" or "feasible but not dissipation-dominant".
  std::string status() const;

  keyval::Document to_document() const;
  static Certificate from_document(const keyval::Document& doc);
};

/// Bundle a subsolution with all replayable checks. Throws InfeasibleError when
/// residuals exceed the scenario tolerance or a margin is below the floor (the
/// embedded self-similar solution, with zero trace and det margins, is rejected).
Certificate certify(const Scenario& scenario, const FanSubsolution& sub,
                    const QuadratureOptions& quadrature = {});

struct CheckOutcome {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyResult {
  std::vector<CheckOutcome> checks;

  bool passed() const noexcept;
  /// First failed check, or nullptr.
  const CheckOutcome* first_failure() const noexcept;
};

/// Replays, in order: scenario, self_similar, residuals, margins, dissipation,
/// weak_form. Later checks still run after a failure so the report is complete.
VerifyResult verify(const Certificate& cert, const QuadratureOptions& quadrature = {});

}  // namespace disslab
