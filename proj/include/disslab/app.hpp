#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "disslab/scenario.hpp"
#include "disslab/solver.hpp"

namespace disslab::app {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kSuccess = 0,       ///< command succeeded / verdict true
  kError = 1,         ///< bad arguments, unreadable or malformed input
  kNoCertificate = 2  ///< negative verdict: out of regime, nothing feasible, verification failed
};

/// Run the command line `args` (without the program name). Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Grid dump: header row plus one row per scan point in report order.
/// Columns: rho1,C,feasible,m_trace,m_det,m_adm_left,m_adm_right,D_sub
std::string grid_csv(const SearchReport& report);

/// Worker count from DISSLAB_THREADS (unset, empty or 0 means auto).
unsigned threads_from_env();

}  // namespace disslab::app
