#pragma once

#include "ufofdm/design_problem.hpp"
#include "ufofdm/filter_io.hpp"
#include "ufofdm/lp_solver.hpp"
#include "ufofdm/spectral_factorization.hpp"

namespace ufofdm {

struct DesignResult {
  FirFilter filter;
  Autocorrelation solved;     ///< g straight from the LP
  Autocorrelation repaired;   ///< g after nonnegativity repair and an exact power rescale
  LpSolution lp;
  bool repair_applied = false;
  double t1 = 0.0;
  double t2 = 0.0;
  /// |b_c' g - K(M+N-1)| / K(M+N-1) for the repaired g.
  double power_error = 0.0;
  /// min F_g over the verification grid for the repaired g.
  double min_spectrum = 0.0;
  FactorizationInfo factorization;
};

/// assemble -> solve -> repair -> factorize. Throws SolverError when the
/// LP is not solved to optimality and FactorizationError from the last step.
DesignResult design_filter(const DesignSpec& spec, const LpOptions& options = {});

FilterDocument make_document(const DesignSpec& spec, const FirFilter& filter);

}  // namespace ufofdm
