#include "ufofdm/pipeline.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "ufofdm/errors.hpp"

namespace ufofdm {

DesignResult design_filter(const DesignSpec& spec, const LpOptions& options) {
  spec.validate();
  const CarrierFrequencies carriers = shift_carriers(spec);
  const LinearProgram lp = assemble_lp(spec, carriers);

  DesignResult result;
  result.lp = solve_lp(lp, options);
  if (result.lp.status != LpStatus::optimal) {
    std::string msg = "design LP ended with status " + to_string(result.lp.status) + " after " +
                      std::to_string(result.lp.iterations) + " iterations";
    if (result.lp.status == LpStatus::infeasible) {
      msg += "; Farkas certificate norm " + std::to_string(result.lp.dual_ub.lpNorm<Eigen::Infinity>());
    }
    throw SolverError(msg);
  }

  const DesignLpLayout layout{spec.N};
  result.solved.g.assign(result.lp.x.data(), result.lp.x.data() + spec.N);
  result.t1 = result.lp.x(layout.t1());
  result.t2 = result.lp.x(layout.t2());

  result.repaired = repair_nonnegativity(result.solved, spec);
  result.repair_applied = result.repaired.g != result.solved.g;

  // The interior-point solution meets the equality only to solver tolerance;
  // a positive rescale makes it exact without touching nonnegativity.
  const std::vector<double> b = power_vector(spec, carriers);
  double power = std::inner_product(b.begin(), b.end(), result.repaired.g.begin(), 0.0);
  if (power > 0.0) {
    for (double& v : result.repaired.g) v *= spec.power_target() / power;
    power = std::inner_product(b.begin(), b.end(), result.repaired.g.begin(), 0.0);
  }
  result.power_error = std::abs(power - spec.power_target()) / spec.power_target();
  result.min_spectrum = min_spectrum_on_grid(result.repaired);

  result.filter = factorize(result.repaired, 1e-9, &result.factorization, provenance::Designed{spec.lambda});
  return result;
}

FilterDocument make_document(const DesignSpec& spec, const FirFilter& filter) {
  FilterDocument doc;
  doc.M = spec.M;
  doc.carriers = spec.carriers;
  doc.filter = filter;
  doc.g = autocorrelation(filter);
  return doc;
}

}  // namespace ufofdm
