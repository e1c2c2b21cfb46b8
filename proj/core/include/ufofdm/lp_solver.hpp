#pragma once

#include <Eigen/Dense>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace ufofdm {

/// Dense linear program
///
///   minimize    c' x
///   subject to  A_ub x <= b_ub
///               A_eq x  = b_eq
///               x_i >= lower_bounds[i]   (only where a bound is present)
///
/// Variables without a lower bound are free.
struct LinearProgram {
  Eigen::VectorXd c;
  Eigen::MatrixXd A_ub;
  Eigen::VectorXd b_ub;
  Eigen::MatrixXd A_eq;
  Eigen::VectorXd b_eq;
  std::vector<std::optional<double>> lower_bounds;

  /// Empty program over `n` free variables.
  static LinearProgram with_variables(Eigen::Index n);

  Eigen::Index num_variables() const { return c.size(); }
  /// Throws ParameterError on inconsistent dimensions or non-finite entries.
  void validate() const;
};

enum class LpStatus { optimal, infeasible, unbounded, max_iters };

std::string to_string(LpStatus status);

struct LpResiduals {
  double primal = 0.0;
  double dual = 0.0;
  double gap = 0.0;
};

struct LpSolution {
  LpStatus status = LpStatus::max_iters;
  Eigen::VectorXd x;
  double objective = 0.0;
  double dual_objective = 0.0;
  LpResiduals residuals;
  /// max(1, |c|_inf, |b_ub|_inf, |b_eq|_inf, |bounds|_inf); residual thresholds scale with 1 + scale.
  double scale = 1.0;
  int iterations = 0;

  /// Multipliers for A_ub rows (>= 0), A_eq rows and lower bounds (>= 0).
  /// For status infeasible these hold a Farkas certificate normalized so
  /// that b_ub'y_ub + b_eq'y_eq - l'y_lb = -1 while
  /// A_ub'y_ub + A_eq'y_eq - y_lb = 0.
  Eigen::VectorXd dual_ub;
  Eigen::VectorXd dual_eq;
  Eigen::VectorXd dual_lb;

  /// For status unbounded: a direction d with c'd = -1, A_ub d <= 0,
  /// A_eq d = 0 and d_i >= 0 on bounded variables.
  Eigen::VectorXd ray;
};

struct LpOptions {
  double tolerance = 1e-9;
  int max_iterations = 200;
};

/// Mehrotra predictor-corrector on the homogeneous self-dual embedding.
/// Deterministic; no global state.
LpSolution solve_lp(const LinearProgram& lp, const LpOptions& options = {});

/// Writes the program in CPLEX LP text format for cross-checking with
/// external solvers. Variables are named x0, x1, ...
void write_cplex_lp(const LinearProgram& lp, std::ostream& out);

}  // namespace ufofdm
