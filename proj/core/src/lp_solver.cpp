#include "ufofdm/lp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>

#include "ufofdm/errors.hpp"

namespace ufofdm {
namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

double inf_norm(const VectorXd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

// Internal conic form: min c'x  s.t.  G x + s = h, s >= 0,  A x = b.
// Rows are equilibrated to unit infinity norm; row_scale maps scaled
// multipliers back to the caller's rows.
struct ConicForm {
  MatrixXd G;
  VectorXd h;
  MatrixXd A;
  VectorXd b;
  VectorXd c;
  VectorXd g_row_scale;
  VectorXd a_row_scale;
  std::vector<Index> bounded;  // variable index of each bound row (after the A_ub rows)
};

ConicForm to_conic(const LinearProgram& lp) {
  ConicForm f;
  const Index n = lp.num_variables();
  const Index m_ub = lp.A_ub.rows();
  for (Index i = 0; i < n; ++i) {
    if (lp.lower_bounds[static_cast<std::size_t>(i)]) f.bounded.push_back(i);
  }
  const Index m = m_ub + static_cast<Index>(f.bounded.size());
  f.G = MatrixXd::Zero(m, n);
  f.h = VectorXd::Zero(m);
  if (m_ub > 0) {
    f.G.topRows(m_ub) = lp.A_ub;
    f.h.head(m_ub) = lp.b_ub;
  }
  for (std::size_t k = 0; k < f.bounded.size(); ++k) {
    const Index row = m_ub + static_cast<Index>(k);
    f.G(row, f.bounded[k]) = -1.0;
    f.h(row) = -*lp.lower_bounds[static_cast<std::size_t>(f.bounded[k])];
  }
  f.A = lp.A_eq;
  f.b = lp.b_eq;
  f.c = lp.c;

  f.g_row_scale = VectorXd::Ones(m);
  for (Index i = 0; i < m; ++i) {
    const double norm = f.G.row(i).cwiseAbs().maxCoeff();
    if (norm > 0.0) {
      f.g_row_scale(i) = 1.0 / norm;
      f.G.row(i) *= f.g_row_scale(i);
      f.h(i) *= f.g_row_scale(i);
    }
  }
  f.a_row_scale = VectorXd::Ones(f.A.rows());
  for (Index i = 0; i < f.A.rows(); ++i) {
    const double norm = f.A.row(i).cwiseAbs().maxCoeff();
    if (norm > 0.0) {
      f.a_row_scale(i) = 1.0 / norm;
      f.A.row(i) *= f.a_row_scale(i);
      f.b(i) *= f.a_row_scale(i);
    }
  }
  return f;
}

// Largest step in (0, 1] keeping v + alpha*dv >= 0.
double max_step(const VectorXd& v, const VectorXd& dv) {
  double alpha = 1.0;
  for (Index i = 0; i < v.size(); ++i) {
    if (dv(i) < 0.0) alpha = std::min(alpha, -v(i) / dv(i));
  }
  return alpha;
}

double max_step(double v, double dv) { return dv < 0.0 ? std::min(1.0, -v / dv) : 1.0; }

struct Iterate {
  VectorXd x, y, z, s;
  double tau = 1.0;
  double kappa = 1.0;
};

struct Direction {
  VectorXd x, y, z, s;
  double tau = 0.0;
  double kappa = 0.0;
};

// Newton system of the embedding in scaled augmented form
//
//   [ 0   A'  G~' ] [dx ]   [r_x    ]
//   [ A   0   0   ] [dy ] = [r_y    ]
//   [ G~  0  -I   ] [dz~]   [D^-1 r_z]
//
// with D = sqrt(s/z), G~ = D^-1 G and dz = D^-1 dz~. Avoiding the normal
// equations G'WG keeps the system usable when z/s spans many decades near
// a degenerate optimum.
class NewtonSystem {
 public:
  NewtonSystem(const ConicForm& f, const Iterate& it) : f_(f), it_(it) {
    const Index n = f.G.cols();
    const Index p = f.A.rows();
    const Index m = f.G.rows();
    dinv_ = it.z.cwiseQuotient(it.s).cwiseSqrt();
    MatrixXd kkt = MatrixXd::Zero(n + p + m, n + p + m);
    const MatrixXd Gs = dinv_.asDiagonal() * f.G;
    if (p > 0) {
      kkt.block(0, n, n, p) = f.A.transpose();
      kkt.block(n, 0, p, n) = f.A;
    }
    kkt.block(0, n + p, n, m) = Gs.transpose();
    kkt.block(n + p, 0, m, n) = Gs;
    kkt.bottomRightCorner(m, m).diagonal().setConstant(-1.0);
    kkt_ = kkt;
    // Small regularization keeps free variables that no row touches from
    // making the system singular; refinement removes its bias.
    const double reg = 1e-13 * std::max(1.0, Gs.cwiseAbs().maxCoeff());
    kkt.topLeftCorner(n, n).diagonal().array() += reg;
    if (p > 0) kkt.block(n, n, p, p).diagonal().array() -= reg;
    lu_.compute(kkt);

    // Direction component proportional to d_tau.
    v_ = solve_blocks(-f.c, f.b, f.h);
  }

  Direction solve(double eta, const VectorXd& rx, const VectorXd& ry, const VectorXd& rz, double rt,
                  const VectorXd& d_sz, double d_tk) const {
    const VectorXd q = -eta * rz + d_sz.cwiseQuotient(it_.z);
    const Blocks u = solve_blocks(-eta * rx, eta * ry, -q);

    const double denom = -f_.c.dot(v_.x) - f_.b.dot(v_.y) - f_.h.dot(v_.z) + it_.kappa / it_.tau;
    const double numer = -eta * rt + f_.c.dot(u.x) + f_.b.dot(u.y) + f_.h.dot(u.z) + d_tk / it_.tau;

    Direction d;
    d.tau = numer / denom;
    d.x = u.x + v_.x * d.tau;
    d.y = u.y + v_.y * d.tau;
    d.z = u.z + v_.z * d.tau;
    d.s = (d_sz - it_.s.cwiseProduct(d.z)).cwiseQuotient(it_.z);
    d.kappa = (d_tk - it_.kappa * d.tau) / it_.tau;
    return d;
  }

 private:
  struct Blocks {
    VectorXd x, y, z;
  };

  // Solves A'dy + G'dz = r_x, A dx = r_y, G dx - (s/z) dz = r_z.
  Blocks solve_blocks(const VectorXd& r_x, const VectorXd& r_y, const VectorXd& r_z) const {
    const Index n = f_.G.cols();
    const Index p = f_.A.rows();
    const Index m = f_.G.rows();
    VectorXd rhs(n + p + m);
    rhs.head(n) = r_x;
    rhs.segment(n, p) = r_y;
    rhs.tail(m) = dinv_.cwiseProduct(r_z);
    VectorXd sol = lu_.solve(rhs);
    for (int k = 0; k < 2; ++k) {
      const VectorXd r = rhs - kkt_ * sol;
      sol += lu_.solve(r);
    }
    return {sol.head(n), sol.segment(n, p), dinv_.cwiseProduct(sol.tail(m))};
  }

  const ConicForm& f_;
  const Iterate& it_;
  VectorXd dinv_;
  MatrixXd kkt_;
  Eigen::PartialPivLU<MatrixXd> lu_;
  Blocks v_;
};

}  // namespace

LinearProgram LinearProgram::with_variables(Eigen::Index n) {
  LinearProgram lp;
  lp.c = VectorXd::Zero(n);
  lp.A_ub = MatrixXd::Zero(0, n);
  lp.b_ub = VectorXd::Zero(0);
  lp.A_eq = MatrixXd::Zero(0, n);
  lp.b_eq = VectorXd::Zero(0);
  lp.lower_bounds.assign(static_cast<std::size_t>(n), std::nullopt);
  return lp;
}

void LinearProgram::validate() const {
  const Index n = c.size();
  if (A_ub.cols() != n || A_eq.cols() != n) throw ParameterError("LP: constraint matrix width differs from c");
  if (A_ub.rows() != b_ub.size()) throw ParameterError("LP: A_ub rows differ from b_ub length");
  if (A_eq.rows() != b_eq.size()) throw ParameterError("LP: A_eq rows differ from b_eq length");
  if (static_cast<Index>(lower_bounds.size()) != n) throw ParameterError("LP: lower_bounds length differs from c");
  if (!c.allFinite() || !A_ub.allFinite() || !b_ub.allFinite() || !A_eq.allFinite() || !b_eq.allFinite()) {
    throw ParameterError("LP: non-finite entries");
  }
  for (const auto& lb : lower_bounds) {
    if (lb && !std::isfinite(*lb)) throw ParameterError("LP: non-finite lower bound");
  }
}

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::max_iters: return "max_iters";
  }
  return "unknown";
}

LpSolution solve_lp(const LinearProgram& lp, const LpOptions& options) {
  lp.validate();
  if (!(options.tolerance > 0.0)) throw ParameterError("solve_lp: tolerance must be positive");

  const ConicForm f = to_conic(lp);
  const Index n = f.G.cols();
  const Index m = f.G.rows();
  const Index p = f.A.rows();
  const double tol = options.tolerance;

  double bound_norm = 0.0;
  for (const auto& lb : lp.lower_bounds) {
    if (lb) bound_norm = std::max(bound_norm, std::abs(*lb));
  }
  const double h_norm = std::max(inf_norm(f.h), inf_norm(f.b));
  const double c_norm = inf_norm(f.c);

  LpSolution sol;
  sol.scale = std::max({1.0, c_norm, inf_norm(lp.b_ub), inf_norm(lp.b_eq), bound_norm});

  Iterate it;
  it.x = VectorXd::Zero(n);
  it.y = VectorXd::Zero(p);
  it.z = VectorXd::Ones(m);
  it.s = VectorXd::Ones(m);

  enum class Outcome { running, optimal, infeasible, unbounded };
  Outcome outcome = Outcome::running;
  int iter = 0;
  // Iterate with the smallest scaled residual, returned when the limit hits.
  Iterate best = it;
  double best_merit = std::numeric_limits<double>::infinity();

  for (; iter <= options.max_iterations; ++iter) {
    const VectorXd rx = f.A.transpose() * it.y + f.G.transpose() * it.z + f.c * it.tau;
    const VectorXd ry = -f.A * it.x + f.b * it.tau;
    const VectorXd rz = -f.G * it.x + f.h * it.tau - it.s;
    const double cx = f.c.dot(it.x);
    const double by_hz = f.b.dot(it.y) + f.h.dot(it.z);
    const double rt = -cx - by_hz - it.kappa;
    const double mu = (it.s.dot(it.z) + it.tau * it.kappa) / static_cast<double>(m + 1);

    const double pres = std::max(inf_norm(ry), inf_norm(rz)) / it.tau / (1.0 + h_norm);
    const double dres = inf_norm(rx) / it.tau / (1.0 + c_norm);
    const double pcost = cx / it.tau;
    const double dcost = -by_hz / it.tau;
    const double gap = std::max(it.s.dot(it.z) / (it.tau * it.tau), std::abs(pcost - dcost));
    const double gap_rel = gap / (1.0 + std::min(std::abs(pcost), std::abs(dcost)));
    if (pres <= tol && dres <= tol && gap_rel <= tol) {
      outcome = Outcome::optimal;
      break;
    }
    if (const double merit = std::max({pres, dres, gap_rel}); merit < best_merit) {
      best_merit = merit;
      best = it;
    }
    if (by_hz < 0.0) {
      const double cert = inf_norm(f.A.transpose() * it.y + f.G.transpose() * it.z) / -by_hz;
      if (cert <= tol * (1.0 + c_norm)) {
        outcome = Outcome::infeasible;
        break;
      }
    }
    if (cx < 0.0) {
      const double ray = std::max(inf_norm(f.A * it.x), inf_norm(f.G * it.x + it.s)) / -cx;
      if (ray <= tol * (1.0 + h_norm)) {
        outcome = Outcome::unbounded;
        break;
      }
    }
    if (iter == options.max_iterations) break;

    const NewtonSystem newton(f, it);

    // Predictor (affine scaling).
    const VectorXd sz = it.s.cwiseProduct(it.z);
    const Direction aff = newton.solve(1.0, rx, ry, rz, rt, -sz, -it.tau * it.kappa);
    const double alpha_aff = std::min({max_step(it.s, aff.s), max_step(it.z, aff.z), max_step(it.tau, aff.tau),
                                       max_step(it.kappa, aff.kappa)});
    const double mu_aff = ((it.s + alpha_aff * aff.s).dot(it.z + alpha_aff * aff.z) +
                           (it.tau + alpha_aff * aff.tau) * (it.kappa + alpha_aff * aff.kappa)) /
                          static_cast<double>(m + 1);
    const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

    // Combined centering-corrector.
    const VectorXd d_sz = -sz + VectorXd::Constant(m, sigma * mu) - aff.s.cwiseProduct(aff.z);
    const double d_tk = -it.tau * it.kappa + sigma * mu - aff.tau * aff.kappa;
    const Direction d = newton.solve(1.0 - sigma, rx, ry, rz, rt, d_sz, d_tk);

    const double alpha_max =
        std::min({max_step(it.s, d.s) / 1.0, max_step(it.z, d.z), max_step(it.tau, d.tau), max_step(it.kappa, d.kappa)});
    const double alpha = std::min(1.0, 0.99 * alpha_max);
    if (!std::isfinite(alpha) || alpha < 1e-14 || !d.x.allFinite()) break;

    it.x += alpha * d.x;
    it.y += alpha * d.y;
    it.z += alpha * d.z;
    it.s += alpha * d.s;
    it.tau += alpha * d.tau;
    it.kappa += alpha * d.kappa;

    // Rescale the embedding when it drifts, which leaves every ratio intact.
    const double norm = std::max({it.tau, it.kappa, inf_norm(it.x), inf_norm(it.z)});
    if (norm > 1e12 || norm < 1e-12) {
      const double k = 1.0 / norm;
      it.x *= k;
      it.y *= k;
      it.z *= k;
      it.s *= k;
      it.tau *= k;
      it.kappa *= k;
    }
  }
  sol.iterations = std::min(iter, options.max_iterations);
  if (outcome == Outcome::running) it = best;

  const Index m_ub = lp.A_ub.rows();
  auto unscale_duals = [&](const VectorXd& z, const VectorXd& y, double k) {
    const VectorXd zs = (f.g_row_scale.cwiseProduct(z) * k).cwiseMax(0.0);
    sol.dual_ub = zs.head(m_ub);
    sol.dual_eq = f.a_row_scale.cwiseProduct(y) * k;
    sol.dual_lb = VectorXd::Zero(n);
    for (std::size_t j = 0; j < f.bounded.size(); ++j) {
      sol.dual_lb(f.bounded[j]) = zs(m_ub + static_cast<Index>(j));
    }
  };

  if (outcome == Outcome::infeasible) {
    sol.status = LpStatus::infeasible;
    const double k = -1.0 / (f.b.dot(it.y) + f.h.dot(it.z));
    unscale_duals(it.z, it.y, k);
    sol.x = it.x / it.tau;
    sol.objective = std::numeric_limits<double>::quiet_NaN();
    sol.dual_objective = std::numeric_limits<double>::infinity();
    return sol;
  }
  if (outcome == Outcome::unbounded) {
    sol.status = LpStatus::unbounded;
    sol.ray = it.x / -f.c.dot(it.x);
    sol.x = sol.ray;
    sol.objective = -std::numeric_limits<double>::infinity();
    sol.dual_objective = std::numeric_limits<double>::quiet_NaN();
    return sol;
  }

  sol.status = outcome == Outcome::optimal ? LpStatus::optimal : LpStatus::max_iters;
  sol.x = it.x / it.tau;
  unscale_duals(it.z, it.y, 1.0 / it.tau);

  // Residuals on the caller's program.
  double primal = 0.0;
  if (m_ub > 0) primal = std::max(primal, (lp.A_ub * sol.x - lp.b_ub).maxCoeff());
  if (lp.A_eq.rows() > 0) primal = std::max(primal, inf_norm(lp.A_eq * sol.x - lp.b_eq));
  double lb_term = 0.0;
  for (Index i = 0; i < n; ++i) {
    if (const auto& lb = lp.lower_bounds[static_cast<std::size_t>(i)]) {
      primal = std::max(primal, *lb - sol.x(i));
      lb_term += *lb * sol.dual_lb(i);
    }
  }
  sol.residuals.primal = std::max(primal, 0.0);
  const VectorXd stationarity =
      lp.c + lp.A_ub.transpose() * sol.dual_ub + lp.A_eq.transpose() * sol.dual_eq - sol.dual_lb;
  sol.residuals.dual = inf_norm(stationarity);
  sol.objective = lp.c.dot(sol.x);
  sol.dual_objective = -lp.b_ub.dot(sol.dual_ub) - lp.b_eq.dot(sol.dual_eq) + lb_term;
  sol.residuals.gap = std::abs(sol.objective - sol.dual_objective);
  return sol;
}

void write_cplex_lp(const LinearProgram& lp, std::ostream& out) {
  lp.validate();
  const auto old_precision = out.precision(17);
  auto term = [&](double coef, Index j, bool first) {
    if (coef == 0.0) return false;
    out << (coef < 0.0 ? " - " : (first ? " " : " + ")) << std::abs(coef) << " x" << j;
    return true;
  };
  auto row = [&](const auto& r) {
    bool first = true;
    for (Index j = 0; j < r.size(); ++j) {
      if (term(r(j), j, first)) first = false;
    }
    if (first) out << " 0 x0";
  };

  out << "\\ generated by ufofdm\nMinimize\n obj:";
  row(lp.c);
  out << "\nSubject To\n";
  for (Index i = 0; i < lp.A_ub.rows(); ++i) {
    out << " ub" << i << ":";
    row(lp.A_ub.row(i));
    out << " <= " << lp.b_ub(i) << '\n';
  }
  for (Index i = 0; i < lp.A_eq.rows(); ++i) {
    out << " eq" << i << ":";
    row(lp.A_eq.row(i));
    out << " = " << lp.b_eq(i) << '\n';
  }
  out << "Bounds\n";
  for (Index j = 0; j < lp.num_variables(); ++j) {
    if (const auto& lb = lp.lower_bounds[static_cast<std::size_t>(j)]) {
      out << " x" << j << " >= " << *lb << '\n';
    } else {
      out << " x" << j << " free\n";
    }
  }
  out << "End\n";
  out.precision(old_precision);
}

}  // namespace ufofdm
