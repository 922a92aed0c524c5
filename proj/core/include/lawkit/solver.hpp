#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace lawkit {

using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using JacobianFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

/// Box bounds, one [lo, hi] pair per parameter.
struct Bounds {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
};

struct LeastSquaresProblem {
  ResidualFn residual;
  JacobianFn jacobian;           // empty -> central finite differences
  std::optional<Bounds> bounds;  // trial steps are projected onto the box
};

struct SolverOptions {
  int max_iterations = 10000;
  double initial_damping = 1e-3;
  double damping_increase = 10.0;  // on rejected step
  double damping_decrease = 10.0;  // on accepted step
  double sse_rel_tol = 1e-12;
  double grad_inf_tol = 1e-10;
  double step_tol = 1e-12;
};

struct FitResult {
  Eigen::VectorXd theta;
  double sse = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string reason;
  std::vector<double> sse_history;  // SSE(theta0) followed by each accepted step
};

/// Damped Gauss-Newton (Levenberg-Marquardt) minimization of |r(theta)|^2.
/// Each step solves (J^T J + lambda diag(J^T J)) delta = -J^T r; lambda is
/// multiplied by damping_increase when a step is rejected and divided by
/// damping_decrease when accepted. Terminates on relative SSE decrease,
/// gradient infinity norm, step norm, or the iteration cap. The returned SSE
/// never exceeds SSE(theta0) and the accepted-step history is non-increasing.
/// Throws ValidationError when m < p and NumericalError on non-finite
/// residuals or jacobians.
FitResult lm_fit(const LeastSquaresProblem& problem, const Eigen::VectorXd& theta0,
                 const SolverOptions& options = {});

/// Central-difference jacobian with per-coordinate step 1e-6 * max(1, |theta_j|).
Eigen::MatrixXd finite_diff_jacobian(const ResidualFn& residual, const Eigen::VectorXd& theta);

}  // namespace lawkit
