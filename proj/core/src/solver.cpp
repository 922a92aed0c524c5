#include "lawkit/solver.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "lawkit/errors.hpp"

namespace lawkit {
namespace {

std::string format_theta(const Eigen::VectorXd& theta) {
  std::ostringstream os;
  os << "[";
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    if (i) os << ", ";
    os << theta[i];
  }
  os << "]";
  return os.str();
}

Eigen::VectorXd project(const Eigen::VectorXd& theta, const std::optional<Bounds>& bounds) {
  if (!bounds) return theta;
  return theta.cwiseMax(bounds->lower).cwiseMin(bounds->upper);
}

void check_options(const SolverOptions& o) {
  if (o.max_iterations < 1) throw ValidationError("max_iterations must be >= 1");
  if (!(o.initial_damping > 0)) throw ValidationError("initial_damping must be > 0");
  if (!(o.damping_increase > 1) || !(o.damping_decrease > 1)) {
    throw ValidationError("damping factors must be > 1");
  }
  if (!(o.sse_rel_tol > 0) || !(o.grad_inf_tol > 0) || !(o.step_tol > 0)) {
    throw ValidationError("tolerances must be > 0");
  }
}

constexpr double kDampingCeiling = 1e120;

}  // namespace

Eigen::MatrixXd finite_diff_jacobian(const ResidualFn& residual, const Eigen::VectorXd& theta) {
  const Eigen::VectorXd r0 = residual(theta);
  if (!r0.allFinite()) {
    throw NumericalError("non-finite residual at theta = " + format_theta(theta));
  }
  const Eigen::Index m = r0.size();
  const Eigen::Index p = theta.size();
  Eigen::MatrixXd jac(m, p);
  Eigen::VectorXd probe = theta;
  for (Eigen::Index j = 0; j < p; ++j) {
    const double h = 1e-6 * std::max(1.0, std::abs(theta[j]));
    probe[j] = theta[j] + h;
    const Eigen::VectorXd plus = residual(probe);
    probe[j] = theta[j] - h;
    const Eigen::VectorXd minus = residual(probe);
    probe[j] = theta[j];
    if (!plus.allFinite() || !minus.allFinite()) {
      throw NumericalError("non-finite residual at perturbed theta (coordinate " +
                           std::to_string(j) + ")");
    }
    jac.col(j) = (plus - minus) / (2.0 * h);
  }
  return jac;
}

FitResult lm_fit(const LeastSquaresProblem& problem, const Eigen::VectorXd& theta0,
                 const SolverOptions& options) {
  check_options(options);
  if (!problem.residual) throw ValidationError("residual function is required");

  const JacobianFn jacobian =
      problem.jacobian ? problem.jacobian : JacobianFn([&problem](const Eigen::VectorXd& t) {
        return finite_diff_jacobian(problem.residual, t);
      });

  Eigen::VectorXd theta = project(theta0, problem.bounds);
  Eigen::VectorXd r = problem.residual(theta);
  if (!r.allFinite()) {
    throw NumericalError("non-finite residual at theta = " + format_theta(theta));
  }
  const Eigen::Index m = r.size();
  const Eigen::Index p = theta.size();
  if (m < p) {
    throw ValidationError("under-determined system: " + std::to_string(m) + " residuals for " +
                          std::to_string(p) + " parameters");
  }

  FitResult result;
  result.theta = theta;
  result.sse = r.squaredNorm();
  result.sse_history.push_back(result.sse);

  if (result.sse == 0.0) {
    result.converged = true;
    result.reason = "zero_residual";
    return result;
  }

  double damping = options.initial_damping;
  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    result.iterations = iter;

    Eigen::MatrixXd jac = jacobian(theta);
    if (jac.rows() != m || jac.cols() != p) {
      throw ValidationError("jacobian must be " + std::to_string(m) + "x" + std::to_string(p));
    }
    if (!jac.allFinite()) {
      throw NumericalError("non-finite jacobian at theta = " + format_theta(theta));
    }

    const Eigen::VectorXd grad = jac.transpose() * r;
    if (grad.lpNorm<Eigen::Infinity>() < options.grad_inf_tol) {
      result.converged = true;
      result.reason = "grad_inf_tol";
      break;
    }

    const Eigen::MatrixXd hess = jac.transpose() * jac;
    Eigen::VectorXd scale = hess.diagonal();
    const double scale_floor = 1e-14 * std::max(1.0, scale.maxCoeff());
    scale = scale.cwiseMax(scale_floor);

    bool stepped = false;
    while (true) {
      Eigen::MatrixXd damped = hess;
      damped.diagonal() += damping * scale;
      const Eigen::LDLT<Eigen::MatrixXd> ldlt(damped);
      Eigen::VectorXd delta;
      bool solvable = ldlt.info() == Eigen::Success;
      if (solvable) {
        delta = ldlt.solve(-grad);
        solvable = delta.allFinite();
      }
      if (!solvable) {
        damping *= options.damping_increase;
        if (damping > kDampingCeiling) {
          throw NumericalError("normal equations unsolvable at theta = " + format_theta(theta));
        }
        continue;
      }

      const Eigen::VectorXd trial = project(theta + delta, problem.bounds);
      const Eigen::VectorXd step = trial - theta;
      if (step.norm() < options.step_tol) {
        result.converged = true;
        result.reason = "step_tol";
        break;
      }

      const Eigen::VectorXd r_trial = problem.residual(trial);
      const double sse_trial = r_trial.allFinite() ? r_trial.squaredNorm()
                                                   : std::numeric_limits<double>::infinity();
      if (sse_trial < result.sse) {
        const double improvement = (result.sse - sse_trial) / result.sse;
        theta = trial;
        r = r_trial;
        result.theta = theta;
        result.sse = sse_trial;
        result.sse_history.push_back(sse_trial);
        damping = std::max(damping / options.damping_decrease, 1e-300);
        stepped = true;
        if (improvement < options.sse_rel_tol) {
          result.converged = true;
          result.reason = "sse_rel_tol";
        } else if (sse_trial == 0.0) {
          result.converged = true;
          result.reason = "zero_residual";
        }
        break;
      }

      // Rejected (or non-finite) trial: raise damping and retry. As damping
      // grows the step shrinks, so the step_tol check above terminates.
      damping *= options.damping_increase;
      if (damping > kDampingCeiling) {
        result.converged = true;
        result.reason = "step_tol";
        break;
      }
    }

    if (result.converged) break;
    if (!stepped) break;
  }

  if (!result.converged && result.reason.empty()) result.reason = "max_iterations";
  return result;
}

}  // namespace lawkit
