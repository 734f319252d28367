#pragma once

#include <Eigen/Dense>
#include <functional>

namespace scemix {

struct OptimResult {
  Eigen::VectorXd x;
  double value = 0.0;
  std::size_t n_evals = 0;
  bool converged = false;
};

struct NelderMeadOptions {
  std::size_t max_evals = 4000;
  double f_tol = 1e-8;          // simplex value spread
  double initial_step = 0.25;   // per-coordinate simplex offset
  std::size_t restarts = 1;     // re-seed the simplex from the incumbent
};

OptimResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                        const Eigen::VectorXd& x0, const NelderMeadOptions& opt = {});

struct BfgsOptions {
  std::size_t max_iters = 500;
  double grad_tol = 1e-8;
  double f_tol = 1e-12;
};

// Minimizes a smooth objective; fg must fill the gradient and return f(x).
OptimResult bfgs(const std::function<double(const Eigen::VectorXd&, Eigen::VectorXd&)>& fg,
                 const Eigen::VectorXd& x0, const BfgsOptions& opt = {});

// Central-difference Hessian of a scalar function, used for standard errors.
Eigen::MatrixXd numerical_hessian(const std::function<double(const Eigen::VectorXd&)>& f,
                                  const Eigen::VectorXd& x, double rel_step = 1e-4);

}  // namespace scemix
