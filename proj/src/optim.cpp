#include "scemix/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace scemix {

namespace {

double guarded(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x,
               std::size_t& evals) {
  ++evals;
  const double v = f(x);
  return std::isfinite(v) ? v : 1e300;
}

OptimResult nelder_mead_once(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& x0, double step, std::size_t max_evals,
                             double f_tol, std::size_t& evals) {
  const int n = static_cast<int>(x0.size());
  std::vector<Eigen::VectorXd> pts(n + 1, x0);
  std::vector<double> vals(n + 1);
  for (int i = 0; i < n; ++i) pts[i + 1](i) += step * std::max(1.0, std::abs(x0(i)));
  for (int i = 0; i <= n; ++i) vals[i] = guarded(f, pts[i], evals);

  auto order = [&] {
    std::vector<int> idx(n + 1);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return vals[a] < vals[b]; });
    std::vector<Eigen::VectorXd> p2(n + 1);
    std::vector<double> v2(n + 1);
    for (int i = 0; i <= n; ++i) {
      p2[i] = pts[idx[i]];
      v2[i] = vals[idx[i]];
    }
    pts.swap(p2);
    vals.swap(v2);
  };

  OptimResult res;
  while (evals < max_evals) {
    order();
    if (vals[n] - vals[0] < f_tol) {
      res.converged = true;
      break;
    }
    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) centroid += pts[i];
    centroid /= n;

    const Eigen::VectorXd xr = centroid + (centroid - pts[n]);
    const double fr = guarded(f, xr, evals);
    if (fr < vals[0]) {
      const Eigen::VectorXd xe = centroid + 2.0 * (centroid - pts[n]);
      const double fe = guarded(f, xe, evals);
      if (fe < fr) {
        pts[n] = xe;
        vals[n] = fe;
      } else {
        pts[n] = xr;
        vals[n] = fr;
      }
    } else if (fr < vals[n - 1]) {
      pts[n] = xr;
      vals[n] = fr;
    } else {
      const bool outside = fr < vals[n];
      const Eigen::VectorXd xc =
          outside ? centroid + 0.5 * (xr - centroid) : centroid - 0.5 * (centroid - pts[n]);
      const double fc = guarded(f, xc, evals);
      if (fc < std::min(fr, vals[n])) {
        pts[n] = xc;
        vals[n] = fc;
      } else {
        // shrink toward the best vertex
        for (int i = 1; i <= n; ++i) {
          pts[i] = pts[0] + 0.5 * (pts[i] - pts[0]);
          vals[i] = guarded(f, pts[i], evals);
        }
      }
    }
  }
  order();
  res.x = pts[0];
  res.value = vals[0];
  res.n_evals = evals;
  return res;
}

}  // namespace

OptimResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                        const Eigen::VectorXd& x0, const NelderMeadOptions& opt) {
  std::size_t evals = 0;
  OptimResult best = nelder_mead_once(f, x0, opt.initial_step, opt.max_evals, opt.f_tol, evals);
  for (std::size_t r = 0; r < opt.restarts && evals < opt.max_evals; ++r) {
    OptimResult next = nelder_mead_once(f, best.x, opt.initial_step * 0.25, opt.max_evals,
                                        opt.f_tol, evals);
    if (next.value <= best.value) {
      next.n_evals = evals;
      best = next;
    }
  }
  best.n_evals = evals;
  return best;
}

OptimResult bfgs(const std::function<double(const Eigen::VectorXd&, Eigen::VectorXd&)>& fg,
                 const Eigen::VectorXd& x0, const BfgsOptions& opt) {
  const int n = static_cast<int>(x0.size());
  Eigen::VectorXd x = x0, g(n), g_new(n);
  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(n, n);
  double fx = fg(x, g);
  OptimResult res;
  res.n_evals = 1;

  for (std::size_t iter = 0; iter < opt.max_iters; ++iter) {
    if (g.lpNorm<Eigen::Infinity>() < opt.grad_tol) {
      res.converged = true;
      break;
    }
    Eigen::VectorXd dir = -hinv * g;
    double slope = g.dot(dir);
    if (!(slope < 0.0)) {  // reset to steepest descent
      hinv.setIdentity();
      dir = -g;
      slope = g.dot(dir);
    }

    // Backtracking Armijo line search.
    double alpha = 1.0;
    double f_new = 0.0;
    Eigen::VectorXd x_new;
    bool ok = false;
    for (int ls = 0; ls < 60; ++ls) {
      x_new = x + alpha * dir;
      f_new = fg(x_new, g_new);
      ++res.n_evals;
      if (std::isfinite(f_new) && f_new <= fx + 1e-4 * alpha * slope) {
        ok = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!ok) break;

    const Eigen::VectorXd s = x_new - x;
    const Eigen::VectorXd y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-12) {
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
      hinv = (eye - rho * s * y.transpose()) * hinv * (eye - rho * y * s.transpose()) +
             rho * s * s.transpose();
    }
    const double improvement = fx - f_new;
    x = x_new;
    fx = f_new;
    g = g_new;
    if (improvement < opt.f_tol && iter > 25) {
      res.converged = true;
      break;
    }
  }
  res.x = x;
  res.value = fx;
  return res;
}

Eigen::MatrixXd numerical_hessian(const std::function<double(const Eigen::VectorXd&)>& f,
                                  const Eigen::VectorXd& x, double rel_step) {
  const int n = static_cast<int>(x.size());
  Eigen::VectorXd h(n);
  for (int i = 0; i < n; ++i) h(i) = rel_step * std::max(1.0, std::abs(x(i)));
  Eigen::MatrixXd hess(n, n);
  const double f0 = f(x);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Eigen::VectorXd xp = x;
      if (i == j) {
        xp(i) = x(i) + h(i);
        const double fp = f(xp);
        xp(i) = x(i) - h(i);
        const double fm = f(xp);
        hess(i, i) = (fp - 2.0 * f0 + fm) / (h(i) * h(i));
      } else {
        double v = 0.0;
        for (int si = -1; si <= 1; si += 2) {
          for (int sj = -1; sj <= 1; sj += 2) {
            xp = x;
            xp(i) += si * h(i);
            xp(j) += sj * h(j);
            v += si * sj * f(xp);
          }
        }
        hess(i, j) = hess(j, i) = v / (4.0 * h(i) * h(j));
      }
    }
  }
  return hess;
}

}  // namespace scemix
