#pragma once

namespace scemix {

// Standard normal.
double norm_pdf(double x);
double norm_cdf(double x);
double norm_quantile(double p);

// P(X <= h, Y <= k) for standard bivariate normal with correlation r,
// Drezner/Wesolowsky-Genz quadrature, absolute error below 1e-7.
double bvn_cdf(double h, double k, double r);

// Standard Laplace distribution function and its inverse.
double laplace_cdf(double x);
double laplace_quantile(double p);

// Regularized incomplete gamma wrappers (lower tail P, upper tail Q).
double gamma_p(double a, double x);
double gamma_q(double a, double x);
double gamma_p_inv(double a, double p);
double gamma_q_inv(double a, double q);

// Delta-Laplace (generalized Gaussian) distribution with location mu,
// scale sigma and shape delta; delta = 1 is Laplace(mu, sigma/sqrt(2))
// and delta = 2 is Normal(mu, sigma^2).
struct DeltaLaplace {
  double mu = 0.0;
  double sigma = 1.0;
  double delta = 2.0;

  // k such that k^2 = Gamma(1/delta)/Gamma(3/delta).
  double k() const;
  double pdf(double z) const;
  double log_pdf(double z) const;
  double cdf(double z) const;
  double quantile(double p) const;
};

double dl_pdf(double z, double mu, double sigma, double delta);
double dl_cdf(double z, double mu, double sigma, double delta);
double dl_quantile(double p, double mu, double sigma, double delta);

// Matern correlation with range kappa1 > 0 and smoothness kappa2 > 0:
// rho(h) = 2^(1-nu)/Gamma(nu) (2h sqrt(nu)/kappa1)^nu K_nu(2h sqrt(nu)/kappa1).
double matern_correlation(double h, double kappa1, double kappa2);

// Generalised Pareto with scale sigma > 0 and shape xi; exceedance z >= 0.
double gpd_cdf(double z, double sigma, double xi);
double gpd_quantile(double p, double sigma, double xi);
double gpd_log_pdf(double z, double sigma, double xi);

}  // namespace scemix
