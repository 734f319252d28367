#include "scemix/special_functions.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>

#include "scemix/geometry.hpp"

namespace scemix {

namespace {
constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

double norm_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(kTwoPi); }

double norm_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

double norm_quantile(double p) {
  if (p <= 0.0) return -std::numeric_limits<double>::infinity();
  if (p >= 1.0) return std::numeric_limits<double>::infinity();
  return -kSqrt2 * boost::math::erfc_inv(2.0 * p);
}

namespace {

// Gauss-Legendre half-rules used by the bivariate normal quadrature.
constexpr double kGx1[3] = {0.9324695142031522, 0.6612093864662647, 0.2386191860831970};
constexpr double kGw1[3] = {0.1713244923791705, 0.3607615730481384, 0.4679139345726904};
constexpr double kGx2[6] = {0.9815606342467191, 0.9041172563704750, 0.7699026741943050,
                            0.5873179542866171, 0.3678314989981802, 0.1252334085114692};
constexpr double kGw2[6] = {0.04717533638651177, 0.1069393259953183, 0.1600783285433464,
                            0.2031674267230659, 0.2334925365383547, 0.2491470458134029};
constexpr double kGx3[10] = {0.9931285991850949, 0.9639719272779138, 0.9122344282513259,
                             0.8391169718222188, 0.7463319064601508, 0.6360536807265150,
                             0.5108670019508271, 0.3737060887154196, 0.2277858511416451,
                             0.07652652113349733};
constexpr double kGw3[10] = {0.01761400713915212, 0.04060142980038694, 0.06267204833410906,
                             0.08327674157670475, 0.1019301198172404,  0.1181945319615184,
                             0.1316886384491766,  0.1420961093183821,  0.1491729864726037,
                             0.1527533871307259};

// P(X > dh, Y > dk) for standard bivariate normal with correlation r.
double bvn_upper(double dh, double dk, double r) {
  const double* gx;
  const double* gw;
  int lg;
  const double ar = std::abs(r);
  if (ar < 0.3) {
    gx = kGx1, gw = kGw1, lg = 3;
  } else if (ar < 0.75) {
    gx = kGx2, gw = kGw2, lg = 6;
  } else {
    gx = kGx3, gw = kGw3, lg = 10;
  }
  double h = dh, k = dk;
  double hk = h * k;
  double bvn = 0.0;
  if (ar < 0.925) {
    if (ar > 0.0) {
      const double hs = (h * h + k * k) / 2.0;
      const double asr = std::asin(r);
      for (int i = 0; i < lg; ++i) {
        for (int is = -1; is <= 1; is += 2) {
          const double sn = std::sin(asr * (is * gx[i] + 1.0) / 2.0);
          bvn += gw[i] * std::exp((sn * hk - hs) / (1.0 - sn * sn));
        }
      }
      bvn = bvn * asr / (2.0 * kTwoPi);
    }
    bvn += norm_cdf(-h) * norm_cdf(-k);
    return bvn;
  }
  if (r < 0.0) {
    k = -k;
    hk = -hk;
  }
  if (ar < 1.0) {
    const double as = (1.0 - r) * (1.0 + r);
    double a = std::sqrt(as);
    const double bs = (h - k) * (h - k);
    const double c = (4.0 - hk) / 8.0;
    const double d = (12.0 - hk) / 16.0;
    double asr = -(bs / as + hk) / 2.0;
    if (asr > -100.0) {
      bvn = a * std::exp(asr) *
            (1.0 - c * (bs - as) * (1.0 - d * bs / 5.0) / 3.0 + c * d * as * as / 5.0);
    }
    if (-hk < 100.0) {
      const double b = std::sqrt(bs);
      bvn -= std::exp(-hk / 2.0) * std::sqrt(kTwoPi) * norm_cdf(-b / a) * b *
             (1.0 - c * bs * (1.0 - d * bs / 5.0) / 3.0);
    }
    a /= 2.0;
    for (int i = 0; i < lg; ++i) {
      for (int is = -1; is <= 1; is += 2) {
        const double x = a * (is * gx[i] + 1.0);
        const double xs = x * x;
        const double rs = std::sqrt(1.0 - xs);
        asr = -(bs / xs + hk) / 2.0;
        if (asr > -100.0) {
          const double sp = 1.0 + c * xs * (1.0 + d * xs);
          const double ep = std::exp(-hk * (1.0 - rs) / (2.0 * (1.0 + rs))) / rs;
          bvn += a * gw[i] * std::exp(asr) * (ep - sp);
        }
      }
    }
    bvn = -bvn / kTwoPi;
  }
  if (r > 0.0) {
    bvn += norm_cdf(-std::max(h, k));
  } else {
    bvn = -bvn;
    if (k > h) bvn += norm_cdf(k) - norm_cdf(h);
  }
  return bvn;
}

}  // namespace

double bvn_cdf(double h, double k, double r) {
  if (std::isinf(h) || std::isinf(k)) {
    if (h == -std::numeric_limits<double>::infinity() ||
        k == -std::numeric_limits<double>::infinity())
      return 0.0;
    if (h == std::numeric_limits<double>::infinity()) return norm_cdf(k);
    return norm_cdf(h);
  }
  if (r >= 1.0) return norm_cdf(std::min(h, k));
  if (r <= -1.0) return std::max(0.0, norm_cdf(h) + norm_cdf(k) - 1.0);
  const double p = bvn_upper(-h, -k, r);
  return std::min(1.0, std::max(0.0, p));
}

double laplace_cdf(double x) {
  return x <= 0.0 ? 0.5 * std::exp(x) : 1.0 - 0.5 * std::exp(-x);
}

double laplace_quantile(double p) {
  if (p <= 0.0) return -std::numeric_limits<double>::infinity();
  if (p >= 1.0) return std::numeric_limits<double>::infinity();
  return p <= 0.5 ? std::log(2.0 * p) : -std::log(2.0 * (1.0 - p));
}

double gamma_p(double a, double x) { return boost::math::gamma_p(a, x); }
double gamma_q(double a, double x) { return boost::math::gamma_q(a, x); }
double gamma_p_inv(double a, double p) { return boost::math::gamma_p_inv(a, p); }
double gamma_q_inv(double a, double q) { return boost::math::gamma_q_inv(a, q); }

double DeltaLaplace::k() const {
  return std::exp(0.5 * (std::lgamma(1.0 / delta) - std::lgamma(3.0 / delta)));
}

double DeltaLaplace::log_pdf(double z) const {
  const double ks = k() * sigma;
  const double a = std::abs((z - mu) / ks);
  return std::log(delta) - std::log(2.0 * ks) - std::lgamma(1.0 / delta) - std::pow(a, delta);
}

double DeltaLaplace::pdf(double z) const { return std::exp(log_pdf(z)); }

double DeltaLaplace::cdf(double z) const {
  const double w = std::pow(std::abs((z - mu) / (k() * sigma)), delta);
  // |Z - mu|^delta scaled is Gamma(1/delta) distributed; split by sign.
  const double tail = 0.5 * boost::math::gamma_q(1.0 / delta, w);
  return z >= mu ? 1.0 - tail : tail;
}

double DeltaLaplace::quantile(double p) const {
  if (p <= 0.0) return -std::numeric_limits<double>::infinity();
  if (p >= 1.0) return std::numeric_limits<double>::infinity();
  const double tail = p >= 0.5 ? 2.0 * (1.0 - p) : 2.0 * p;
  const double w = boost::math::gamma_q_inv(1.0 / delta, tail);
  const double z = k() * sigma * std::pow(w, 1.0 / delta);
  return p >= 0.5 ? mu + z : mu - z;
}

double dl_pdf(double z, double mu, double sigma, double delta) {
  return DeltaLaplace{mu, sigma, delta}.pdf(z);
}
double dl_cdf(double z, double mu, double sigma, double delta) {
  return DeltaLaplace{mu, sigma, delta}.cdf(z);
}
double dl_quantile(double p, double mu, double sigma, double delta) {
  return DeltaLaplace{mu, sigma, delta}.quantile(p);
}

double matern_correlation(double h, double kappa1, double kappa2) {
  if (h <= 0.0) return 1.0;
  const double x = 2.0 * h * std::sqrt(kappa2) / kappa1;
  if (x < 1e-12) return 1.0;
  try {
    const double log_pref = (1.0 - kappa2) * std::log(2.0) - std::lgamma(kappa2) +
                            kappa2 * std::log(x);
    const double bk = boost::math::cyl_bessel_k(kappa2, x);
    if (bk <= 0.0) return 0.0;
    const double rho = std::exp(log_pref + std::log(bk));
    return std::min(1.0, std::max(0.0, rho));
  } catch (const std::exception&) {
    return x < 1.0 ? 1.0 : 0.0;
  }
}

double gpd_cdf(double z, double sigma, double xi) {
  if (z <= 0.0) return 0.0;
  if (std::abs(xi) < 1e-12) return 1.0 - std::exp(-z / sigma);
  const double t = 1.0 + xi * z / sigma;
  if (t <= 0.0) return 1.0;  // beyond the upper endpoint (xi < 0)
  return 1.0 - std::pow(t, -1.0 / xi);
}

double gpd_quantile(double p, double sigma, double xi) {
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) {
    if (xi < 0.0) return -sigma / xi;
    return std::numeric_limits<double>::infinity();
  }
  if (std::abs(xi) < 1e-12) return -sigma * std::log1p(-p);
  return sigma / xi * (std::pow(1.0 - p, -xi) - 1.0);
}

double gpd_log_pdf(double z, double sigma, double xi) {
  if (z < 0.0) return -std::numeric_limits<double>::infinity();
  if (std::abs(xi) < 1e-12) return -std::log(sigma) - z / sigma;
  const double t = 1.0 + xi * z / sigma;
  if (t <= 0.0) return -std::numeric_limits<double>::infinity();
  return -std::log(sigma) - (1.0 + 1.0 / xi) * std::log(t);
}

}  // namespace scemix
