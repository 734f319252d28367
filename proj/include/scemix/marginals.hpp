#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scemix/fields.hpp"
#include "scemix/geometry.hpp"

namespace scemix {

enum class LinkFn { Identity, Log, Logit };

const char* link_name(LinkFn link);
LinkFn link_from_name(const std::string& name);

struct BasisConfig {
  std::size_t k_loc = 4;   // thin-plate knots over planar coordinates
  std::size_t k_elev = 4;  // cubic radial knots over elevation
  std::uint64_t knot_seed = 1;
};

// Low-rank spatial regression surface: intercept + thin-plate radial basis
// (r^2 log r) at k_loc planar knots + |e - knot|^3 elevation basis, mapped
// through a link. Coordinates and elevation are standardized internally.
struct SurfaceModel {
  LinkFn link = LinkFn::Identity;
  std::vector<PlanarPoint> loc_knots;  // in standardized planar units
  std::vector<double> elev_knots;      // in standardized elevation units
  double loc_scale = 1.0;
  double elev_center = 0.0;
  double elev_scale = 1.0;
  Eigen::VectorXd coef;

  std::size_t n_basis() const { return 1 + loc_knots.size() + elev_knots.size(); }
  void basis_row(const PlanarPoint& xy, double elev, double* out) const;
  double linear_predictor(const PlanarPoint& xy, double elev) const;
  double value(const PlanarPoint& xy, double elev) const;  // link-inverse of eta
};

// Shared basis geometry (knots + standardization) for the three surfaces.
SurfaceModel make_surface_template(const SiteSet& sites, const PlanarChart& chart,
                                   const BasisConfig& cfg, LinkFn link);

Eigen::MatrixXd design_matrix(const SurfaceModel& surface, const SiteSet& sites,
                              const PlanarChart& chart);

struct MarginalModel {
  double lambda = 0.005;
  double xi = 0.0;
  SurfaceModel p_surface;        // logit link
  SurfaceModel q_surface;        // identity link
  SurfaceModel upsilon_surface;  // log link
  SiteSet sites;
  double chart_lon0 = 0.0, chart_lat0 = 0.0;
  std::vector<std::vector<double>> bulk;  // per site, sorted strictly positive values

  // Cached per-site surface values, rebuilt by finalize().
  std::vector<double> p_site, q_site, upsilon_site, censor_site;

  PlanarChart chart() const { return PlanarChart(chart_lon0, chart_lat0); }
  std::size_t site_index(std::int64_t site_id) const;

  // Recomputes the per-site caches and enforces the fit invariants
  // p(s) >= 0, p(s) + lambda < 1, q(s) > 0, upsilon(s) > 0.
  void finalize();
};

// Piecewise-linear empirical distribution of strictly positive values,
// Hazen plotting positions (r - 0.5)/m.
double bulk_cdf(const std::vector<double>& sorted_positive, double y);
double bulk_quantile(const std::vector<double>& sorted_positive, double f);

struct FitWarnings {
  std::vector<std::string> messages;
  void add(std::string msg) { messages.push_back(std::move(msg)); }
};

SurfaceModel fit_dry_probability(const FieldSeries& series, const PlanarChart& chart,
                                 const BasisConfig& cfg);

SurfaceModel fit_threshold_surface(const FieldSeries& series, const PlanarChart& chart,
                                   double lambda, const std::vector<std::size_t>& subset,
                                   const BasisConfig& cfg, FitWarnings* warnings = nullptr);

struct GpdSurfaceFit {
  SurfaceModel upsilon_surface;
  double xi = 0.0;
  double nll = 0.0;
  bool converged = false;
};

GpdSurfaceFit fit_gpd_surface(const FieldSeries& series, const PlanarChart& chart,
                              const SurfaceModel& q_surface, const BasisConfig& cfg,
                              std::optional<double> fixed_xi = std::nullopt);

// Negative log likelihood and analytic score of the additive GPD model;
// theta = (surface coefficients..., xi). Exposed for the gradient checks.
double gpd_surface_nll(const Eigen::VectorXd& theta, const Eigen::MatrixXd& basis,
                       const Eigen::VectorXd& excess, Eigen::VectorXd* grad);

// Elevation-stratified site subset used for the quantile regression.
std::vector<std::size_t> sample_quantile_subset(const SiteSet& sites, std::size_t subset_size,
                                                std::uint64_t seed);

struct MarginalFitConfig {
  double lambda = 0.005;
  std::size_t subset_size = 500;
  BasisConfig basis;
  std::uint64_t seed = 1;
};

MarginalModel fit_marginal_model(const FieldSeries& series, const MarginalFitConfig& cfg,
                                 FitWarnings* warnings = nullptr);

double marginal_cdf(const MarginalModel& m, std::size_t site_index, double y);
double marginal_quantile(const MarginalModel& m, std::size_t site_index, double p);

// Marginal quantile exceeded once per `years` on average given the
// observed record rate for this process.
double return_level(const MarginalModel& m, std::size_t site_index, double years,
                    double fields_per_year);

struct LaplaceField {
  SiteSet sites;
  std::size_t n_times = 0;
  std::vector<double> values;             // standard Laplace scale
  std::vector<std::uint8_t> censored;     // 1 where y = 0
  std::vector<double> censor_level;       // c(s) = F_L^{-1}(p(s)) per site

  std::size_t n_sites() const { return sites.size(); }
  double at(std::size_t t, std::size_t s) const { return values[t * n_sites() + s]; }
  bool is_censored(std::size_t t, std::size_t s) const {
    return censored[t * n_sites() + s] != 0;
  }
};

LaplaceField to_laplace(const MarginalModel& m, const FieldSeries& series);
FieldSeries from_laplace(const MarginalModel& m, const LaplaceField& field);

// Single-value transforms used by the simulation back-transform.
double to_laplace_value(const MarginalModel& m, std::size_t site_index, double y);
double from_laplace_value(const MarginalModel& m, std::size_t site_index, double x);

// Versioned structured-text persistence (`sce-marginal v1`), 17 significant
// digits so doubles round-trip exactly.
void save_marginal_model(const std::string& path, const MarginalModel& m,
                         const std::string& digest, std::uint64_t seed);
struct MarginalFile {
  MarginalModel model;
  std::string digest;
  std::uint64_t seed = 0;
};
MarginalFile load_marginal_model(const std::string& path);

}  // namespace scemix
