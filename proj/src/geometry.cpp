#include "scemix/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "scemix/errors.hpp"

namespace scemix {

namespace {
constexpr double kDegToRad = kPi / 180.0;
}

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonGriddedSites: return "NonGriddedSites";
    case ErrorCode::EmptyField: return "EmptyField";
    case ErrorCode::EmptyLabels: return "EmptyLabels";
    case ErrorCode::NoConvectiveFields: return "NoConvectiveFields";
    case ErrorCode::DegenerateData: return "DegenerateData";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::NoExceedances: return "NoExceedances";
    case ErrorCode::SupportViolation: return "SupportViolation";
    case ErrorCode::NegativeValue: return "NegativeValue";
    case ErrorCode::ProbabilityOutOfRange: return "ProbabilityOutOfRange";
    case ErrorCode::DegenerateConditioning: return "DegenerateConditioning";
    case ErrorCode::Unsatisfiable: return "Unsatisfiable";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::RejectionStall: return "RejectionStall";
    case ErrorCode::CholeskyFailure: return "CholeskyFailure";
    case ErrorCode::AllWeightsZero: return "AllWeightsZero";
    case ErrorCode::RegionMismatch: return "RegionMismatch";
    case ErrorCode::EmptyRegion: return "EmptyRegion";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::LabelsRequired: return "LabelsRequired";
    case ErrorCode::FormatError: return "FormatError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::DigestMismatch: return "DigestMismatch";
  }
  return "UnknownError";
}

void SiteSet::validate() const {
  if (sites.empty()) throw Error(ErrorCode::EmptyInput, "site set is empty");
  std::set<std::int64_t> ids;
  for (const Site& s : sites) {
    if (!s.valid()) {
      throw Error(ErrorCode::FormatError,
                  "site " + std::to_string(s.id) + " has coordinates out of range");
    }
    if (!ids.insert(s.id).second) {
      throw Error(ErrorCode::FormatError, "duplicate site id " + std::to_string(s.id));
    }
  }
  if (grid_spacing_km && *grid_spacing_km <= 0.0) {
    throw Error(ErrorCode::FormatError, "grid_spacing_km must be positive");
  }
}

AnisotropyParams::AnisotropyParams(double theta_, double L_) : theta(theta_), L(L_) {
  if (!(theta >= -kPi / 2.0 && theta <= 0.0)) {
    throw Error(ErrorCode::FormatError, "theta must lie in [-pi/2, 0]");
  }
  if (!(L > 0.0)) throw Error(ErrorCode::FormatError, "L must be positive");
}

PlanarPoint transform_coordinates(const PlanarPoint& s, const AnisotropyParams& p) {
  const double c = std::cos(p.theta), sn = std::sin(p.theta);
  const double x = c * s[0] - sn * s[1];
  const double y = sn * s[0] + c * s[1];
  return {x, y / p.L};
}

PlanarPoint inverse_transform_coordinates(const PlanarPoint& s, const AnisotropyParams& p) {
  const double c = std::cos(p.theta), sn = std::sin(p.theta);
  const double y = s[1] * p.L;
  return {c * s[0] + sn * y, -sn * s[0] + c * y};
}

double great_circle_distance_lonlat(double lon_a, double lat_a, double lon_b, double lat_b) {
  const double phi1 = lat_a * kDegToRad, phi2 = lat_b * kDegToRad;
  const double dphi = phi2 - phi1;
  const double dlam = (lon_b - lon_a) * kDegToRad;
  const double sp = std::sin(dphi / 2.0), sl = std::sin(dlam / 2.0);
  const double a = sp * sp + std::cos(phi1) * std::cos(phi2) * sl * sl;
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(a)));
}

double great_circle_distance(const Site& a, const Site& b) {
  return great_circle_distance_lonlat(a.lon, a.lat, b.lon, b.lat);
}

PlanarChart::PlanarChart(double lon0_deg, double lat0_deg)
    : lon0_(lon0_deg), lat0_(lat0_deg), coslat0_(std::cos(lat0_deg * kDegToRad)) {}

PlanarChart PlanarChart::centered_on(const SiteSet& sites) {
  if (sites.sites.empty()) throw Error(ErrorCode::EmptyInput, "site set is empty");
  double lon = 0.0, lat = 0.0;
  for (const Site& s : sites.sites) {
    lon += s.lon;
    lat += s.lat;
  }
  const double n = static_cast<double>(sites.size());
  return PlanarChart(lon / n, lat / n);
}

PlanarPoint PlanarChart::to_plane(double lon_deg, double lat_deg) const {
  const double x = kEarthRadiusKm * coslat0_ * (lon_deg - lon0_) * kDegToRad;
  const double y = kEarthRadiusKm * (lat_deg - lat0_) * kDegToRad;
  return {x, y};
}

PlanarPoint PlanarChart::to_lonlat(const PlanarPoint& xy) const {
  const double lon = lon0_ + xy[0] / (kEarthRadiusKm * coslat0_) / kDegToRad;
  const double lat = lat0_ + xy[1] / kEarthRadiusKm / kDegToRad;
  return {lon, lat};
}

AnisoMetric::AnisoMetric(PlanarChart chart, AnisotropyParams params)
    : chart_(chart), params_(params) {}

PlanarPoint AnisoMetric::transformed_lonlat(const PlanarPoint& xy) const {
  return chart_.to_lonlat(transform_coordinates(xy, params_));
}

double AnisoMetric::distance_planar(const PlanarPoint& a, const PlanarPoint& b) const {
  const PlanarPoint ta = transformed_lonlat(a);
  const PlanarPoint tb = transformed_lonlat(b);
  return great_circle_distance_lonlat(ta[0], ta[1], tb[0], tb[1]);
}

double AnisoMetric::distance(const Site& a, const Site& b) const {
  return distance_planar(chart_.to_plane(a), chart_.to_plane(b));
}

double aniso_distance(const Site& a, const Site& b, const AnisotropyParams& p,
                      const PlanarChart& chart) {
  return AnisoMetric(chart, p).distance(a, b);
}

namespace {

// Cluster sorted coordinate values into lattice levels within tolerance.
std::vector<double> lattice_levels(std::vector<double> vals, double tol) {
  std::sort(vals.begin(), vals.end());
  std::vector<double> levels;
  for (double v : vals) {
    if (levels.empty() || v - levels.back() > tol) levels.push_back(v);
  }
  return levels;
}

std::size_t level_index(const std::vector<double>& levels, double v, double tol) {
  auto it = std::lower_bound(levels.begin(), levels.end(), v - tol);
  if (it == levels.end() || std::abs(*it - v) > tol) {
    throw Error(ErrorCode::NonGriddedSites, "coordinate off lattice");
  }
  return static_cast<std::size_t>(it - levels.begin());
}

}  // namespace

GridIndex infer_grid(const SiteSet& sites, double tol_deg) {
  sites.validate();
  std::vector<double> lons, lats;
  lons.reserve(sites.size());
  lats.reserve(sites.size());
  for (const Site& s : sites.sites) {
    lons.push_back(s.lon);
    lats.push_back(s.lat);
  }
  const std::vector<double> lon_levels = lattice_levels(lons, tol_deg);
  const std::vector<double> lat_levels = lattice_levels(lats, tol_deg);

  auto check_uniform = [&](const std::vector<double>& levels, const char* axis) {
    if (levels.size() < 2) return;
    const double step = (levels.back() - levels.front()) / static_cast<double>(levels.size() - 1);
    for (std::size_t i = 0; i < levels.size(); ++i) {
      const double expect = levels.front() + step * static_cast<double>(i);
      if (std::abs(levels[i] - expect) > tol_deg) {
        throw Error(ErrorCode::NonGriddedSites,
                    std::string("non-uniform ") + axis + " spacing");
      }
    }
  };
  check_uniform(lon_levels, "lon");
  check_uniform(lat_levels, "lat");

  GridIndex g;
  g.n_rows = lat_levels.size();
  g.n_cols = lon_levels.size();
  g.cell_to_site.assign(g.n_rows * g.n_cols, -1);
  g.row_of.resize(sites.size());
  g.col_of.resize(sites.size());
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const std::size_t r = level_index(lat_levels, sites[i].lat, tol_deg);
    const std::size_t c = level_index(lon_levels, sites[i].lon, tol_deg);
    if (g.cell_to_site[r * g.n_cols + c] >= 0) {
      throw Error(ErrorCode::NonGriddedSites, "two sites share a lattice cell");
    }
    g.cell_to_site[r * g.n_cols + c] = static_cast<std::int64_t>(i);
    g.row_of[i] = r;
    g.col_of[i] = c;
  }
  return g;
}

namespace {
double cross(const PlanarPoint& o, const PlanarPoint& a, const PlanarPoint& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}
}  // namespace

std::vector<PlanarPoint> convex_hull(std::vector<PlanarPoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t n = pts.size();
  if (n < 3) return pts;
  std::vector<PlanarPoint> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

bool point_in_convex_hull(const PlanarPoint& p, const std::vector<PlanarPoint>& hull) {
  if (hull.size() < 3) return false;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const PlanarPoint& a = hull[i];
    const PlanarPoint& b = hull[(i + 1) % hull.size()];
    if (cross(a, b, p) < 0) return false;
  }
  return true;
}

SiteSet read_sites_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open sites file " + path);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::EmptyInput, "sites file is empty: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "id,lon,lat,elev") {
    throw Error(ErrorCode::FormatError, path + ":1: expected header id,lon,lat,elev");
  }
  SiteSet out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    Site s;
    char extra;
    if (std::sscanf(line.c_str(), "%ld,%lf,%lf,%lf%c", &s.id, &s.lon, &s.lat, &s.elev, &extra) != 4) {
      throw Error(ErrorCode::FormatError,
                  path + ":" + std::to_string(lineno) + ": bad site row '" + line + "'");
    }
    out.sites.push_back(s);
  }
  out.validate();
  return out;
}

void write_sites_csv(const std::string& path, const SiteSet& sites) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write sites file " + path);
  out << "id,lon,lat,elev\n";
  char buf[160];
  for (const Site& s : sites.sites) {
    std::snprintf(buf, sizeof buf, "%lld,%.17g,%.17g,%.17g\n",
                  static_cast<long long>(s.id), s.lon, s.lat, s.elev);
    out << buf;
  }
}

}  // namespace scemix
