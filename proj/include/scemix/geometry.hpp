#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace scemix {

inline constexpr double kEarthRadiusKm = 6371.0088;  // IUGG mean radius
inline constexpr double kPi = 3.14159265358979323846;

struct Site {
  std::int64_t id = 0;
  double lon = 0.0;  // degrees, [-180, 180]
  double lat = 0.0;  // degrees, [-90, 90]
  double elev = 0.0; // metres

  bool valid() const {
    return lon >= -180.0 && lon <= 180.0 && lat >= -90.0 && lat <= 90.0;
  }
};

struct SiteSet {
  std::vector<Site> sites;
  std::optional<double> grid_spacing_km;

  std::size_t size() const { return sites.size(); }
  const Site& operator[](std::size_t i) const { return sites[i]; }

  // Throws on empty set, invalid coordinates or duplicate ids.
  void validate() const;
};

// Rotation/stretch of planar coordinates: s* = diag(1, 1/L) R(theta) s.
struct AnisotropyParams {
  double theta = 0.0;  // radians, [-pi/2, 0]
  double L = 1.0;      // > 0; 1 recovers isotropy

  AnisotropyParams() = default;
  AnisotropyParams(double theta_, double L_);
};

using PlanarPoint = std::array<double, 2>;

PlanarPoint transform_coordinates(const PlanarPoint& s, const AnisotropyParams& p);
PlanarPoint inverse_transform_coordinates(const PlanarPoint& s, const AnisotropyParams& p);

double great_circle_distance_lonlat(double lon_a, double lat_a, double lon_b, double lat_b);
double great_circle_distance(const Site& a, const Site& b);

// Equirectangular chart (km units) about a reference point. Exactly
// invertible, so chart -> inverse chart is the identity on coordinates.
class PlanarChart {
 public:
  PlanarChart(double lon0_deg, double lat0_deg);
  static PlanarChart centered_on(const SiteSet& sites);

  PlanarPoint to_plane(double lon_deg, double lat_deg) const;
  PlanarPoint to_plane(const Site& s) const { return to_plane(s.lon, s.lat); }
  // Returns (lon, lat) in degrees.
  PlanarPoint to_lonlat(const PlanarPoint& xy) const;

  double lon0() const { return lon0_; }
  double lat0() const { return lat0_; }

 private:
  double lon0_, lat0_, coslat0_;
};

// Anisotropic metric: chart both sites, apply the coordinate transform,
// map back through the chart and take the great-circle distance between
// the transformed points. With theta = 0, L = 1 this is exactly the
// great-circle distance.
class AnisoMetric {
 public:
  AnisoMetric(PlanarChart chart, AnisotropyParams params);

  double distance(const Site& a, const Site& b) const;
  double distance_planar(const PlanarPoint& a, const PlanarPoint& b) const;

  const AnisotropyParams& params() const { return params_; }
  const PlanarChart& chart() const { return chart_; }

 private:
  PlanarPoint transformed_lonlat(const PlanarPoint& xy) const;

  PlanarChart chart_;
  AnisotropyParams params_;
};

double aniso_distance(const Site& a, const Site& b, const AnisotropyParams& p,
                      const PlanarChart& chart);

// Row/column indices of sites on a regular lon/lat lattice.
// Throws NonGriddedSites when no lattice fits within tolerance.
struct GridIndex {
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  std::vector<std::int64_t> cell_to_site;       // n_rows*n_cols, -1 for holes
  std::vector<std::size_t> row_of, col_of;      // per site

  std::int64_t site_at(std::size_t r, std::size_t c) const {
    return cell_to_site[r * n_cols + c];
  }
};

GridIndex infer_grid(const SiteSet& sites, double tol_deg = 1e-6);

// Convex hull (monotone chain) and membership test, used for placing
// synthetic conditioning sites outside the observed domain.
std::vector<PlanarPoint> convex_hull(std::vector<PlanarPoint> pts);
bool point_in_convex_hull(const PlanarPoint& p, const std::vector<PlanarPoint>& hull);

// Sites file: CSV with header `id,lon,lat,elev`, LF line endings.
SiteSet read_sites_csv(const std::string& path);
void write_sites_csv(const std::string& path, const SiteSet& sites);

}  // namespace scemix
