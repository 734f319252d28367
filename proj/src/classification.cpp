#include "scemix/classification.hpp"

#include <algorithm>
#include <cmath>

#include "scemix/errors.hpp"
#include "scemix/rng.hpp"

namespace scemix {

void ClassifierHyper::validate() const {
  if (!(g_l > 0.0)) throw Error(ErrorCode::ConfigError, "g_l must be > 0");
  if (!(g_u > g_l)) throw Error(ErrorCode::ConfigError, "g_u must be > g_l");
  if (!(p_star >= 0.0 && p_star <= 1.0)) {
    throw Error(ErrorCode::ConfigError, "p_star must lie in [0,1]");
  }
  if (n_g < 3 || n_g % 2 == 0) {
    throw Error(ErrorCode::ConfigError, "n_g must be an odd integer >= 3");
  }
}

FieldClassification classify_field(const double* field, const SiteSet& sites,
                                   const GridIndex& grid, const ClassifierHyper& hyper) {
  hyper.validate();
  if (sites.size() == 0) throw Error(ErrorCode::EmptyField, "field has no sites");

  FieldClassification out;
  out.site_flags.assign(sites.size(), 0);

  const std::size_t half = hyper.n_g / 2;
  const std::size_t nr = grid.n_rows, nc = grid.n_cols;

  for (std::size_t i = 0; i < sites.size(); ++i) {
    const std::size_t r0 = grid.row_of[i], c0 = grid.col_of[i];
    if (r0 < half || c0 < half || r0 + half >= nr || c0 + half >= nc) continue;

    // Check the neighbourhood is fully populated before counting gradients.
    bool complete = true;
    for (std::size_t r = r0 - half; complete && r <= r0 + half; ++r) {
      for (std::size_t c = c0 - half; c <= c0 + half; ++c) {
        if (grid.site_at(r, c) < 0) {
          complete = false;
          break;
        }
      }
    }
    if (!complete) continue;

    // Absolute differences over 4-adjacent pairs inside the neighbourhood,
    // each unordered pair counted once (right and up edges).
    std::size_t n_lower = 0, n_upper = 0;
    auto tally = [&](double a, double b) {
      const double g = std::abs(a - b);
      if (g >= hyper.g_l) {
        ++n_lower;
        if (g >= hyper.g_u) ++n_upper;
      }
    };
    for (std::size_t r = r0 - half; r <= r0 + half; ++r) {
      for (std::size_t c = c0 - half; c <= c0 + half; ++c) {
        const double v = field[grid.site_at(r, c)];
        if (c + 1 <= c0 + half) tally(v, field[grid.site_at(r, c + 1)]);
        if (r + 1 <= r0 + half) tally(v, field[grid.site_at(r + 1, c)]);
      }
    }
    const double p_g = n_lower == 0 ? 0.0 : static_cast<double>(n_upper) / n_lower;
    if (p_g >= hyper.p_star) out.site_flags[i] = 1;
  }

  const bool any = std::any_of(out.site_flags.begin(), out.site_flags.end(),
                               [](std::uint8_t f) { return f != 0; });
  out.label = any ? FieldClass::Convective : FieldClass::NonConvective;
  return out;
}

void classify_series(FieldSeries& series, const ClassifierHyper& hyper) {
  series.validate();
  const GridIndex grid = infer_grid(series.sites);
  std::vector<FieldClass> labels(series.n_times);
  std::vector<std::uint8_t> flags(series.values.size(), 0);
  for (std::size_t t = 0; t < series.n_times; ++t) {
    const FieldClassification fc = classify_field(series.row(t), series.sites, grid, hyper);
    labels[t] = fc.label;
    std::copy(fc.site_flags.begin(), fc.site_flags.end(),
              flags.begin() + static_cast<std::ptrdiff_t>(t * series.n_sites()));
  }
  series.labels = std::move(labels);
  series.site_flags = std::move(flags);
}

double estimate_p_c(const std::vector<FieldClass>& labels) {
  if (labels.empty()) throw Error(ErrorCode::EmptyLabels, "no labels");
  const std::size_t n_conv = static_cast<std::size_t>(
      std::count(labels.begin(), labels.end(), FieldClass::Convective));
  return static_cast<double>(n_conv) / static_cast<double>(labels.size());
}

std::vector<double> convective_contribution(const FieldSeries& series, double radius_km,
                                            std::size_t m_samples, std::uint64_t seed) {
  if (!series.labels || !series.site_flags) {
    throw Error(ErrorCode::LabelsRequired, "series must be classified first");
  }
  std::vector<std::size_t> conv_times;
  for (std::size_t t = 0; t < series.n_times; ++t) {
    if ((*series.labels)[t] == FieldClass::Convective) conv_times.push_back(t);
  }
  if (conv_times.empty()) {
    throw Error(ErrorCode::NoConvectiveFields, "no convective fields in series");
  }

  double lon_lo = series.sites[0].lon, lon_hi = lon_lo;
  double lat_lo = series.sites[0].lat, lat_hi = lat_lo;
  for (const Site& s : series.sites.sites) {
    lon_lo = std::min(lon_lo, s.lon);
    lon_hi = std::max(lon_hi, s.lon);
    lat_lo = std::min(lat_lo, s.lat);
    lat_hi = std::max(lat_hi, s.lat);
  }

  RngStream rng = RngStream(seed).child(0x416C6732);  // Alg. 2 stream

  struct Sample {
    double total, convective;
  };
  std::vector<Sample> samples;
  samples.reserve(conv_times.size() * m_samples);
  const std::size_t d = series.n_sites();
  for (std::size_t t : conv_times) {
    const double* field = series.row(t);
    const std::uint8_t* flags = series.site_flags->data() + t * d;
    for (std::size_t m = 0; m < m_samples; ++m) {
      double total = 0.0, conv = 0.0;
      bool any_site = false;
      // Redrawing centres whose disc is empty keeps sample counts comparable
      // across radii.
      for (int attempt = 0; attempt < 10000 && !any_site; ++attempt) {
        total = conv = 0.0;
        const double clon = rng.uniform(lon_lo, lon_hi);
        const double clat = rng.uniform(lat_lo, lat_hi);
        for (std::size_t s = 0; s < d; ++s) {
          if (radius_km >= 0.0 &&
              great_circle_distance_lonlat(clon, clat, series.sites[s].lon,
                                           series.sites[s].lat) > radius_km)
            continue;
          any_site = true;
          total += field[s];
          if (flags[s]) conv += field[s];
        }
        if (radius_km < 0.0) break;  // whole domain: one draw suffices
      }
      if (!any_site && radius_km >= 0.0) {
        throw Error(ErrorCode::Unsatisfiable, "no disc of the given radius contains a site");
      }
      samples.push_back({total, conv});
      if (radius_km < 0.0) break;  // whole-domain totals do not vary with the centre
    }
  }

  std::vector<double> totals;
  totals.reserve(samples.size());
  for (const Sample& s : samples) totals.push_back(s.total);
  std::sort(totals.begin(), totals.end());
  // Type-7 90% quantile of the pooled totals.
  const double pos = 0.9 * static_cast<double>(totals.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(lo);
  const double q90 = lo + 1 < totals.size()
                         ? totals[lo] * (1.0 - frac) + totals[lo + 1] * frac
                         : totals[lo];

  std::vector<double> proportions;
  for (const Sample& s : samples) {
    if (s.total > q90 && s.total > 0.0) proportions.push_back(s.convective / s.total);
  }
  return proportions;
}

}  // namespace scemix
