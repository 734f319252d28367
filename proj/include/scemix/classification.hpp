#pragma once

#include <cstdint>
#include <vector>

#include "scemix/fields.hpp"
#include "scemix/geometry.hpp"

namespace scemix {

struct ClassifierHyper {
  double g_l = 0.01;  // mm/hr, lower gradient threshold (> 0)
  double g_u = 1.0;   // mm/hr, upper gradient threshold (> g_l)
  double p_star = 0.2;
  std::size_t n_g = 9;  // odd neighbourhood size >= 3

  void validate() const;
};

struct FieldClassification {
  FieldClass label = FieldClass::NonConvective;
  std::vector<std::uint8_t> site_flags;  // per site, 1 = convective
};

// Flags site i convective when, among absolute differences of 4-adjacent
// cell pairs in the complete n_g x n_g neighbourhood around i, the
// proportion of values >= g_u within those >= g_l reaches p_star. Sites
// whose full neighbourhood cannot be formed are skipped. The field is
// convective when any site is flagged; all-dry fields are non-convective.
FieldClassification classify_field(const double* field, const SiteSet& sites,
                                   const GridIndex& grid, const ClassifierHyper& hyper);

// Labels every time slice of the series and stores labels + site flags.
void classify_series(FieldSeries& series, const ClassifierHyper& hyper);

double estimate_p_c(const std::vector<FieldClass>& labels);

// For each convective field, draws M uniform centres over the bounding
// box of the sites (rejecting discs that contain no site), computes disc
// rainfall totals and convective-site totals, keeps samples above the
// empirical 90% quantile of the totals and returns convective/total
// ratios for the kept samples. radius_km < 0 means the whole domain.
std::vector<double> convective_contribution(const FieldSeries& series, double radius_km,
                                            std::size_t m_samples, std::uint64_t seed);

}  // namespace scemix
