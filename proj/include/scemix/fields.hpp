#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scemix/geometry.hpp"

namespace scemix {

enum class FieldClass : std::uint8_t { Convective = 0, NonConvective = 1 };

inline char class_letter(FieldClass c) { return c == FieldClass::Convective ? 'C' : 'N'; }
FieldClass class_from_letter(char c);

// Time-indexed fields y_t(s) over a SiteSet, row-major (time) x (site).
// Values below 1e-5 mm/hr are floored to exactly zero on ingestion.
struct FieldSeries {
  SiteSet sites;
  std::size_t n_times = 0;
  std::vector<double> values;                    // n_times * n_sites
  std::optional<std::vector<FieldClass>> labels; // per time
  std::optional<std::vector<std::uint8_t>> site_flags;  // per (t, s) convective flag

  std::size_t n_sites() const { return sites.size(); }
  double at(std::size_t t, std::size_t s) const { return values[t * n_sites() + s]; }
  double& at(std::size_t t, std::size_t s) { return values[t * n_sites() + s]; }
  const double* row(std::size_t t) const { return values.data() + t * n_sites(); }

  void floor_small_values();
  void validate() const;
};

inline constexpr double kZeroFloorMmHr = 1e-5;

// Dense binary fields: magic "SCEF1", little-endian u32 n, u32 d, then
// n*d float64 row-major.
FieldSeries read_fields_binary(const std::string& path, const SiteSet& sites);
void write_fields_binary(const std::string& path, const FieldSeries& series);

// Sparse CSV fields: header `t,site_id,value`; omitted pairs are zero.
// Times are 1-based in the file.
FieldSeries read_fields_csv(const std::string& path, const SiteSet& sites);
void write_fields_csv(const std::string& path, const FieldSeries& series);

// Reads either format, dispatching on the SCEF1 magic.
FieldSeries read_fields(const std::string& path, const SiteSet& sites);

// Labels CSV: header `t,label`, label in {C,N}; t is 1-based.
std::vector<FieldClass> read_labels_csv(const std::string& path, std::size_t n_times);
void write_labels_csv(const std::string& path, const std::vector<FieldClass>& labels);

// Site flags CSV: header `t,site_id` listing flagged pairs only.
std::vector<std::uint8_t> read_site_flags_csv(const std::string& path,
                                              const FieldSeries& series);
void write_site_flags_csv(const std::string& path, const FieldSeries& series);

}  // namespace scemix
