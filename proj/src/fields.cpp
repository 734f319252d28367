#include "scemix/fields.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>

#include "scemix/errors.hpp"

namespace scemix {

FieldClass class_from_letter(char c) {
  if (c == 'C') return FieldClass::Convective;
  if (c == 'N') return FieldClass::NonConvective;
  throw Error(ErrorCode::FormatError, std::string("unknown class label '") + c + "'");
}

void FieldSeries::floor_small_values() {
  for (double& v : values) {
    if (v < kZeroFloorMmHr) v = 0.0;
  }
}

void FieldSeries::validate() const {
  sites.validate();
  if (values.size() != n_times * n_sites()) {
    throw Error(ErrorCode::FormatError, "field series value buffer has wrong size");
  }
  for (double v : values) {
    if (!(v >= 0.0)) throw Error(ErrorCode::NegativeValue, "field values must be >= 0");
    if (v > 0.0 && v < kZeroFloorMmHr) {
      throw Error(ErrorCode::FormatError, "values below 1e-5 mm/hr must be stored as 0");
    }
  }
  if (labels && labels->size() != n_times) {
    throw Error(ErrorCode::FormatError, "labels must cover all times");
  }
  if (site_flags && site_flags->size() != values.size()) {
    throw Error(ErrorCode::FormatError, "site_flags must cover all (t, s) pairs");
  }
}

namespace {

constexpr char kFieldsMagic[5] = {'S', 'C', 'E', 'F', '1'};

void put_u32(std::ofstream& out, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::ifstream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

std::map<std::int64_t, std::size_t> site_index_map(const SiteSet& sites) {
  std::map<std::int64_t, std::size_t> m;
  for (std::size_t i = 0; i < sites.size(); ++i) m[sites[i].id] = i;
  return m;
}

}  // namespace

FieldSeries read_fields_binary(const std::string& path, const SiteSet& sites) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open fields file " + path);
  char magic[5];
  in.read(magic, 5);
  if (!in || std::memcmp(magic, kFieldsMagic, 5) != 0) {
    throw Error(ErrorCode::FormatError, path + ": missing SCEF1 magic");
  }
  const std::uint32_t n = get_u32(in);
  const std::uint32_t d = get_u32(in);
  if (!in) throw Error(ErrorCode::FormatError, path + ": truncated header");
  if (d != sites.size()) {
    throw Error(ErrorCode::FormatError, path + ": field dimension " + std::to_string(d) +
                                            " does not match site count " +
                                            std::to_string(sites.size()));
  }
  if (n == 0) throw Error(ErrorCode::EmptyInput, path + ": no fields");
  FieldSeries series;
  series.sites = sites;
  series.n_times = n;
  series.values.resize(static_cast<std::size_t>(n) * d);
  in.read(reinterpret_cast<char*>(series.values.data()),
          static_cast<std::streamsize>(series.values.size() * sizeof(double)));
  if (!in) throw Error(ErrorCode::FormatError, path + ": truncated value block");
  series.floor_small_values();
  series.validate();
  return series;
}

void write_fields_binary(const std::string& path, const FieldSeries& series) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write fields file " + path);
  out.write(kFieldsMagic, 5);
  put_u32(out, static_cast<std::uint32_t>(series.n_times));
  put_u32(out, static_cast<std::uint32_t>(series.n_sites()));
  out.write(reinterpret_cast<const char*>(series.values.data()),
            static_cast<std::streamsize>(series.values.size() * sizeof(double)));
}

FieldSeries read_fields_csv(const std::string& path, const SiteSet& sites) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open fields file " + path);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::EmptyInput, path + ": empty fields file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t,site_id,value") {
    throw Error(ErrorCode::FormatError, path + ":1: expected header t,site_id,value");
  }
  const auto index = site_index_map(sites);
  struct Entry {
    std::size_t t, s;
    double v;
  };
  std::vector<Entry> entries;
  std::size_t max_t = 0, lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    long long t, sid;
    double v;
    char extra;
    if (std::sscanf(line.c_str(), "%lld,%lld,%lf%c", &t, &sid, &v, &extra) != 3 || t < 1) {
      throw Error(ErrorCode::FormatError,
                  path + ":" + std::to_string(lineno) + ": bad field row '" + line + "'");
    }
    auto it = index.find(sid);
    if (it == index.end()) {
      throw Error(ErrorCode::FormatError,
                  path + ":" + std::to_string(lineno) + ": unknown site id " + std::to_string(sid));
    }
    entries.push_back({static_cast<std::size_t>(t - 1), it->second, v});
    max_t = std::max(max_t, static_cast<std::size_t>(t));
  }
  if (entries.empty()) throw Error(ErrorCode::EmptyInput, path + ": no field entries");
  FieldSeries series;
  series.sites = sites;
  series.n_times = max_t;
  series.values.assign(max_t * sites.size(), 0.0);
  for (const Entry& e : entries) series.at(e.t, e.s) = e.v;
  series.floor_small_values();
  series.validate();
  return series;
}

void write_fields_csv(const std::string& path, const FieldSeries& series) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write fields file " + path);
  out << "t,site_id,value\n";
  char buf[96];
  for (std::size_t t = 0; t < series.n_times; ++t) {
    for (std::size_t s = 0; s < series.n_sites(); ++s) {
      const double v = series.at(t, s);
      if (v == 0.0) continue;
      std::snprintf(buf, sizeof buf, "%zu,%lld,%.17g\n", t + 1,
                    static_cast<long long>(series.sites[s].id), v);
      out << buf;
    }
  }
}

FieldSeries read_fields(const std::string& path, const SiteSet& sites) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open fields file " + path);
  char magic[5] = {0};
  in.read(magic, 5);
  in.close();
  if (std::memcmp(magic, kFieldsMagic, 5) == 0) return read_fields_binary(path, sites);
  return read_fields_csv(path, sites);
}

std::vector<FieldClass> read_labels_csv(const std::string& path, std::size_t n_times) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open labels file " + path);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::EmptyLabels, path + ": empty labels file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t,label") {
    throw Error(ErrorCode::FormatError, path + ":1: expected header t,label");
  }
  std::vector<FieldClass> labels(n_times, FieldClass::NonConvective);
  std::vector<bool> seen(n_times, false);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    long long t;
    char label;
    char extra;
    if (std::sscanf(line.c_str(), "%lld,%c%c", &t, &label, &extra) != 2 || t < 1 ||
        static_cast<std::size_t>(t) > n_times) {
      throw Error(ErrorCode::FormatError,
                  path + ":" + std::to_string(lineno) + ": bad label row '" + line + "'");
    }
    labels[static_cast<std::size_t>(t - 1)] = class_from_letter(label);
    seen[static_cast<std::size_t>(t - 1)] = true;
  }
  for (std::size_t t = 0; t < n_times; ++t) {
    if (!seen[t]) {
      throw Error(ErrorCode::FormatError,
                  path + ": missing label for t=" + std::to_string(t + 1));
    }
  }
  return labels;
}

void write_labels_csv(const std::string& path, const std::vector<FieldClass>& labels) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write labels file " + path);
  out << "t,label\n";
  for (std::size_t t = 0; t < labels.size(); ++t) {
    out << (t + 1) << ',' << class_letter(labels[t]) << '\n';
  }
}

std::vector<std::uint8_t> read_site_flags_csv(const std::string& path,
                                              const FieldSeries& series) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open site flags file " + path);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::EmptyInput, path + ": empty flags file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t,site_id") {
    throw Error(ErrorCode::FormatError, path + ":1: expected header t,site_id");
  }
  const auto index = site_index_map(series.sites);
  std::vector<std::uint8_t> flags(series.values.size(), 0);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    long long t, sid;
    char extra;
    if (std::sscanf(line.c_str(), "%lld,%lld%c", &t, &sid, &extra) != 2 || t < 1 ||
        static_cast<std::size_t>(t) > series.n_times) {
      throw Error(ErrorCode::FormatError,
                  path + ":" + std::to_string(lineno) + ": bad flag row '" + line + "'");
    }
    auto it = index.find(sid);
    if (it == index.end()) {
      throw Error(ErrorCode::FormatError,
                  path + ":" + std::to_string(lineno) + ": unknown site id " + std::to_string(sid));
    }
    flags[static_cast<std::size_t>(t - 1) * series.n_sites() + it->second] = 1;
  }
  return flags;
}

void write_site_flags_csv(const std::string& path, const FieldSeries& series) {
  if (!series.site_flags) {
    throw Error(ErrorCode::EmptyInput, "series has no site flags to write");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write site flags file " + path);
  out << "t,site_id\n";
  for (std::size_t t = 0; t < series.n_times; ++t) {
    for (std::size_t s = 0; s < series.n_sites(); ++s) {
      if ((*series.site_flags)[t * series.n_sites() + s]) {
        out << (t + 1) << ',' << series.sites[s].id << '\n';
      }
    }
  }
}

}  // namespace scemix
