#include "fhdgm/data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace fhdgm {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

double parse_double(const std::string& s, const std::string& what, long line_no) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DataError(what + ": not a number '" + s + "' at line " + std::to_string(line_no));
  }
}

// Strips a trailing '\r' left over from CRLF files.
void chomp(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

struct Timestamp {
  Date day;
  double hours;  // time of day
};

Timestamp parse_timestamp(const std::string& iso, long line_no) {
  int y = 0, mo = 0, d = 0, hh = 0, mi = 0;
  double ss = 0.0;
  const int got =
      std::sscanf(iso.c_str(), "%d-%d-%d%*1[T ]%d:%d:%lf", &y, &mo, &d, &hh, &mi, &ss);
  if (got < 5)
    throw DataError("timestamp: malformed '" + iso + "' at line " + std::to_string(line_no));
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{unsigned(mo)},
                                        std::chrono::day{unsigned(d)}};
  if (!ymd.ok())
    throw DataError("timestamp: invalid date '" + iso + "' at line " + std::to_string(line_no));
  return {Date{ymd}, hh + mi / 60.0 + ss / 3600.0};
}

}  // namespace

Date parse_date(const std::string& iso) {
  int y = 0, mo = 0, d = 0;
  if (std::sscanf(iso.c_str(), "%d-%d-%d", &y, &mo, &d) != 3)
    throw DataError("date: malformed '" + iso + "'");
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{unsigned(mo)},
                                        std::chrono::day{unsigned(d)}};
  if (!ymd.ok()) throw DataError("date: invalid '" + iso + "'");
  return Date{ymd};
}

std::string format_date(Date d) {
  const std::chrono::year_month_day ymd{d};
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(ymd.year()), unsigned(ymd.month()),
                unsigned(ymd.day()));
  return buf;
}

int weekday_index(Date d) {
  const std::chrono::weekday wd{d};
  return static_cast<int>(wd.iso_encoding()) - 1;  // Monday = 1 in ISO
}

FunctionalGrid FunctionalGrid::uniform(int q) {
  if (q <= 0) throw DataError("grid: point count must be positive");
  FunctionalGrid g;
  g.points.resize(q);
  const double step = (g.domain_end - g.domain_start) / q;
  for (int j = 0; j < q; ++j) g.points[j] = g.domain_start + step * j;
  return g;
}

void FunctionalGrid::validate() const {
  if (points.empty()) throw DataError("grid: empty");
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (points[j] < domain_start || points[j] >= domain_end)
      throw DataError("grid: point outside [start, end)");
    if (j > 0 && !(points[j] > points[j - 1]))
      throw DataError("grid: points must be strictly increasing");
  }
}

int FunctionalGrid::nearest_slot(double h, double max_gap_hours) const {
  const auto it = std::lower_bound(points.begin(), points.end(), h);
  int best = -1;
  double best_gap = max_gap_hours;
  if (it != points.end()) {
    const double gap = std::abs(*it - h);
    if (gap <= best_gap) {
      best = static_cast<int>(it - points.begin());
      best_gap = gap;
    }
  }
  if (it != points.begin()) {
    const double gap = std::abs(*(it - 1) - h);
    if (gap < best_gap || (best < 0 && gap <= best_gap)) {
      best = static_cast<int>(it - points.begin()) - 1;
    }
  }
  return best;
}

long FunctionalDataset::observed_count() const {
  long total = 0;
  for (const auto& mask : observed) total += mask.count();
  return total;
}

void FunctionalDataset::validate() const {
  const int n = n_stations(), T = n_days(), q = n_grid();
  if (n <= 0 || T <= 0 || q <= 0) throw DataError("dataset: empty dimension");
  grid.validate();
  if (static_cast<int>(values.size()) != n || static_cast<int>(observed.size()) != n)
    throw DataError("dataset: per-station storage size mismatch");
  for (int i = 0; i < n; ++i) {
    if (values[i].rows() != T || values[i].cols() != q || observed[i].rows() != T ||
        observed[i].cols() != q)
      throw DataError("dataset: value/mask shape mismatch");
    for (int t = 0; t < T; ++t)
      for (int j = 0; j < q; ++j)
        if (observed[i](t, j) && !(std::isfinite(values[i](t, j)) && values[i](t, j) >= 0.0))
          throw DataError("dataset: observed cell not finite and nonnegative");
  }
  for (std::size_t t = 1; t < days.size(); ++t)
    if (days[t] - days[t - 1] != std::chrono::days{1})
      throw DataError("dataset: days not contiguous");
}

FunctionalDataset FunctionalDataset::subset(const std::vector<int>& station_indices) const {
  FunctionalDataset out;
  out.days = days;
  out.grid = grid;
  std::map<int, int> seen;
  for (int idx : station_indices) {
    if (idx < 0 || idx >= n_stations()) throw DataError("subset: station index out of range");
    StationMeta meta = stations[idx];
    const int copy = seen[idx]++;
    if (copy > 0) meta.id += "#" + std::to_string(copy);
    out.stations.push_back(std::move(meta));
    out.values.push_back(values[idx]);
    out.observed.push_back(observed[idx]);
  }
  return out;
}

Vector FunctionalDataset::station_latitudes() const {
  Vector v(n_stations());
  for (int i = 0; i < n_stations(); ++i) v[i] = stations[i].latitude;
  return v;
}

Vector FunctionalDataset::station_longitudes() const {
  Vector v(n_stations());
  for (int i = 0; i < n_stations(); ++i) v[i] = stations[i].longitude;
  return v;
}

int FunctionalDataset::station_index(const std::string& id) const {
  for (int i = 0; i < n_stations(); ++i)
    if (stations[i].id == id) return i;
  return -1;
}

IngestResult ingest_hire_data(const std::string& path, const FunctionalGrid& grid,
                              std::optional<Date> first_day, std::optional<Date> last_day,
                              double utc_offset_hours) {
  grid.validate();
  std::ifstream in(path);
  if (!in) throw DataError("hire data: cannot open " + path);

  std::string line;
  if (!std::getline(in, line)) throw DataError("hire data: empty file " + path);
  chomp(line);
  if (line != "station_id,timestamp,bike_count")
    throw DataError("hire data: unexpected header '" + line + "'");

  struct Record {
    int day_serial;
    int slot;
    double count;
  };
  std::map<std::string, std::vector<Record>> per_station;
  IngestStats stats;
  const double slot_tolerance_hours = 2.5 / 60.0;
  const double day_hours = grid.domain_end - grid.domain_start;

  long line_no = 1;
  int min_day = INT32_MAX, max_day = INT32_MIN;
  while (std::getline(in, line)) {
    ++line_no;
    chomp(line);
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 3)
      throw DataError("hire data: expected 3 fields at line " + std::to_string(line_no));
    Timestamp ts = parse_timestamp(fields[1], line_no);
    const double count = parse_double(fields[2], "hire data", line_no);
    if (!(std::isfinite(count)) || count < 0.0)
      throw DataError("hire data: negative or non-finite count at line " +
                      std::to_string(line_no));

    // Apply the configured local offset, rolling over day boundaries.
    double h = ts.hours + utc_offset_hours;
    int day_shift = static_cast<int>(std::floor(h / day_hours));
    h -= day_shift * day_hours;
    const Date day = ts.day + std::chrono::days{day_shift};

    const int slot = grid.nearest_slot(h, slot_tolerance_hours);
    if (slot < 0) {
      ++stats.rejected_misaligned;
      continue;
    }
    const int serial = static_cast<int>(day.time_since_epoch().count());
    per_station[fields[0]].push_back({serial, slot, count});
    min_day = std::min(min_day, serial);
    max_day = std::max(max_day, serial);
  }

  if (first_day) min_day = static_cast<int>(first_day->time_since_epoch().count());
  if (last_day) max_day = static_cast<int>(last_day->time_since_epoch().count());
  if (per_station.empty() && !(first_day && last_day))
    throw DataError("hire data: no records in range");
  if (min_day > max_day) throw DataError("hire data: empty date range");

  FunctionalDataset ds;
  ds.grid = grid;
  const int T = max_day - min_day + 1;
  for (int t = 0; t < T; ++t)
    ds.days.push_back(Date{std::chrono::days{min_day + t}});

  const int q = grid.size();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& [id, records] : per_station) {  // std::map: id-sorted, deterministic
    StationMeta meta;
    meta.id = id;
    ds.stations.push_back(meta);
    Matrix vals = Matrix::Constant(T, q, nan);
    BoolArray mask = BoolArray::Constant(T, q, false);
    for (const Record& rec : records) {
      const int t = rec.day_serial - min_day;
      if (t < 0 || t >= T) {
        ++stats.rejected_misaligned;  // outside the explicit date range
        continue;
      }
      if (mask(t, rec.slot)) {
        ++stats.rejected_duplicate;
        continue;
      }
      vals(t, rec.slot) = rec.count;
      mask(t, rec.slot) = true;
      ++stats.accepted;
    }
    ds.values.push_back(std::move(vals));
    ds.observed.push_back(std::move(mask));
  }

  if (ds.stations.empty()) throw DataError("hire data: no records in range");
  return {std::move(ds), stats};
}

std::vector<StationMeta> ingest_station_meta(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("station meta: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw DataError("station meta: empty file");
  chomp(line);
  if (line != "id,name,lat,lon,elevation_m,dist_metro_km,dist_train_km")
    throw DataError("station meta: unexpected header '" + line + "'");

  std::vector<StationMeta> out;
  std::set<std::string> ids;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    chomp(line);
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 7)
      throw DataError("station meta: expected 7 fields at line " + std::to_string(line_no));
    StationMeta m;
    m.id = fields[0];
    m.name = fields[1];
    m.latitude = parse_double(fields[2], "station meta", line_no);
    m.longitude = parse_double(fields[3], "station meta", line_no);
    m.elevation_m = parse_double(fields[4], "station meta", line_no);
    m.dist_metro_km = parse_double(fields[5], "station meta", line_no);
    m.dist_train_km = parse_double(fields[6], "station meta", line_no);
    if (!ids.insert(m.id).second)
      throw DataError("station meta: duplicate id '" + m.id + "'");
    if (m.latitude < -90.0 || m.latitude > 90.0)
      throw DataError("station meta: latitude out of range for '" + m.id + "'");
    if (m.longitude < -180.0 || m.longitude > 180.0)
      throw DataError("station meta: longitude out of range for '" + m.id + "'");
    if (m.elevation_m < 0.0 || m.dist_metro_km < 0.0 || m.dist_train_km < 0.0)
      throw DataError("station meta: negative elevation or distance for '" + m.id + "'");
    out.push_back(std::move(m));
  }
  return out;
}

void attach_station_meta(FunctionalDataset& dataset, const std::vector<StationMeta>& meta) {
  for (auto& station : dataset.stations) {
    const auto it = std::find_if(meta.begin(), meta.end(),
                                 [&](const StationMeta& m) { return m.id == station.id; });
    if (it == meta.end())
      throw DataError("station meta: no metadata for station '" + station.id + "'");
    station = *it;
  }
}

DailyWeather ingest_weather(const std::string& path, const std::vector<Date>& days) {
  std::ifstream in(path);
  if (!in) throw DataError("weather: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw DataError("weather: empty file");
  chomp(line);
  if (line != "timestamp,temperature_C,cloud_okta,wind_ms,precip_mm")
    throw DataError("weather: unexpected header '" + line + "'");

  std::map<int, std::array<double, 4>> sums;  // temp, cloud, wind, precip
  std::map<int, long> counts;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    chomp(line);
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 5)
      throw DataError("weather: expected 5 fields at line " + std::to_string(line_no));
    const Timestamp ts = parse_timestamp(fields[0], line_no);
    const int serial = static_cast<int>(ts.day.time_since_epoch().count());
    auto& s = sums[serial];
    s[0] += parse_double(fields[1], "weather", line_no);
    s[1] += parse_double(fields[2], "weather", line_no);
    s[2] += parse_double(fields[3], "weather", line_no);
    s[3] += parse_double(fields[4], "weather", line_no);
    ++counts[serial];
  }

  DailyWeather w;
  const int T = static_cast<int>(days.size());
  w.temperature_c.resize(T);
  w.cloud_okta.resize(T);
  w.wind_ms.resize(T);
  w.precip_mm.resize(T);
  std::vector<std::string> missing;
  for (int t = 0; t < T; ++t) {
    const int serial = static_cast<int>(days[t].time_since_epoch().count());
    const auto it = counts.find(serial);
    if (it == counts.end() || it->second == 0) {
      missing.push_back(format_date(days[t]));
      continue;
    }
    const auto& s = sums[serial];
    const double c = static_cast<double>(it->second);
    w.temperature_c[t] = s[0] / c;
    w.cloud_okta[t] = s[1] / c;
    w.wind_ms[t] = s[2] / c;
    w.precip_mm[t] = s[3];  // daily total
  }
  if (!missing.empty()) {
    std::string msg = "weather: no records for dates";
    for (const auto& d : missing) msg += " " + d;
    throw DataError(msg);
  }
  return w;
}

int CovariateSet::index(const std::string& name) const {
  for (int i = 0; i < count(); ++i)
    if (names[i] == name) return i;
  return -1;
}

void CovariateSet::add_station_constant(const std::string& name, const Vector& per_station,
                                        int T) {
  Matrix table(per_station.size(), T);
  table.colwise() = per_station;
  add_table(name, std::move(table));
}

void CovariateSet::add_day_constant(const std::string& name, const Vector& per_day, int n) {
  Matrix table(n, per_day.size());
  table.rowwise() = per_day.transpose();
  add_table(name, std::move(table));
}

void CovariateSet::add_table(const std::string& name, Matrix table) {
  if (!table.allFinite()) throw DataError("covariate '" + name + "': missing entries");
  if (!values.empty() &&
      (values.front().rows() != table.rows() || values.front().cols() != table.cols()))
    throw DataError("covariate '" + name + "': shape mismatch");
  names.push_back(name);
  values.push_back(std::move(table));
}

CovariateSet CovariateSet::subset_stations(const std::vector<int>& station_indices) const {
  CovariateSet out;
  out.names = names;
  for (const Matrix& table : values) {
    Matrix sub(station_indices.size(), table.cols());
    for (std::size_t r = 0; r < station_indices.size(); ++r)
      sub.row(r) = table.row(station_indices[r]);
    out.values.push_back(std::move(sub));
  }
  return out;
}

CovariateSet make_standard_covariates(const FunctionalDataset& dataset,
                                      const DailyWeather& weather) {
  const int n = dataset.n_stations();
  const int T = dataset.n_days();
  CovariateSet covs;

  Vector saturday(T), sunday(T);
  for (int t = 0; t < T; ++t) {
    const int wd = weekday_index(dataset.days[t]);
    saturday[t] = wd == 5 ? 1.0 : 0.0;
    sunday[t] = wd == 6 ? 1.0 : 0.0;
  }
  covs.add_day_constant("Saturday", saturday, n);
  covs.add_day_constant("Sunday", sunday, n);
  covs.add_day_constant("Temperature", weather.temperature_c, n);
  covs.add_day_constant("Cloud", weather.cloud_okta, n);
  covs.add_day_constant("Wind", weather.wind_ms, n);
  covs.add_day_constant("Precipitation", weather.precip_mm, n);

  Vector elevation(n), metro(n), train(n);
  for (int i = 0; i < n; ++i) {
    elevation[i] = dataset.stations[i].elevation_m;
    metro[i] = dataset.stations[i].dist_metro_km;
    train[i] = dataset.stations[i].dist_train_km;
  }
  covs.add_station_constant("Elevation", elevation, T);
  covs.add_station_constant("DistMetro", metro, T);
  covs.add_station_constant("DistTrain", train, T);
  return covs;
}

void export_hire_csv(const FunctionalDataset& dataset, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("export: cannot open " + path);
  out << "station_id,timestamp,bike_count\n";
  char buf[64];
  for (int i = 0; i < dataset.n_stations(); ++i) {
    for (int t = 0; t < dataset.n_days(); ++t) {
      for (int j = 0; j < dataset.n_grid(); ++j) {
        if (!dataset.observed[i](t, j)) continue;
        const long total_s = std::lround(dataset.grid.points[j] * 3600.0);
        std::snprintf(buf, sizeof(buf), "T%02ld:%02ld:%02ld", total_s / 3600,
                      (total_s % 3600) / 60, total_s % 60);
        out << dataset.stations[i].id << ',' << format_date(dataset.days[t]) << buf << ',';
        std::snprintf(buf, sizeof(buf), "%.17g", dataset.values[i](t, j));
        out << buf << '\n';
      }
    }
  }
}

}  // namespace fhdgm
