#ifndef FHDGM_DATA_HPP
#define FHDGM_DATA_HPP

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "fhdgm/types.hpp"

namespace fhdgm {

using Date = std::chrono::sys_days;

Date parse_date(const std::string& iso);           // YYYY-MM-DD
std::string format_date(Date d);
int weekday_index(Date d);                         // 0 = Monday .. 6 = Sunday

// Within-day evaluation grid on [domain_start, domain_end) hours.
struct FunctionalGrid {
  double domain_start = 0.0;
  double domain_end = 24.0;
  std::vector<double> points;

  // q evenly spaced points starting at 0; q = 288 is the five-minute grid.
  static FunctionalGrid uniform(int q = 288);

  int size() const { return static_cast<int>(points.size()); }
  void validate() const;

  // Index of the grid point within `max_gap_hours` of h, or -1.
  int nearest_slot(double h, double max_gap_hours) const;
};

struct StationMeta {
  std::string id;
  std::string name;
  double latitude = 0.0;
  double longitude = 0.0;
  double elevation_m = 0.0;
  double dist_metro_km = 0.0;
  double dist_train_km = 0.0;
};

// Stations x days x grid tensor of counts with a missingness mask.  A value
// is meaningful only where observed; unobserved cells hold NaN.
struct FunctionalDataset {
  std::vector<StationMeta> stations;
  std::vector<Date> days;  // contiguous calendar days
  FunctionalGrid grid;
  std::vector<Matrix> values;     // per station: T x q
  std::vector<BoolArray> observed;  // per station: T x q

  int n_stations() const { return static_cast<int>(stations.size()); }
  int n_days() const { return static_cast<int>(days.size()); }
  int n_grid() const { return grid.size(); }

  long observed_count() const;
  void validate() const;

  // Station subset (duplicates allowed; duplicated stations get a distinct
  // "#k" id suffix so they act as separate observational units).
  FunctionalDataset subset(const std::vector<int>& station_indices) const;

  Vector station_latitudes() const;
  Vector station_longitudes() const;

  int station_index(const std::string& id) const;  // -1 if absent
};

struct IngestStats {
  long accepted = 0;
  long rejected_misaligned = 0;  // no grid slot within tolerance
  long rejected_duplicate = 0;   // slot already filled
};

struct IngestResult {
  FunctionalDataset dataset;
  IngestStats stats;
};

// CSV `station_id,timestamp,bike_count` with ISO-8601 timestamps.  One
// functional observation per station per calendar day between the first and
// last date seen (or the explicit range).  Slots with no record stay
// unobserved; nothing is imputed here.  Records aligning to no grid slot
// within 2.5 minutes are rejected and counted.
IngestResult ingest_hire_data(const std::string& path, const FunctionalGrid& grid,
                              std::optional<Date> first_day = std::nullopt,
                              std::optional<Date> last_day = std::nullopt,
                              double utc_offset_hours = 0.0);

// CSV `id,name,lat,lon,elevation_m,dist_metro_km,dist_train_km`.
std::vector<StationMeta> ingest_station_meta(const std::string& path);

// Joins metadata onto a dataset built from hire records; every station in
// the dataset must be present.
void attach_station_meta(FunctionalDataset& dataset, const std::vector<StationMeta>& meta);

// Day-level meteorological covariates aggregated from sub-daily records:
// means for temperature/cloud/wind, daily sum for precipitation.
struct DailyWeather {
  Vector temperature_c;
  Vector cloud_okta;
  Vector wind_ms;
  Vector precip_mm;
};

// CSV `timestamp,temperature_C,cloud_okta,wind_ms,precip_mm`.  Every day in
// `days` must have at least one record.
DailyWeather ingest_weather(const std::string& path, const std::vector<Date>& days);

// Covariate pool normalized to one n x T table per covariate.
struct CovariateSet {
  std::vector<std::string> names;
  std::vector<Matrix> values;  // each n x T

  int count() const { return static_cast<int>(names.size()); }
  int index(const std::string& name) const;  // -1 if absent

  void add_station_constant(const std::string& name, const Vector& per_station, int T);
  void add_day_constant(const std::string& name, const Vector& per_day, int n);
  void add_table(const std::string& name, Matrix table);

  CovariateSet subset_stations(const std::vector<int>& station_indices) const;
};

// The standard nine-covariate pool: Saturday, Sunday, temperature, cloud,
// wind, precipitation, elevation, dist_metro, dist_train.
CovariateSet make_standard_covariates(const FunctionalDataset& dataset,
                                      const DailyWeather& weather);

// Mirror of the ingestion format; observed cells only, deterministic order.
void export_hire_csv(const FunctionalDataset& dataset, const std::string& path);

}  // namespace fhdgm

#endif  // FHDGM_DATA_HPP
