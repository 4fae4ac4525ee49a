#include "fhdgm/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fhdgm/random.hpp"

namespace fhdgm {

namespace {

double nan_value() { return std::numeric_limits<double>::quiet_NaN(); }

// Pearson correlation over jointly finite entries.
double masked_correlation(const Vector& a, const Vector& b) {
  double sa = 0, sb = 0;
  long count = 0;
  for (Eigen::Index j = 0; j < a.size(); ++j) {
    if (std::isfinite(a[j]) && std::isfinite(b[j])) {
      sa += a[j];
      sb += b[j];
      ++count;
    }
  }
  if (count < 2) throw DataError("correlation distance: fewer than 2 shared points");
  const double ma = sa / count, mb = sb / count;
  double saa = 0, sbb = 0, sab = 0;
  for (Eigen::Index j = 0; j < a.size(); ++j) {
    if (std::isfinite(a[j]) && std::isfinite(b[j])) {
      const double da = a[j] - ma, db = b[j] - mb;
      saa += da * da;
      sbb += db * db;
      sab += da * db;
    }
  }
  if (saa <= 0.0 || sbb <= 0.0)
    throw DataError("correlation distance: constant curve");
  return sab / std::sqrt(saa * sbb);
}

Matrix pointwise_mean(const Matrix& curves, const std::vector<int>& members) {
  Matrix centre = Matrix::Zero(1, curves.cols());
  Vector counts = Vector::Zero(curves.cols());
  for (int m : members) {
    for (Eigen::Index j = 0; j < curves.cols(); ++j) {
      if (std::isfinite(curves(m, j))) {
        centre(0, j) += curves(m, j);
        counts[j] += 1.0;
      }
    }
  }
  for (Eigen::Index j = 0; j < curves.cols(); ++j)
    centre(0, j) = counts[j] > 0 ? centre(0, j) / counts[j] : nan_value();
  return centre;
}

}  // namespace

std::array<double, 2> ClusterResult::shares() const {
  std::array<long, 2> counts{0, 0};
  for (int label : majority) ++counts[label];
  const double n = static_cast<double>(majority.size());
  return {counts[0] / n, counts[1] / n};
}

Vector median_curve(const FunctionalDataset& dataset, int station, int weekday) {
  const int T = dataset.n_days();
  const int q = dataset.n_grid();
  Vector curve = Vector::Constant(q, nan_value());
  bool any = false;
  std::vector<double> column;
  for (int j = 0; j < q; ++j) {
    column.clear();
    for (int t = 0; t < T; ++t) {
      if (weekday_index(dataset.days[t]) != weekday) continue;
      if (dataset.observed[station](t, j)) column.push_back(dataset.values[station](t, j));
    }
    if (column.empty()) continue;
    any = true;
    const std::size_t mid = column.size() / 2;
    std::nth_element(column.begin(), column.begin() + mid, column.end());
    double med = column[mid];
    if (column.size() % 2 == 0) {
      const double lower = *std::max_element(column.begin(), column.begin() + mid);
      med = 0.5 * (med + lower);
    }
    curve[j] = med;
  }
  if (!any)
    throw DataError("median curve: station " + dataset.stations[station].id +
                    " has no data on weekday " + std::to_string(weekday));
  return curve;
}

double correlation_distance(const Vector& a, const Vector& b) {
  if (a.size() != b.size() || a.size() < 2)
    throw DataError("correlation distance: curves must share a length >= 2");
  return 1.0 - masked_correlation(a, b);
}

KmeansResult kmeans_curves(const Matrix& curves, int k, std::uint64_t seed, int restarts,
                           const std::vector<double>* abscissae) {
  const int m = static_cast<int>(curves.rows());
  const int q = static_cast<int>(curves.cols());
  if (m < k) throw DataError("kmeans: fewer curves than clusters");
  if (restarts < 1) restarts = 1;

  const int max_iterations = 100;
  KmeansResult best;
  best.total_distance = std::numeric_limits<double>::infinity();

  for (int attempt = 0; attempt < restarts; ++attempt) {
    RandomStream rng = RandomStream::child(seed, attempt);
    // Distinct initial centres drawn from the curves.
    std::vector<int> order(m);
    for (int i = 0; i < m; ++i) order[i] = i;
    for (int i = m - 1; i > 0; --i)
      std::swap(order[i], order[rng.below(static_cast<std::uint64_t>(i) + 1)]);
    Matrix centres(k, q);
    for (int c = 0; c < k; ++c) centres.row(c) = curves.row(order[c]);

    std::vector<int> labels(m, -1);
    double total = 0.0;
    for (int iteration = 0; iteration < max_iterations; ++iteration) {
      bool changed = false;
      total = 0.0;
      for (int i = 0; i < m; ++i) {
        int nearest = 0;
        double nearest_d = std::numeric_limits<double>::infinity();
        for (int c = 0; c < k; ++c) {
          const double d = correlation_distance(curves.row(i), centres.row(c));
          if (d < nearest_d) {
            nearest_d = d;
            nearest = c;
          }
        }
        if (labels[i] != nearest) {
          labels[i] = nearest;
          changed = true;
        }
        total += nearest_d;
      }

      std::vector<std::vector<int>> members(k);
      for (int i = 0; i < m; ++i) members[labels[i]].push_back(i);
      for (int c = 0; c < k; ++c) {
        if (members[c].empty()) {
          // Reseed an empty cluster from the curve farthest from its centre.
          int farthest = 0;
          double farthest_d = -1.0;
          for (int i = 0; i < m; ++i) {
            const double d = correlation_distance(curves.row(i), centres.row(labels[i]));
            if (d > farthest_d) {
              farthest_d = d;
              farthest = i;
            }
          }
          centres.row(c) = curves.row(farthest);
          changed = true;
        } else {
          centres.row(c) = pointwise_mean(curves, members[c]);
        }
      }
      if (!changed) break;
    }

    if (total < best.total_distance) {
      best.labels = labels;
      best.centres = centres;
      best.total_distance = total;
    }
  }

  if (k == 2) {
    // Cluster 0 = higher midday centre value.
    int midday = q / 2;
    if (abscissae != nullptr) {
      double best_gap = std::numeric_limits<double>::infinity();
      for (int j = 0; j < q; ++j) {
        const double gap = std::abs((*abscissae)[j] - 12.0);
        if (gap < best_gap) {
          best_gap = gap;
          midday = j;
        }
      }
    }
    if (best.centres(0, midday) < best.centres(1, midday)) {
      best.centres.row(0).swap(best.centres.row(1));
      for (int& label : best.labels) label = 1 - label;
    }
  }
  return best;
}

ClusterResult assign_weekly(const FunctionalDataset& dataset, std::uint64_t seed, int restarts) {
  const int n = dataset.n_stations();
  const int q = dataset.n_grid();
  ClusterResult result;
  result.assignment_counts.assign(n, {0, 0});
  result.majority.assign(n, 1);

  for (int weekday = 0; weekday < 7; ++weekday) {
    std::vector<int> with_data;
    Matrix curves(n, q);
    for (int i = 0; i < n; ++i) {
      bool has = false;
      for (int t = 0; t < dataset.n_days() && !has; ++t)
        has = weekday_index(dataset.days[t]) == weekday && dataset.observed[i].row(t).any();
      if (has) {
        curves.row(static_cast<Eigen::Index>(with_data.size())) =
            median_curve(dataset, i, weekday);
        with_data.push_back(i);
      }
    }
    result.labels[weekday].assign(n, -1);
    result.centres[weekday] = Matrix::Zero(2, q);
    if (static_cast<int>(with_data.size()) < 2) continue;

    const Matrix active = curves.topRows(static_cast<Eigen::Index>(with_data.size()));
    const KmeansResult km =
        kmeans_curves(active, 2, seed + static_cast<std::uint64_t>(weekday), restarts,
                      &dataset.grid.points);
    result.centres[weekday] = km.centres;
    for (std::size_t r = 0; r < with_data.size(); ++r) {
      result.labels[weekday][with_data[r]] = km.labels[r];
      ++result.assignment_counts[with_data[r]][km.labels[r]];
    }
  }

  for (int i = 0; i < n; ++i) {
    const auto& counts = result.assignment_counts[i];
    result.majority[i] = counts[0] > counts[1] ? 0 : 1;  // ties to the larger cluster
  }
  return result;
}

}  // namespace fhdgm
