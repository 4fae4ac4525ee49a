#ifndef FHDGM_CLUSTERING_HPP
#define FHDGM_CLUSTERING_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "fhdgm/data.hpp"
#include "fhdgm/types.hpp"

namespace fhdgm {

// Two-cluster structure from per-weekday k-means on median daily curves.
// Cluster index 0 is canonically the centre with the higher midday value.
struct ClusterResult {
  std::array<Matrix, 7> centres;              // 2 x q per weekday (row = cluster)
  std::array<std::vector<int>, 7> labels;     // per weekday: n entries in {0, 1, -1=no data}
  std::vector<std::array<int, 2>> assignment_counts;  // per station
  std::vector<int> majority;                  // per station: 0 or 1

  // Fraction of stations whose majority label is each cluster.
  std::array<double, 2> shares() const;
};

// Pointwise median of a station's observed curves on the given weekday
// (0 = Monday).  Grid cells with no observation stay NaN.  Throws DataError
// when the station has no observed data on that weekday.
Vector median_curve(const FunctionalDataset& dataset, int station, int weekday);

// 1 - Pearson correlation, in [0, 2].  NaN cells are ignored pairwise; the
// overlap must contain at least 2 points and both curves must be
// non-constant on it.
double correlation_distance(const Vector& a, const Vector& b);

struct KmeansResult {
  std::vector<int> labels;
  Matrix centres;        // k x q
  double total_distance; // within-cluster correlation distance
};

// Lloyd iterations under correlation distance with centres as pointwise
// means; best of `restarts` seeded initializations.  For k = 2 the labels
// are canonicalized so cluster 0 has the higher centre value at midday.
KmeansResult kmeans_curves(const Matrix& curves, int k, std::uint64_t seed,
                           int restarts = 10, const std::vector<double>* abscissae = nullptr);

// Seven per-weekday clustering runs plus per-station majority labels.
// Ties in the assignment counts go to cluster 1 (the larger one).
ClusterResult assign_weekly(const FunctionalDataset& dataset, std::uint64_t seed,
                            int restarts = 10);

}  // namespace fhdgm

#endif  // FHDGM_CLUSTERING_HPP
