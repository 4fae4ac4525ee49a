#include "fhdgm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include <unsupported/Eigen/FFT>

namespace fhdgm {

Vector fill_gaps_linear(const Vector& series) {
  const Eigen::Index n = series.size();
  Vector filled = series;
  Eigen::Index first = -1, last = -1;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::isfinite(series[i])) {
      if (first < 0) first = i;
      last = i;
    }
  }
  if (first < 0) throw DataError("periodogram: series is entirely missing");
  for (Eigen::Index i = 0; i < first; ++i) filled[i] = series[first];
  for (Eigen::Index i = last + 1; i < n; ++i) filled[i] = series[last];

  Eigen::Index i = first;
  while (i <= last) {
    if (std::isfinite(filled[i])) {
      ++i;
      continue;
    }
    Eigen::Index j = i;
    while (!std::isfinite(filled[j])) ++j;  // j <= last by construction
    const double left = filled[i - 1];
    const double right = filled[j];
    const double span = static_cast<double>(j - (i - 1));
    for (Eigen::Index k = i; k < j; ++k)
      filled[k] = left + (right - left) * static_cast<double>(k - (i - 1)) / span;
    i = j;
  }
  return filled;
}

Periodogram periodogram(const Vector& series, double sample_spacing_hours) {
  if (series.size() < 2) throw DataError("periodogram: series too short");
  if (!(sample_spacing_hours > 0.0)) throw DataError("periodogram: invalid sample spacing");

  long missing = 0;
  for (Eigen::Index i = 0; i < series.size(); ++i)
    if (!std::isfinite(series[i])) ++missing;

  Periodogram out;
  out.gap_fraction = static_cast<double>(missing) / static_cast<double>(series.size());
  out.gap_flagged = out.gap_fraction > 0.20;

  const Vector filled = fill_gaps_linear(series);
  std::vector<double> x(filled.data(), filled.data() + filled.size());
  std::vector<std::complex<double>> spectrum;
  Eigen::FFT<double> fft;
  fft.fwd(spectrum, x);

  const long n = static_cast<long>(x.size());
  const long n_freq = n / 2;
  const double record_days = static_cast<double>(n) * sample_spacing_hours / 24.0;
  out.frequencies.resize(n_freq);
  out.magnitudes.resize(n_freq);
  for (long r = 1; r <= n_freq; ++r) {
    out.frequencies[r - 1] = static_cast<double>(r) / record_days;  // cycles/day
    out.magnitudes[r - 1] = std::abs(spectrum[static_cast<std::size_t>(r)]);
  }
  return out;
}

Vector relative_magnitude(const std::vector<Periodogram>& per_station) {
  if (per_station.empty()) throw DataError("relative magnitude: no periodograms");
  const Vector& freq = per_station.front().frequencies;
  for (const Periodogram& p : per_station) {
    if (p.frequencies.size() != freq.size() || (p.frequencies - freq).cwiseAbs().maxCoeff() > 0.0)
      throw DataError("relative magnitude: frequency grids differ");
  }
  Vector sum = Vector::Zero(freq.size());
  for (const Periodogram& p : per_station) sum += p.magnitudes;
  const double total = sum.sum();
  if (!(total > 0.0)) throw DataError("relative magnitude: zero total signal");
  return 100.0 * sum / total;
}

FunctionalBoxplotStats functional_boxplot(const Matrix& curves) {
  const int m = static_cast<int>(curves.rows());
  const int q = static_cast<int>(curves.cols());
  if (m < 3) throw DataError("functional boxplot: need at least 3 curves");
  if (!curves.allFinite()) throw DataError("functional boxplot: curves contain NaN");

  // Modified band depth with 2-bands via per-column ranks: a pair fails to
  // contain y only when both members are strictly on one side.
  Vector depth = Vector::Zero(m);
  const double pair_count = 0.5 * m * (m - 1);
  std::vector<int> order(m);
  std::vector<double> column(m);
  for (int j = 0; j < q; ++j) {
    for (int i = 0; i < m; ++i) column[i] = curves(i, j);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return column[a] < column[b]; });
    int pos = 0;
    while (pos < m) {
      int tie_end = pos;
      while (tie_end + 1 < m && column[order[tie_end + 1]] == column[order[pos]]) ++tie_end;
      const double below = pos;
      const double above = m - 1 - tie_end;
      const double contained = pair_count - 0.5 * below * (below - 1) - 0.5 * above * (above - 1);
      for (int r = pos; r <= tie_end; ++r) depth[order[r]] += contained;
      pos = tie_end + 1;
    }
  }
  depth /= pair_count * q;

  FunctionalBoxplotStats stats;
  stats.depths = depth;

  std::vector<int> by_depth(m);
  std::iota(by_depth.begin(), by_depth.end(), 0);
  std::stable_sort(by_depth.begin(), by_depth.end(),
                   [&](int a, int b) { return depth[a] > depth[b]; });
  stats.median_index = by_depth.front();
  stats.median = curves.row(stats.median_index);

  const int half = (m + 1) / 2;
  stats.central = Matrix(2, q);
  for (int j = 0; j < q; ++j) {
    double lo = curves(by_depth[0], j), hi = lo;
    for (int r = 1; r < half; ++r) {
      lo = std::min(lo, curves(by_depth[r], j));
      hi = std::max(hi, curves(by_depth[r], j));
    }
    stats.central(0, j) = lo;
    stats.central(1, j) = hi;
  }

  stats.whiskers = Matrix(2, q);
  for (int j = 0; j < q; ++j) {
    const double range = stats.central(1, j) - stats.central(0, j);
    stats.whiskers(0, j) = stats.central(0, j) - 1.5 * range;
    stats.whiskers(1, j) = stats.central(1, j) + 1.5 * range;
  }

  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < q; ++j) {
      if (curves(i, j) < stats.whiskers(0, j) || curves(i, j) > stats.whiskers(1, j)) {
        stats.outlier_indices.push_back(i);
        break;
      }
    }
  }
  return stats;
}

}  // namespace fhdgm
