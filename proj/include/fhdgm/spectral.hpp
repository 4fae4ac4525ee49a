#ifndef FHDGM_SPECTRAL_HPP
#define FHDGM_SPECTRAL_HPP

#include <vector>

#include "fhdgm/types.hpp"

namespace fhdgm {

// Magnitude spectrum of one station's concatenated series at the positive
// Fourier frequencies, in cycles per day.
struct Periodogram {
  Vector frequencies;
  Vector magnitudes;      // |DFT coefficient|
  double gap_fraction = 0.0;
  bool gap_flagged = false;  // more than 20% of the series was filled
};

// Linear interpolation across NaN gaps; leading/trailing gaps take the
// nearest observed value.  Throws DataError if everything is missing.
Vector fill_gaps_linear(const Vector& series);

// DFT magnitude spectrum.  `sample_spacing_hours` converts bin indices to
// cycles/day.  The series may contain NaN gaps, which are filled first.
Periodogram periodogram(const Vector& series, double sample_spacing_hours);

// Share of each frequency in the total magnitude over all stations, in
// percent; sums to 100 exactly.  All periodograms must share one grid.
Vector relative_magnitude(const std::vector<Periodogram>& per_station);

// Functional boxplot statistics from modified band depth (2-bands).
struct FunctionalBoxplotStats {
  Vector depths;            // per curve
  int median_index = 0;
  Vector median;            // deepest curve
  Matrix central;           // 2 x q: lower/upper envelope of the deepest 50%
  Matrix whiskers;          // 2 x q: central region inflated by 1.5
  std::vector<int> outlier_indices;  // curves exiting the whisker envelope
};

// Curves as rows on a common grid; needs at least 3.
FunctionalBoxplotStats functional_boxplot(const Matrix& curves);

}  // namespace fhdgm

#endif  // FHDGM_SPECTRAL_HPP
