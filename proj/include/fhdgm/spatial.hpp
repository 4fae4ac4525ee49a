#ifndef FHDGM_SPATIAL_HPP
#define FHDGM_SPATIAL_HPP

#include <cmath>
#include <string>

#include "fhdgm/types.hpp"

namespace fhdgm {

inline constexpr double kEarthRadiusMeters = 6371000.0;
inline constexpr double kCorrelationJitter = 1e-8;

enum class CovFamily { Exponential, Matern };

// Isotropic spatial correlation kernel.  `range_m` is the distance scale in
// meters; `smoothness` is the Matern order (0.5 reproduces the exponential).
struct CovarianceSpec {
  CovFamily family = CovFamily::Exponential;
  double range_m = 1000.0;
  double smoothness = 0.5;
};

// Haversine great-circle distance in meters.  Coordinates in degrees.
template <typename Scalar>
Scalar great_circle_distance(Scalar lat_a, Scalar lon_a, Scalar lat_b, Scalar lon_b) {
  const Scalar deg = Scalar(M_PI / 180.0);
  const Scalar dphi = (lat_b - lat_a) * deg / Scalar(2);
  const Scalar dlam = (lon_b - lon_a) * deg / Scalar(2);
  const Scalar s = std::sin(dphi) * std::sin(dphi) +
                   std::cos(lat_a * deg) * std::cos(lat_b * deg) * std::sin(dlam) * std::sin(dlam);
  return Scalar(2) * Scalar(kEarthRadiusMeters) *
         std::asin(std::min(Scalar(1), std::sqrt(s)));
}

template <typename Scalar>
Scalar exponential_correlation(Scalar distance, Scalar range) {
  return std::exp(-distance / range);
}

template <typename Scalar>
Scalar matern_correlation(Scalar distance, Scalar range, Scalar smoothness) {
  if (distance <= Scalar(0)) return Scalar(1);
  const Scalar scaled = std::sqrt(Scalar(2) * smoothness) * distance / range;
  return Scalar(2) * std::pow(scaled / Scalar(2), smoothness) *
         std::cyl_bessel_k(smoothness, scaled) / std::tgamma(smoothness);
}

// Correlation at the given distance, in (0, 1].  Throws DataError on an
// invalid spec or negative distance.
double correlation(const CovarianceSpec& spec, double distance_m);

// n x n great-circle distance matrix from per-station coordinates (degrees).
Matrix distance_matrix(const Vector& latitudes, const Vector& longitudes);

// Elementwise kernel over a distance matrix: unit diagonal, symmetric.
// Factorizations should go through `jittered_llt`.
Matrix correlation_matrix(const CovarianceSpec& spec, const Matrix& distances);

// Cholesky of R + jitter*I.  Throws NumericError if the factorization fails
// even with the jitter.
Eigen::LLT<Matrix> jittered_llt(const Matrix& correlation,
                                double jitter = kCorrelationJitter);

std::string to_string(CovFamily family);
CovFamily cov_family_from_string(const std::string& name);

}  // namespace fhdgm

#endif  // FHDGM_SPATIAL_HPP
