#include "fhdgm/spatial.hpp"

namespace fhdgm {

double correlation(const CovarianceSpec& spec, double distance_m) {
  if (!(spec.range_m > 0.0)) throw DataError("covariance: range must be positive");
  if (distance_m < 0.0) throw DataError("covariance: negative distance");
  if (spec.family == CovFamily::Exponential)
    return exponential_correlation(distance_m, spec.range_m);
  if (!(spec.smoothness > 0.0)) throw DataError("covariance: smoothness must be positive");
  return matern_correlation(distance_m, spec.range_m, spec.smoothness);
}

Matrix distance_matrix(const Vector& latitudes, const Vector& longitudes) {
  const Eigen::Index n = latitudes.size();
  if (longitudes.size() != n) throw DataError("distance_matrix: coordinate size mismatch");
  Matrix d = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double dij =
          great_circle_distance(latitudes[i], longitudes[i], latitudes[j], longitudes[j]);
      d(i, j) = dij;
      d(j, i) = dij;
    }
  }
  return d;
}

Matrix correlation_matrix(const CovarianceSpec& spec, const Matrix& distances) {
  if (distances.rows() != distances.cols())
    throw DataError("correlation_matrix: distance matrix not square");
  const Eigen::Index n = distances.rows();
  Matrix r = Matrix::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double rho = correlation(spec, distances(i, j));
      if (!std::isfinite(rho))
        throw NumericError("correlation_matrix: non-finite correlation entry");
      r(i, j) = rho;
      r(j, i) = rho;
    }
  }
  return r;
}

Eigen::LLT<Matrix> jittered_llt(const Matrix& correlation, double jitter) {
  Matrix m = correlation;
  m.diagonal().array() += jitter;
  Eigen::LLT<Matrix> llt(m);
  if (llt.info() != Eigen::Success) {
    m.diagonal().array() += 1e4 * jitter;
    llt.compute(m);
    if (llt.info() != Eigen::Success)
      throw NumericError("spatial correlation matrix is not positive definite after jitter");
  }
  return llt;
}

std::string to_string(CovFamily family) {
  return family == CovFamily::Exponential ? "exponential" : "matern";
}

CovFamily cov_family_from_string(const std::string& name) {
  if (name == "exponential") return CovFamily::Exponential;
  if (name == "matern") return CovFamily::Matern;
  throw ConfigError("unknown covariance family: " + name);
}

}  // namespace fhdgm
