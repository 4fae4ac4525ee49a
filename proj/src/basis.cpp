#include "fhdgm/basis.hpp"

#include <cmath>

namespace fhdgm {

int BasisSpec::dimension() const {
  if (family == BasisFamily::Fourier) return fourier_dimension;
  return static_cast<int>(break_points.size()) - 2 + order;
}

std::vector<double> BasisSpec::knots() const {
  std::vector<double> k;
  k.reserve(break_points.size() + 2 * (order - 1));
  for (int i = 0; i < order; ++i) k.push_back(break_points.front());
  for (std::size_t i = 1; i + 1 < break_points.size(); ++i) k.push_back(break_points[i]);
  for (int i = 0; i < order; ++i) k.push_back(break_points.back());
  return k;
}

BasisSpec make_basis(BasisSpec spec) {
  if (spec.break_points.size() < 2)
    throw DataError("basis: need at least 2 break points");
  for (std::size_t i = 1; i < spec.break_points.size(); ++i)
    if (!(spec.break_points[i] > spec.break_points[i - 1]))
      throw DataError("basis: break points must be strictly increasing");
  if (spec.family == BasisFamily::BSpline) {
    if (spec.order < 1) throw DataError("basis: order must be >= 1");
  } else {
    if (spec.fourier_dimension < 1 || spec.fourier_dimension % 2 == 0)
      throw DataError("basis: fourier dimension must be a positive odd number");
  }
  return spec;
}

BasisMatrix evaluate_basis(const BasisSpec& spec, std::span<const double> abscissae) {
  const int dim = spec.dimension();
  BasisMatrix out;
  out.abscissae.assign(abscissae.begin(), abscissae.end());
  out.values = Matrix::Zero(static_cast<Eigen::Index>(abscissae.size()), dim);

  const double lo = spec.domain_start();
  const double hi = spec.domain_end();
  for (std::size_t r = 0; r < abscissae.size(); ++r) {
    const double h = abscissae[r];
    if (h < lo || h > hi)
      throw DataError("basis: abscissa " + std::to_string(h) + " outside domain [" +
                      std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }

  if (spec.family == BasisFamily::BSpline) {
    const std::vector<double> knots = spec.knots();
    std::vector<double> row(spec.order);
    for (std::size_t r = 0; r < abscissae.size(); ++r) {
      const int first = detail::bspline_row(knots, spec.order, abscissae[r], row.data());
      for (int j = 0; j < spec.order; ++j) out.values(static_cast<Eigen::Index>(r), first + j) = row[j];
    }
  } else {
    const double period = hi - lo;
    const double base = 2.0 * M_PI / period;
    for (std::size_t r = 0; r < abscissae.size(); ++r) {
      const double h = abscissae[r] - lo;
      out.values(static_cast<Eigen::Index>(r), 0) = 1.0;
      for (int harmonic = 1; 2 * harmonic < dim + 1; ++harmonic) {
        if (2 * harmonic - 1 < dim)
          out.values(static_cast<Eigen::Index>(r), 2 * harmonic - 1) = std::sin(base * harmonic * h);
        if (2 * harmonic < dim)
          out.values(static_cast<Eigen::Index>(r), 2 * harmonic) = std::cos(base * harmonic * h);
      }
    }
  }
  return out;
}

Vector expand_function(const BasisSpec& spec, const Vector& coefficients,
                       std::span<const double> abscissae) {
  if (coefficients.size() != spec.dimension())
    throw DataError("basis: coefficient length " + std::to_string(coefficients.size()) +
                    " does not match dimension " + std::to_string(spec.dimension()));
  return evaluate_basis(spec, abscissae).values * coefficients;
}

}  // namespace fhdgm
