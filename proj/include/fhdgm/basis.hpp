#ifndef FHDGM_BASIS_HPP
#define FHDGM_BASIS_HPP

#include <span>
#include <vector>

#include "fhdgm/types.hpp"

namespace fhdgm {

enum class BasisFamily { BSpline, Fourier };

// Basis system over the within-day domain [break_points.front(),
// break_points.back()], normally [0, 24] hours.
//
// BSpline: `order` is the polynomial order (order 4 = cubic) and the
// dimension is (#break points - 2) + order.  Fourier: `dimension` must be odd
// (constant plus sine/cosine pairs on the full domain period) and
// break_points only delimit the domain.
struct BasisSpec {
  BasisFamily family = BasisFamily::BSpline;
  int order = 4;
  std::vector<double> break_points = {0.0, 24.0};
  int fourier_dimension = 0;

  int dimension() const;
  double domain_start() const { return break_points.front(); }
  double domain_end() const { return break_points.back(); }

  // Clamped knot vector: boundary break points repeated `order` times.
  std::vector<double> knots() const;
};

// Evaluated basis system at a set of abscissae.
struct BasisMatrix {
  std::vector<double> abscissae;
  Matrix values;  // |abscissae| x dimension
};

// Validates the spec and fixes derived quantities; throws DataError on an
// ill-formed spec (fewer than 2 break points, non-increasing break points,
// order < 1, even Fourier dimension).
BasisSpec make_basis(BasisSpec spec);

// Cox-de Boor evaluation for B-splines, trigonometric evaluation for
// Fourier.  Abscissae must lie inside the closed domain.
BasisMatrix evaluate_basis(const BasisSpec& spec, std::span<const double> abscissae);

// phi(h)^T c for every abscissa.
Vector expand_function(const BasisSpec& spec, const Vector& coefficients,
                       std::span<const double> abscissae);

namespace detail {

// One row of the B-spline design: the `order` basis functions supported on
// the knot span containing h.  Returns the index of the first nonzero
// column; `row` receives `order` weights.  Templated on the scalar so the
// recursion can be reused at other precisions.
template <typename Scalar>
int bspline_row(const std::vector<Scalar>& knots, int order, Scalar h,
                Scalar* row) {
  const int n_knots = static_cast<int>(knots.size());
  const int dim = n_knots - order;
  // Knot span index: largest i with knots[i] <= h < knots[i+1]; the right
  // domain edge belongs to the last nonempty span.
  int span = order - 1;
  {
    int lo = order - 1, hi = dim;  // valid spans live in [order-1, dim-1]
    if (h >= knots[dim]) {
      span = dim - 1;
      while (span > order - 1 && knots[span] == knots[span + 1]) --span;
    } else {
      while (lo + 1 < hi) {
        const int mid = (lo + hi) / 2;
        if (knots[mid] <= h)
          lo = mid;
        else
          hi = mid;
      }
      span = lo;
    }
  }

  // de Boor triangle over the active functions.
  row[0] = Scalar(1);
  std::vector<Scalar> left(order), right(order);
  for (int j = 1; j < order; ++j) {
    left[j] = h - knots[span + 1 - j];
    right[j] = knots[span + j] - h;
    Scalar saved(0);
    for (int r = 0; r < j; ++r) {
      const Scalar denom = right[r + 1] + left[j - r];
      const Scalar tmp = denom > Scalar(0) ? row[r] / denom : Scalar(0);
      row[r] = saved + right[r + 1] * tmp;
      saved = left[j - r] * tmp;
    }
    row[j] = saved;
  }
  return span - (order - 1);
}

}  // namespace detail

}  // namespace fhdgm

#endif  // FHDGM_BASIS_HPP
