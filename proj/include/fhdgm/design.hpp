#ifndef FHDGM_DESIGN_HPP
#define FHDGM_DESIGN_HPP

#include <string>
#include <vector>

#include "fhdgm/data.hpp"
#include "fhdgm/types.hpp"

namespace fhdgm {

// Fixed-effects model forms.  ClusterInteractions is the two-intercept
// design where every covariate is interacted with the cluster indicators;
// with the standard nine-covariate pool it yields 20 parameter functions.
enum class DesignVariant { InterceptOnly, Additive, ClusterInteractions };

struct FixedEffectsDesign {
  std::vector<std::string> names;
  std::vector<Matrix> columns;  // each n x T

  int count() const { return static_cast<int>(names.size()); }

  Vector row(int station, int day) const {
    Vector x(count());
    for (int l = 0; l < count(); ++l) x[l] = columns[l](station, day);
    return x;
  }

  FixedEffectsDesign subset_stations(const std::vector<int>& station_indices) const;
};

// Per-(station, day) covariate vectors.  `cluster_labels` (0/1 per station)
// are required for ClusterInteractions and ignored otherwise; a station
// without a label is an error.
FixedEffectsDesign build_design(const FunctionalDataset& dataset,
                                const CovariateSet& covariates,
                                const std::vector<int>* cluster_labels,
                                DesignVariant variant);

std::string to_string(DesignVariant variant);
DesignVariant design_variant_from_string(const std::string& name);

}  // namespace fhdgm

#endif  // FHDGM_DESIGN_HPP
