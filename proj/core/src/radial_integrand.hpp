#pragma once

// log of the radial volume-weighted integrand exp(-phi(r)) sn_kappa(r)^(m-1)
// and its tail cutoff search. Shared by the integrability check and the
// distribution tables.

#include <optional>

#include "radial/profiles.hpp"

namespace radial::detail {

struct RadialIntegrand {
  const RadialProfile* profile;
  double kappa;
  int m;

  double log_value(double r) const;
};

/// Smallest radius R (on a geometric grid) past which the integrand has
/// started decaying and the extrapolated tail mass is below tail_rel of the
/// mass accumulated so far. nullopt if no such R <= r_limit.
std::optional<double> find_tail_cutoff(const RadialIntegrand& g, double r_limit,
                                       double tail_rel = 1e-13);

}  // namespace radial::detail
