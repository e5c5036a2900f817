#ifndef SPRINGOPT_SIMULATE_HPP
#define SPRINGOPT_SIMULATE_HPP

#include <vector>

#include "springopt/evaluate.hpp"
#include "springopt/topology.hpp"

namespace springopt {

struct LoadingHistory {
    std::vector<double> elongation;  // total elongation after each step
    std::vector<double> force;       // force at the loaded terminal after each step
    double max_force = 0.0;
};

/// Displacement-controlled loading of a network of elastic-perfectly-plastic
/// springs (f_i = k_i*(e_i - p_i), |f_i| <= c_i). The total elongation is
/// ramped from 0 to `ramp` in `steps` equal increments; each increment is
/// distributed through the tree by tangent stiffness (series: harmonic
/// combine, parallel: sum; a spring at its limit contributes zero stiffness)
/// with the plastic transitions inside an increment resolved exactly.
///
/// For the plateau to be reached, `ramp` should exceed 2 * sum(c_i / k_i).
LoadingHistory simulate_loading(const SPTree& t, const std::vector<double>& c,
                                const std::vector<double>& k, double ramp,
                                int steps);

}  // namespace springopt

#endif
