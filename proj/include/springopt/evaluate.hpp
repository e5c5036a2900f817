#ifndef SPRINGOPT_EVALUATE_HPP
#define SPRINGOPT_EVALUATE_HPP

#include <vector>

#include "springopt/topology.hpp"

namespace springopt {

/// Weights and thresholds of the design problem:
/// F >= f_min, F_R = alpha*F + beta*R >= fr_min, C -> min.
struct ConstraintParams {
    double alpha = 0.2;
    double beta = 0.1;
    double f_min = 0.75;
    double fr_min = 0.5;
};

struct Evaluation {
    double F;    // response force
    double R;    // equivalent resistance
    double FR;   // alpha*F + beta*R
    double C;    // fabrication cost, sum of limits
    bool feasible_F;
    bool feasible_FR;
};

/// Checks size(c) == spring_count(t) and every c_i > 0; throws std::domain_error.
void validate_limits(const SPTree& t, const std::vector<double>& c);

/// Equivalent resistance with per-spring resistance 1/c_i:
/// series sums resistances, parallel sums conductances.
double resistance(const SPTree& t, const std::vector<double>& c);

/// Maximal force the network develops under displacement-controlled loading:
/// leaf -> c_i, series -> min over children, parallel -> sum over children.
double response_force(const SPTree& t, const std::vector<double>& c);

Evaluation evaluate(const SPTree& t, const std::vector<double>& c,
                    const ConstraintParams& p);

}  // namespace springopt

#endif
