#ifndef SPRINGOPT_BOUNDS_HPP
#define SPRINGOPT_BOUNDS_HPP

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "springopt/evaluate.hpp"

namespace springopt {

using FullPoint = std::array<double, 4>;
/// Reduced point; second coordinate unused when reduced_dim == 1.
using ReducedPoint = std::array<double, 2>;

/// One subcase row of the per-case bound tables: the inequality region in
/// which a fixed set of springs turns plastic first, together with reduced
/// variables x, bound functions Ftilde >= F_R and Ctilde <= C valid on that
/// region, and (where available) a cost-preserving lift back to full c.
struct SubcaseBound {
    int case_id;
    std::string label;  // "9.1", "2", ...
    int reduced_dim;    // 1 or 2

    /// Subcase inequalities on the full vector (positivity is implied).
    std::function<bool(const FullPoint&)> in_domain;
    /// Map full c to the reduced variables.
    std::function<ReducedPoint(const FullPoint&)> project;
    /// Upper bound on F_R in reduced variables.
    std::function<double(const ReducedPoint&, const ConstraintParams&)> f_tilde_r;
    /// Lower bound on C in reduced variables.
    std::function<double(const ReducedPoint&)> c_tilde;
    /// Exact response force of this subcase, in reduced variables.
    std::function<double(const ReducedPoint&)> strength;
    /// Exact response force of this subcase on the full vector.
    std::function<double(const FullPoint&)> response;
    /// Extra reduced-domain restriction (e.g. x2 < 2*x1 for 9.1); may be null.
    std::function<bool(const ReducedPoint&)> guard;
    /// Reduced point to full vector with C(lift(x)) == Ctilde(x); null if absent.
    std::function<FullPoint(const ReducedPoint&)> lift;

    /// True when the strength constraint involves the first reduced variable
    /// only, enabling the active-boundary bisection solve.
    bool strength_first_var_only = false;

    bool guard_ok(const ReducedPoint& x) const { return !guard || guard(x); }
};

/// All 15 subcases: 9.1, 9.2, 1.1, 1.2, 2, 3, 4, 5, 6.1, 6.2, 7.1, 7.2, 8,
/// 10.1, 10.2. Mirrored subcases (1.2, 6.2, 7.2, 10.2 and the c2 > c3 side
/// of case 9) are obtained by the symmetry of their base entry.
const std::vector<SubcaseBound>& registry();

/// Lookup by label; throws std::domain_error if unknown.
const SubcaseBound& find_subcase(const std::string& label);

struct DominanceReport {
    long samples_drawn = 0;
    long accepted = 0;  // samples inside the subcase domain
    std::vector<FullPoint> violations;
    double max_fr_gap = 0.0;    // max observed Ftilde - F_R
    double max_cost_gap = 0.0;  // max observed C - Ctilde
};

/// Draw `samples` uniform points in (1e-6, box]^4 (deterministic in `seed`,
/// independent of chunking), keep those inside the subcase domain and check
/// Ftilde(project(c)) >= F_R(c) and Ctilde(project(c)) <= C(c). Equality is
/// accepted; violations beyond rounding are returned, not thrown.
DominanceReport check_dominance(const SubcaseBound& b, long samples,
                                unsigned long long seed, double box,
                                const ConstraintParams& p = {});

/// Embed a reduced point into the full space; throws std::domain_error if the
/// subcase has no lift or x falls outside the lift's domain.
FullPoint lift_point(const SubcaseBound& b, const ReducedPoint& x);

/// True iff no sampled reduced-feasible point has Ctilde <= c_star. Combined
/// with dominance this certifies (statistically) that the full problem's
/// minimum exceeds c_star.
bool check_proposition2(const SubcaseBound& b, double c_star, long samples,
                        unsigned long long seed, double box,
                        const ConstraintParams& p = {});

}  // namespace springopt

#endif
