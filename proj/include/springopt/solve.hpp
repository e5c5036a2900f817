#ifndef SPRINGOPT_SOLVE_HPP
#define SPRINGOPT_SOLVE_HPP

#include <optional>
#include <string>
#include <vector>

#include "springopt/bounds.hpp"

namespace springopt {

/// Axis-uniform grid for the 4-D brute-force oracle.
struct GridSpec {
    double lower = 0.02;
    double upper = 2.5;
    double step = 0.02;
};

enum class SolveStatus { Optimal, Infeasible, Dominated };

std::string to_string(SolveStatus s);

struct ReducedSolution {
    bool feasible = false;
    ReducedPoint x{0.0, 0.0};
    double cost = 0.0;
    /// Active-boundary bisection disagreed with the scan; scan result returned.
    bool scan_fallback = false;
    std::vector<std::string> active;  // constraints tight at x (within 10*tol)
};

/// Minimize Ctilde over the reduced box [box_min, box_max]^dim subject to
/// strength(x) >= f_min and Ftilde_R(x) >= fr_min. A coarse scan plus local
/// refinement is authoritative; boundary bisection sharpens the result where
/// the structure allows (strength active + monotone Ftilde boundary).
ReducedSolution solve_reduced(const SubcaseBound& b, const ConstraintParams& p,
                              double tol, double box_min = 1e-3,
                              double box_max = 3.0);

struct SubcaseResult {
    std::string label;
    SolveStatus status = SolveStatus::Infeasible;
    int reduced_dim = 0;
    ReducedPoint x{0.0, 0.0};
    std::optional<FullPoint> lifted;
    double cost = 0.0;
    bool scan_fallback = false;
    std::vector<std::string> active;
};

struct SolveReport {
    std::vector<SubcaseResult> subcases;
    std::string best_label;  // empty when everything is infeasible
    std::optional<FullPoint> best_c;
    double best_cost = 0.0;
};

/// Solve every registry subcase, lift where lifts exist, and pick the global
/// best (ties within 10*tol go to the earlier registry entry).
SolveReport solve_all(const ConstraintParams& p, double tol,
                      double box_min = 1e-3, double box_max = 3.0);

struct BruteResult {
    bool found = false;
    FullPoint best_c{0.0, 0.0, 0.0, 0.0};
    double best_cost = 0.0;
    long feasible_count = 0;
};

/// Exhaustive scan of the full 4-D problem for one canonical case on the
/// grid; ties broken by lexicographically smallest c. Deterministic.
BruteResult brute_force(int case_id, const ConstraintParams& p,
                        const GridSpec& grid);

std::string to_text(const SolveReport& r);
std::string to_csv(const SolveReport& r);

}  // namespace springopt

#endif
