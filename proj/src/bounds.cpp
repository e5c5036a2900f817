#include "springopt/bounds.hpp"

#include <cmath>
#include <random>

#include "springopt/topology.hpp"

namespace springopt {

namespace {

std::vector<SubcaseBound> build_registry() {
    std::vector<SubcaseBound> reg;

    auto add = [&reg](SubcaseBound b) { reg.push_back(std::move(b)); };

    // Case 9: s(1,p(s(2,3),4)), R = 1/c1 + 1/(c4 + 1/(1/c2 + 1/c3)).
    add({9, "9.1", 2,
         [](const FullPoint& c) {
             return c[1] <= c[2] && c[0] <= c[1] + c[3] && c[1] < 2.0 * c[0];
         },
         [](const FullPoint& c) { return ReducedPoint{c[0], c[1]}; },
         [](const ReducedPoint& x, const ConstraintParams& p) {
             return p.alpha * x[0] +
                    p.beta * (1.0 / x[0] + 1.0 / (x[0] - x[1] / 2.0));
         },
         [](const ReducedPoint& x) { return 2.0 * x[0] + x[1]; },
         [](const ReducedPoint& x) { return x[0]; },
         [](const FullPoint& c) { return c[0]; },
         [](const ReducedPoint& x) { return x[1] < 2.0 * x[0]; },
         [](const ReducedPoint& x) {
             // c1 is rebuilt as c2 + c4 so the subcase boundary c1 = c2 + c4
             // holds exactly in floating point (differs from x[0] by <= 1 ulp).
             const double c4 = x[0] - x[1];
             return FullPoint{x[1] + c4, x[1], x[1], c4};
         },
         true});

    add({9, "9.2", 2,
         [](const FullPoint& c) { return c[1] <= c[2] && c[0] >= c[1] + c[3]; },
         [](const FullPoint& c) { return ReducedPoint{c[1], c[3]}; },
         [](const ReducedPoint& x, const ConstraintParams& p) {
             return p.alpha * (x[0] + x[1]) +
                    p.beta * (1.0 / (x[0] + x[1]) + 1.0 / (x[0] / 2.0 + x[1]));
         },
         [](const ReducedPoint& x) { return 3.0 * x[0] + 2.0 * x[1]; },
         [](const ReducedPoint& x) { return x[0] + x[1]; },
         [](const FullPoint& c) { return c[1] + c[3]; },
         nullptr, nullptr, false});

    // Case 1: s(1,p(2,3),4), R = 1/c1 + 1/(c2+c3) + 1/c4.
    add({1, "1.1", 1,
         [](const FullPoint& c) { return c[0] <= c[3] && c[0] <= c[1] + c[2]; },
         [](const FullPoint& c) { return ReducedPoint{c[0], 0.0}; },
         [](const ReducedPoint& x, const ConstraintParams& p) {
             return p.alpha * x[0] + p.beta * 3.0 / x[0];
         },
         [](const ReducedPoint& x) { return 3.0 * x[0]; },
         [](const ReducedPoint& x) { return x[0]; },
         [](const FullPoint& c) { return c[0]; }, nullptr, nullptr, false});

    add({1, "1.2", 1,
         [](const FullPoint& c) { return c[1] + c[2] <= c[0] && c[0] <= c[3]; },
         [](const FullPoint& c) { return ReducedPoint{c[1] + c[2], 0.0}; },
         [](const ReducedPoint& x, const ConstraintParams& p) {
             return p.alpha * x[0] + p.beta * 3.0 / x[0];
         },
         [](const ReducedPoint& x) { return 3.0 * x[0]; },
         [](const ReducedPoint& x) { return x[0]; },
         [](const FullPoint& c) { return c[1] + c[2]; }, nullptr, nullptr, false});

    // Case 2: s(1,2,3,4), R = 1/c1 + 1/c2 + 1/c3 + 1/c4.
    add({2, "2", 1,
         [](const FullPoint& c) {
             return c[0] <= c[1] && c[0] <= c[2] && c[0] <= c[3];
         },
         [](const FullPoint& c) { return ReducedPoint{c[0], 0.0}; },
         [](const ReducedPoint& x, const ConstraintParams& p) {
             return p.alpha * x[0] + p.beta * 4.0 / x[0];
         },
         [](const ReducedPoint& x) { return 4.0 * x[0]; },
         [](const ReducedPoint& x) { return x[0]; },
         [](const FullPoint& c) { return c[0]; }, nullptr, nullptr, false});

    // Case 3: p(s(1,2),s(3,4)).
    add({3, "3", 1,
         [](const FullPoint& c) { return c[0] <= c[1] && c[2] <= c[3]; },
         [](const FullPoint& c) { return ReducedPoint{c[0] + c[2], 0.0}; },
         [](const ReducedPoint& x, const ConstraintParams& p) {
             return p.alpha * x[0] + p.beta * 2.0 / x[0];
         },
         [](const ReducedPoint& x) { return 2.0 * x[0]; },
         [](const ReducedPoint& x) { return x[0]; },
         [](const FullPoint& c) { return c[0] + c[2]; }, nullptr, nullptr, false});

    // Case 4: p(s(1,2,3),4).
    add({4, "4", 2,
         [](const FullPoint& c) { return c[0] <= c[1] && c[0] <= c[2]; },
         [](const FullPoint& c) { return ReducedPoint{c[0], c[3]}; },
         [](const ReducedPoint& x, const ConstraintParams& p) {
             return p.alpha * (x[0] + x[1]) + p.beta / (x[0] / 3.0 + x[1]);
         },
         [](const ReducedPoint& x) { return 3.0 * x[0] + x[1]; },
         [](const ReducedPoint& x) { return x[0] + x[1]; },
         [](const FullPoint& c) { return c[0] + c[3]; }, nullptr, nullptr, false});

    // Case 5: p(s(1,2),3,4).
    add({5, "5", 2,
         [](const FullPoint& c) { return c[0] <= c[1]; },
         [](const FullPoint& c) { return ReducedPoint{c[0], c[2] + c[3]}; },
         [](const ReducedPoint& x, const ConstraintParams& p) {
             return p.alpha * (x[0] + x[1]) + p.beta / (x[0] / 2.0 + x[1]);
         },
         [](const ReducedPoint& x) { return 2.0 * x[0] + x[1]; },
         [](const ReducedPoint& x) { return x[0] + x[1]; },
         [](const FullPoint& c) { return c[0] + c[2] + c[3]; }, nullptr, nullptr,
         false});

    // Case 6: s(1,p(2,3,4)), R = 1/c1 + 1/(c2+c3+c4).
    add({6, "6.1", 1,
         [](const FullPoint& c) { return c[0] <= c[1] + c[2] + c[3]; },
         [](const FullPoint& c) { return ReducedPoint{c[0], 0.0}; },
         [](const ReducedPoint& x, const ConstraintParams& p) {
             return p.alpha * x[0] + p.beta * 2.0 / x[0];
         },
         [](const ReducedPoint& x) { return 2.0 * x[0]; },
         [](const ReducedPoint& x) { return x[0]; },
         [](const FullPoint& c) { return c[0]; }, nullptr, nullptr, false});

    add({6, "6.2", 1,
         [](const FullPoint& c) { return c[1] + c[2] + c[3] <= c[0]; },
         [](const FullPoint& c) { return ReducedPoint{c[1] + c[2] + c[3], 0.0}; },
         [](const ReducedPoint& x, const ConstraintParams& p) {
             return p.alpha * x[0] + p.beta * 2.0 / x[0];
         },
         [](const ReducedPoint& x) { return 2.0 * x[0]; },
         [](const ReducedPoint& x) { return x[0]; },
         [](const FullPoint& c) { return c[1] + c[2] + c[3]; }, nullptr, nullptr,
         false});

    // Case 7: s(p(1,3),p(2,4)), R = 1/(c1+c3) + 1/(c2+c4).
    add({7, "7.1", 1,
         [](const FullPoint& c) { return c[0] + c[2] <= c[1] + c[3]; },
         [](const FullPoint& c) { return ReducedPoint{c[0] + c[2], 0.0}; },
         [](const ReducedPoint& x, const ConstraintParams& p) {
             return p.alpha * x[0] + p.beta * 2.0 / x[0];
         },
         [](const ReducedPoint& x) { return 2.0 * x[0]; },
         [](const ReducedPoint& x) { return x[0]; },
         [](const FullPoint& c) { return c[0] + c[2]; }, nullptr, nullptr, false});

    add({7, "7.2", 1,
         [](const FullPoint& c) { return c[1] + c[3] <= c[0] + c[2]; },
         [](const FullPoint& c) { return ReducedPoint{c[1] + c[3], 0.0}; },
         [](const ReducedPoint& x, const ConstraintParams& p) {
             return p.alpha * x[0] + p.beta * 2.0 / x[0];
         },
         [](const ReducedPoint& x) { return 2.0 * x[0]; },
         [](const ReducedPoint& x) { return x[0]; },
         [](const FullPoint& c) { return c[1] + c[3]; }, nullptr, nullptr, false});

    // Case 8: p(1,2,3,4), R = 1/(c1+c2+c3+c4).
    add({8, "8", 1,
         [](const FullPoint&) { return true; },
         [](const FullPoint& c) {
             return ReducedPoint{c[0] + c[1] + c[2] + c[3], 0.0};
         },
         [](const ReducedPoint& x, const ConstraintParams& p) {
             return p.alpha * x[0] + p.beta / x[0];
         },
         [](const ReducedPoint& x) { return x[0]; },
         [](const ReducedPoint& x) { return x[0]; },
         [](const FullPoint& c) { return c[0] + c[1] + c[2] + c[3]; }, nullptr,
         nullptr, false});

    // Case 10: p(s(1,p(2,3)),4), R = 1/(c4 + 1/(1/c1 + 1/(c2+c3))).
    add({10, "10.1", 2,
         [](const FullPoint& c) { return c[0] <= c[1] + c[2]; },
         [](const FullPoint& c) { return ReducedPoint{c[0], c[3]}; },
         [](const ReducedPoint& x, const ConstraintParams& p) {
             return p.alpha * (x[0] + x[1]) + p.beta / (x[1] + x[0] / 2.0);
         },
         [](const ReducedPoint& x) { return 2.0 * x[0] + x[1]; },
         [](const ReducedPoint& x) { return x[0] + x[1]; },
         [](const FullPoint& c) { return c[0] + c[3]; }, nullptr, nullptr, false});

    add({10, "10.2", 2,
         [](const FullPoint& c) { return c[1] + c[2] <= c[0]; },
         [](const FullPoint& c) { return ReducedPoint{c[1] + c[2], c[3]}; },
         [](const ReducedPoint& x, const ConstraintParams& p) {
             return p.alpha * (x[0] + x[1]) + p.beta / (x[1] + x[0] / 2.0);
         },
         [](const ReducedPoint& x) { return 2.0 * x[0] + x[1]; },
         [](const ReducedPoint& x) { return x[0] + x[1]; },
         [](const FullPoint& c) { return c[1] + c[2] + c[3]; }, nullptr, nullptr,
         false});

    return reg;
}

// splitmix64; used to derive per-chunk seeds so results do not depend on how
// the sample stream is partitioned across workers.
uint64_t mix(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr long kChunk = 1 << 14;
constexpr double kEps = 1e-6;

}  // namespace

const std::vector<SubcaseBound>& registry() {
    static const std::vector<SubcaseBound> reg = build_registry();
    return reg;
}

const SubcaseBound& find_subcase(const std::string& label) {
    for (const SubcaseBound& b : registry())
        if (b.label == label) return b;
    throw std::domain_error("unknown subcase label '" + label + "'");
}

DominanceReport check_dominance(const SubcaseBound& b, long samples,
                                unsigned long long seed, double box,
                                const ConstraintParams& p) {
    if (samples < 1) throw std::domain_error("samples must be >= 1");
    if (!(box > 0.0)) throw std::domain_error("box must be > 0");

    const SPTree tree = canonical_case(b.case_id);
    DominanceReport rep;
    std::uniform_real_distribution<double> dist(kEps, box);
    for (long start = 0; start < samples; start += kChunk) {
        std::mt19937_64 rng(mix(seed ^ mix(static_cast<uint64_t>(start))));
        const long n = std::min<long>(kChunk, samples - start);
        for (long i = 0; i < n; ++i) {
            FullPoint c;
            for (double& v : c) v = dist(rng);
            ++rep.samples_drawn;
            if (!b.in_domain(c)) continue;
            ++rep.accepted;
            const ReducedPoint x = b.project(c);
            const std::vector<double> cv(c.begin(), c.end());
            const Evaluation e = evaluate(tree, cv, p);
            const double ft = b.f_tilde_r(x, p);
            const double ct = b.c_tilde(x);
            const double fr_slack = ft - e.FR;
            const double cost_slack = e.C - ct;
            rep.max_fr_gap = std::max(rep.max_fr_gap, fr_slack);
            rep.max_cost_gap = std::max(rep.max_cost_gap, cost_slack);
            const double tol_f = 1e-12 * std::max(1.0, std::abs(ft));
            const double tol_c = 1e-12 * std::max(1.0, std::abs(ct));
            if (fr_slack < -tol_f || cost_slack < -tol_c)
                rep.violations.push_back(c);
        }
    }
    return rep;
}

FullPoint lift_point(const SubcaseBound& b, const ReducedPoint& x) {
    if (!b.lift)
        throw std::domain_error("subcase " + b.label + " has no lifting map");
    if (!b.guard_ok(x))
        throw std::domain_error("reduced point violates the subcase guard");
    FullPoint c = b.lift(x);
    for (double v : c)
        if (!(v > 0.0))
            throw std::domain_error(
                "lifted point leaves the positive quadrant (reduced point outside "
                "the lift's domain)");
    if (!b.in_domain(c))
        throw std::domain_error("lifted point falls outside the subcase domain");
    return c;
}

bool check_proposition2(const SubcaseBound& b, double c_star, long samples,
                        unsigned long long seed, double box,
                        const ConstraintParams& p) {
    if (samples < 1) throw std::domain_error("samples must be >= 1");
    if (!(box > 0.0)) throw std::domain_error("box must be > 0");

    std::uniform_real_distribution<double> dist(kEps, box);
    for (long start = 0; start < samples; start += kChunk) {
        std::mt19937_64 rng(mix(seed ^ mix(static_cast<uint64_t>(start))));
        const long n = std::min<long>(kChunk, samples - start);
        for (long i = 0; i < n; ++i) {
            ReducedPoint x{dist(rng), 0.0};
            if (b.reduced_dim == 2) x[1] = dist(rng);
            if (!b.guard_ok(x)) continue;
            if (b.strength(x) < p.f_min) continue;
            if (b.f_tilde_r(x, p) < p.fr_min) continue;
            if (b.c_tilde(x) <= c_star) return false;
        }
    }
    return true;
}

}  // namespace springopt
