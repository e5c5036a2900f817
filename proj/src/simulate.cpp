#include "springopt/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace springopt {

namespace {

constexpr double kYieldTol = 1e-12;

struct SpringState {
    double k = 1.0;      // stiffness
    double c = 0.0;      // elastic limit
    double e = 0.0;      // total elongation
    double p = 0.0;      // plastic elongation
    double rate = 0.0;   // elongation rate per unit of total elongation

    double force() const { return k * (e - p); }
    bool plastic() const { return force() >= c * (1.0 - kYieldTol); }
};

struct Simulator {
    const SPTree& tree;
    std::vector<SpringState> springs;  // by index-1

    // Tangent stiffness of a subtree; a plastic spring contributes zero.
    double tangent(const SPTree& t) const {
        switch (t.kind) {
            case NodeKind::Leaf: {
                const SpringState& s = springs[t.index - 1];
                return s.plastic() ? 0.0 : s.k;
            }
            case NodeKind::Series: {
                double inv = 0.0;
                for (const SPTree& ch : t.children) {
                    double kc = tangent(ch);
                    if (kc == 0.0) return 0.0;
                    inv += 1.0 / kc;
                }
                return 1.0 / inv;
            }
            case NodeKind::Parallel: {
                double sum = 0.0;
                for (const SPTree& ch : t.children) sum += tangent(ch);
                return sum;
            }
        }
        return 0.0;
    }

    // Assign per-spring elongation rates for a unit elongation rate at `t`.
    void assign_rates(const SPTree& t, double rate) {
        switch (t.kind) {
            case NodeKind::Leaf:
                springs[t.index - 1].rate = rate;
                return;
            case NodeKind::Series: {
                double kn = tangent(t);
                if (kn > 0.0) {
                    for (const SPTree& ch : t.children)
                        assign_rates(ch, rate * kn / tangent(ch));
                } else {
                    // All elongation flows into the first exhausted child; the
                    // transmitted force is constant.
                    bool placed = false;
                    for (const SPTree& ch : t.children) {
                        if (!placed && tangent(ch) == 0.0) {
                            assign_rates(ch, rate);
                            placed = true;
                        } else {
                            assign_rates(ch, 0.0);
                        }
                    }
                    if (!placed && rate != 0.0)
                        throw std::logic_error(
                            "series node with zero stiffness but no exhausted child");
                }
                return;
            }
            case NodeKind::Parallel:
                for (const SPTree& ch : t.children) assign_rates(ch, rate);
                return;
        }
    }

    double terminal_force(const SPTree& t) const {
        switch (t.kind) {
            case NodeKind::Leaf:
                return springs[t.index - 1].force();
            case NodeKind::Series: {
                double f = std::numeric_limits<double>::infinity();
                for (const SPTree& ch : t.children)
                    f = std::min(f, terminal_force(ch));
                return f;
            }
            case NodeKind::Parallel: {
                double f = 0.0;
                for (const SPTree& ch : t.children) f += terminal_force(ch);
                return f;
            }
        }
        return 0.0;
    }

    // Advance the total elongation by de >= 0, resolving plastic transitions
    // (the response is piecewise linear in between). Each pass either consumes
    // the whole increment or turns exactly one more spring plastic.
    void advance(double de) {
        while (de > 0.0) {
            assign_rates(tree, 1.0);
            // Fraction of the remaining increment at which the next spring yields.
            double theta = 1.0;
            SpringState* binding = nullptr;
            for (SpringState& s : springs) {
                if (s.rate <= 0.0 || s.plastic()) continue;
                double margin = std::max(s.c / s.k - (s.e - s.p), 0.0);
                double t = margin / (s.rate * de);
                if (t < theta) {
                    theta = t;
                    binding = &s;
                }
            }
            double d = theta * de;
            for (SpringState& s : springs) {
                if (s.rate == 0.0) continue;
                s.e += s.rate * d;
                double f = s.k * (s.e - s.p);
                if (f > s.c) s.p = s.e - s.c / s.k;  // spring flows plastically
            }
            if (binding) binding->p = binding->e - binding->c / binding->k;
            de -= d;
            if (!binding) break;
        }
    }
};

}  // namespace

LoadingHistory simulate_loading(const SPTree& t, const std::vector<double>& c,
                                const std::vector<double>& k, double ramp,
                                int steps) {
    validate_limits(t, c);
    if (k.size() != c.size())
        throw std::domain_error("stiffness vector size must match limits");
    for (double ki : k)
        if (!(ki > 0.0)) throw std::domain_error("all stiffnesses must be > 0");
    if (steps < 1) throw std::domain_error("steps must be >= 1");
    if (!(ramp >= 0.0)) throw std::domain_error("ramp must be nonnegative");

    Simulator sim{t, {}};
    sim.springs.resize(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        sim.springs[i].k = k[i];
        sim.springs[i].c = c[i];
    }

    LoadingHistory h;
    h.elongation.reserve(steps);
    h.force.reserve(steps);
    const double de = ramp / steps;
    for (int s = 1; s <= steps; ++s) {
        sim.advance(de);
        h.elongation.push_back(de * s);
        double f = sim.terminal_force(t);
        h.force.push_back(f);
        h.max_force = std::max(h.max_force, f);
    }
    return h;
}

}  // namespace springopt
