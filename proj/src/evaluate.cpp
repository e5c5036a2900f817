#include "springopt/evaluate.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace springopt {

void validate_limits(const SPTree& t, const std::vector<double>& c) {
    const int m = spring_count(t);
    if (static_cast<int>(c.size()) != m)
        throw std::domain_error("expected " + std::to_string(m) + " limits, got " +
                                std::to_string(c.size()));
    for (std::size_t i = 0; i < c.size(); ++i)
        if (!(c[i] > 0.0))
            throw std::domain_error("elastic limit c" + std::to_string(i + 1) +
                                    " must be > 0");
}

namespace {

double resistance_rec(const SPTree& t, const std::vector<double>& c) {
    switch (t.kind) {
        case NodeKind::Leaf:
            return 1.0 / c[t.index - 1];
        case NodeKind::Series: {
            double r = 0.0;
            for (const SPTree& ch : t.children) r += resistance_rec(ch, c);
            return r;
        }
        case NodeKind::Parallel: {
            double g = 0.0;
            for (const SPTree& ch : t.children) g += 1.0 / resistance_rec(ch, c);
            return 1.0 / g;
        }
    }
    return 0.0;  // unreachable
}

double force_rec(const SPTree& t, const std::vector<double>& c) {
    switch (t.kind) {
        case NodeKind::Leaf:
            return c[t.index - 1];
        case NodeKind::Series: {
            double f = force_rec(t.children[0], c);
            for (std::size_t i = 1; i < t.children.size(); ++i)
                f = std::min(f, force_rec(t.children[i], c));
            return f;
        }
        case NodeKind::Parallel: {
            double f = 0.0;
            for (const SPTree& ch : t.children) f += force_rec(ch, c);
            return f;
        }
    }
    return 0.0;  // unreachable
}

}  // namespace

double resistance(const SPTree& t, const std::vector<double>& c) {
    validate_limits(t, c);
    return resistance_rec(t, c);
}

double response_force(const SPTree& t, const std::vector<double>& c) {
    validate_limits(t, c);
    return force_rec(t, c);
}

Evaluation evaluate(const SPTree& t, const std::vector<double>& c,
                    const ConstraintParams& p) {
    validate_limits(t, c);
    Evaluation e{};
    e.F = force_rec(t, c);
    e.R = resistance_rec(t, c);
    e.FR = p.alpha * e.F + p.beta * e.R;
    e.C = std::accumulate(c.begin(), c.end(), 0.0);
    e.feasible_F = e.F >= p.f_min;
    e.feasible_FR = e.FR >= p.fr_min;
    return e;
}

}  // namespace springopt
