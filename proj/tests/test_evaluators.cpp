#include <random>

#include "doctest.h"
#include "springopt/evaluate.hpp"
#include "springopt/topology.hpp"

using namespace springopt;

namespace {

// Closed-form equivalent resistances, written out independently of the tree
// reduction they check.
double closed_form_R(int id, const std::vector<double>& c) {
    const double c1 = c[0], c2 = c[1], c3 = c[2], c4 = c[3];
    switch (id) {
        case 1: return 1 / c1 + 1 / (c2 + c3) + 1 / c4;
        case 2: return 1 / c1 + 1 / c2 + 1 / c3 + 1 / c4;
        case 3:
            return 1 / (1 / (1 / c1 + 1 / c2) + 1 / (1 / c3 + 1 / c4));
        case 4: return 1 / (1 / (1 / c1 + 1 / c2 + 1 / c3) + c4);
        case 5: return 1 / (1 / (1 / c1 + 1 / c2) + c3 + c4);
        case 6: return 1 / c1 + 1 / (c2 + c3 + c4);
        case 7: return 1 / (c1 + c3) + 1 / (c2 + c4);
        case 8: return 1 / (c1 + c2 + c3 + c4);
        case 9: return 1 / c1 + 1 / (c4 + 1 / (1 / c2 + 1 / c3));
        case 10: return 1 / (c4 + 1 / (1 / c1 + 1 / (c2 + c3)));
    }
    return 0;
}

double closed_form_F(int id, const std::vector<double>& c) {
    const double c1 = c[0], c2 = c[1], c3 = c[2], c4 = c[3];
    auto mn = [](double a, double b) { return a < b ? a : b; };
    switch (id) {
        case 1: return mn(mn(c1, c2 + c3), c4);
        case 2: return mn(mn(c1, c2), mn(c3, c4));
        case 3: return mn(c1, c2) + mn(c3, c4);
        case 4: return mn(mn(c1, c2), c3) + c4;
        case 5: return mn(c1, c2) + c3 + c4;
        case 6: return mn(c1, c2 + c3 + c4);
        case 7: return mn(c1 + c3, c2 + c4);
        case 8: return c1 + c2 + c3 + c4;
        case 9: return mn(c1, mn(c2, c3) + c4);
        case 10: return mn(c1, c2 + c3) + c4;
    }
    return 0;
}

std::vector<double> random_c(std::mt19937& rng, double lo = 0.05,
                             double hi = 3.0) {
    std::uniform_real_distribution<double> d(lo, hi);
    return {d(rng), d(rng), d(rng), d(rng)};
}

}  // namespace

TEST_CASE("resistance spot values") {
    CHECK(resistance(canonical_case(2), {1, 1, 1, 1}) == doctest::Approx(4.0));
    CHECK(resistance(canonical_case(8), {1, 1, 1, 1}) == doctest::Approx(0.25));
    // optimum of the global problem: R = 3.5 exactly
    const std::vector<double> copt{0.75, 15.0 / 26, 15.0 / 26, 9.0 / 52};
    CHECK(resistance(canonical_case(9), copt) ==
          doctest::Approx(3.5).epsilon(1e-12));
}

TEST_CASE("resistance matches closed forms on random inputs") {
    std::mt19937 rng(11);
    for (int id = 1; id <= 10; ++id) {
        const SPTree t = canonical_case(id);
        for (int i = 0; i < 1000; ++i) {
            const auto c = random_c(rng);
            const double r = resistance(t, c);
            CHECK(r == doctest::Approx(closed_form_R(id, c)).epsilon(1e-12));
        }
    }
}

TEST_CASE("response force: min/sum recursion") {
    CHECK(response_force(canonical_case(2), {1, 2, 3, 4}) == 1.0);
    CHECK(response_force(canonical_case(8), {1, 1, 1, 1}) == 4.0);
    // the four-row case analysis for case 9
    CHECK(response_force(canonical_case(9), {1, 0.3, 0.9, 0.2}) ==
          doctest::Approx(0.5));  // c2<c3, c1>c2+c4 -> c2+c4
    CHECK(response_force(canonical_case(9), {0.4, 0.3, 0.9, 0.2}) ==
          doctest::Approx(0.4));  // c2<c3, c1<c2+c4 -> c1
    CHECK(response_force(canonical_case(9), {1, 0.9, 0.3, 0.2}) ==
          doctest::Approx(0.5));  // c2>c3, c1>c3+c4 -> c3+c4
    CHECK(response_force(canonical_case(9), {0.4, 0.9, 0.3, 0.2}) ==
          doctest::Approx(0.4));  // c2>c3, c1<c3+c4 -> c1

    std::mt19937 rng(13);
    for (int id = 1; id <= 10; ++id) {
        const SPTree t = canonical_case(id);
        for (int i = 0; i < 500; ++i) {
            const auto c = random_c(rng);
            CHECK(response_force(t, c) ==
                  doctest::Approx(closed_form_F(id, c)).epsilon(1e-12));
        }
    }
}

TEST_CASE("evaluate") {
    const ConstraintParams p{};
    SUBCASE("global optimum sits on both constraint boundaries") {
        const std::vector<double> c{0.75, 15.0 / 26, 15.0 / 26, 9.0 / 52};
        const Evaluation e = evaluate(canonical_case(9), c, p);
        CHECK(e.F == doctest::Approx(0.75).epsilon(1e-12));
        CHECK(e.R == doctest::Approx(3.5).epsilon(1e-12));
        CHECK(e.FR == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(e.C == doctest::Approx(27.0 / 13).epsilon(1e-12));
    }
    SUBCASE("unit series chain") {
        const Evaluation e = evaluate(canonical_case(2), {1, 1, 1, 1}, p);
        CHECK(e.F == 1.0);
        CHECK(e.R == 4.0);
        CHECK(e.FR == doctest::Approx(0.6));
        CHECK(e.C == 4.0);
        CHECK(e.feasible_F);
        CHECK(e.feasible_FR);
    }
    SUBCASE("weak design violates the strength constraint") {
        const Evaluation e =
            evaluate(canonical_case(9), {0.1, 0.1, 0.1, 0.1}, p);
        CHECK_FALSE(e.feasible_F);
    }
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(resistance(canonical_case(2), {1, 1, 1, 0}),
                    std::domain_error);
    CHECK_THROWS_AS(resistance(canonical_case(2), {1, 1, -1, 1}),
                    std::domain_error);
    CHECK_THROWS_AS(response_force(canonical_case(2), {1, 1, 1}),
                    std::domain_error);
}

TEST_CASE("scaling laws") {
    std::mt19937 rng(17);
    for (int id = 1; id <= 10; ++id) {
        const SPTree t = canonical_case(id);
        for (double lambda : {0.5, 2.0, 10.0}) {
            const auto c = random_c(rng);
            std::vector<double> cs = c;
            for (double& v : cs) v *= lambda;
            CHECK(resistance(t, cs) ==
                  doctest::Approx(resistance(t, c) / lambda).epsilon(1e-12));
            CHECK(response_force(t, cs) ==
                  doctest::Approx(lambda * response_force(t, c)).epsilon(1e-12));
            const ConstraintParams p{};
            CHECK(evaluate(t, cs, p).C ==
                  doctest::Approx(lambda * evaluate(t, c, p).C).epsilon(1e-12));
        }
    }
}

TEST_CASE("monotonicity in each limit") {
    std::mt19937 rng(19);
    for (int id = 1; id <= 10; ++id) {
        const SPTree t = canonical_case(id);
        for (int iter = 0; iter < 100; ++iter) {
            const auto c = random_c(rng);
            const int i = std::uniform_int_distribution<int>(0, 3)(rng);
            std::vector<double> cb = c;
            cb[i] += std::uniform_real_distribution<double>(0.01, 1.0)(rng);
            CHECK(resistance(t, cb) < resistance(t, c));
            CHECK(response_force(t, cb) >= response_force(t, c));
        }
    }
}

TEST_CASE("symmetries") {
    std::mt19937 rng(23);
    const ConstraintParams p{};
    for (int iter = 0; iter < 100; ++iter) {
        const auto c = random_c(rng);
        // case 9: c2 <-> c3
        std::vector<double> cs{c[0], c[2], c[1], c[3]};
        const SPTree t9 = canonical_case(9);
        CHECK(resistance(t9, cs) == doctest::Approx(resistance(t9, c)).epsilon(1e-12));
        CHECK(response_force(t9, cs) ==
              doctest::Approx(response_force(t9, c)).epsilon(1e-12));
        // case 8: any permutation
        std::vector<double> cp = c;
        std::shuffle(cp.begin(), cp.end(), rng);
        const SPTree t8 = canonical_case(8);
        CHECK(resistance(t8, cp) == doctest::Approx(resistance(t8, c)).epsilon(1e-12));
        CHECK(response_force(t8, cp) ==
              doctest::Approx(response_force(t8, c)).epsilon(1e-12));
    }
}
