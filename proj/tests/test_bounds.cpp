#include <cmath>
#include <random>

#include "doctest.h"
#include "springopt/bounds.hpp"
#include "springopt/topology.hpp"

using namespace springopt;

TEST_CASE("registry is complete") {
    const auto& reg = registry();
    CHECK(reg.size() == 15);
    const char* labels[] = {"9.1", "9.2", "1.1", "1.2", "2",    "3",
                            "4",   "5",   "6.1", "6.2", "7.1",  "7.2",
                            "8",   "10.1", "10.2"};
    for (const char* l : labels) CHECK(find_subcase(l).label == l);
    CHECK_THROWS_AS(find_subcase("11.1"), std::domain_error);
}

TEST_CASE("bound formulas at spot points") {
    const ConstraintParams p{};
    SUBCASE("9.1") {
        const SubcaseBound& b = find_subcase("9.1");
        // Ftilde(1, 0.4) = 0.2 + 0.1*(1 + 1.25) = 0.425, Ctilde = 2.4
        CHECK(b.f_tilde_r({1.0, 0.4}, p) == doctest::Approx(0.425));
        CHECK(b.c_tilde({1.0, 0.4}) == doctest::Approx(2.4));
    }
    SUBCASE("9.2") {
        const SubcaseBound& b = find_subcase("9.2");
        // Ftilde(c2,c4) = 0.2(c2+c4) + 0.1(1/(c2+c4) + 1/(c2/2+c4))
        CHECK(b.f_tilde_r({0.5, 0.5}, p) ==
              doctest::Approx(0.2 + 0.1 * (1.0 + 1.0 / 0.75)));
        CHECK(b.c_tilde({0.5, 0.5}) == doctest::Approx(2.5));
    }
    SUBCASE("2") {
        const SubcaseBound& b = find_subcase("2");
        CHECK(b.f_tilde_r({0.75, 0}, p) ==
              doctest::Approx(0.2 * 0.75 + 0.4 / 0.75));
        CHECK(b.c_tilde({0.75, 0}) == doctest::Approx(3.0));
    }
    SUBCASE("8") {
        const SubcaseBound& b = find_subcase("8");
        CHECK(b.f_tilde_r({2.0, 0}, p) == doctest::Approx(0.45));
        CHECK(b.c_tilde({2.0, 0}) == doctest::Approx(2.0));
    }
}

TEST_CASE("9.1 domain requires c2 < 2*c1") {
    const SubcaseBound& b = find_subcase("9.1");
    // c2 <= c3 and c1 <= c2+c4 hold, but c2 >= 2c1 makes Ftilde singular.
    CHECK_FALSE(b.in_domain({0.2, 0.5, 0.6, 0.4}));
    CHECK(b.in_domain({0.4, 0.5, 0.6, 0.4}));
    CHECK_FALSE(b.guard_ok({0.2, 0.5}));
}

TEST_CASE("dominance holds on samples for every subcase") {
    for (const SubcaseBound& b : registry()) {
        const DominanceReport rep = check_dominance(b, 10000, 1, 3.0);
        INFO("subcase ", b.label);
        CHECK(rep.violations.empty());
        CHECK(rep.accepted > 0);
    }
}

TEST_CASE("dominance sampling is deterministic in the seed") {
    const SubcaseBound& b = find_subcase("9.2");
    const auto a = check_dominance(b, 5000, 42, 3.0);
    const auto c = check_dominance(b, 5000, 42, 3.0);
    CHECK(a.accepted == c.accepted);
    CHECK(a.max_fr_gap == c.max_fr_gap);
    CHECK(a.max_cost_gap == c.max_cost_gap);
}

TEST_CASE("subcase response matches the tree response on its domain") {
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> d(0.05, 3.0);
    for (const SubcaseBound& b : registry()) {
        const SPTree t = canonical_case(b.case_id);
        int hits = 0;
        for (int i = 0; i < 2000 && hits < 200; ++i) {
            FullPoint c{d(rng), d(rng), d(rng), d(rng)};
            if (!b.in_domain(c)) continue;
            ++hits;
            const std::vector<double> cv(c.begin(), c.end());
            CHECK(b.response(c) ==
                  doctest::Approx(response_force(t, cv)).epsilon(1e-12));
        }
        CHECK(hits > 0);
    }
}

TEST_CASE("lift for 9.1") {
    const SubcaseBound& b = find_subcase("9.1");
    SUBCASE("known optimum") {
        const FullPoint c = lift_point(b, {0.75, 15.0 / 26});
        CHECK(c[0] == doctest::Approx(0.75));
        CHECK(c[1] == doctest::Approx(15.0 / 26));
        CHECK(c[2] == doctest::Approx(15.0 / 26));
        CHECK(c[3] == doctest::Approx(9.0 / 52));
    }
    SUBCASE("cost identity and 9.1/9.2 boundary") {
        std::mt19937 rng(43);
        std::uniform_real_distribution<double> d(0.1, 1.0);
        for (int i = 0; i < 200; ++i) {
            const double c1 = d(rng) + 1.0;
            const double c2 = d(rng);  // c2 < c1 so c4 > 0
            const FullPoint c = lift_point(b, {c1, c2});
            CHECK(c[0] + c[1] + c[2] + c[3] ==
                  doctest::Approx(b.c_tilde({c1, c2})).epsilon(1e-12));
            CHECK(c[1] == c[2]);                       // c2 = c3
            CHECK(c[0] == doctest::Approx(c[1] + c[3]));  // c1 = c2 + c4
        }
    }
    SUBCASE("degenerate boundary points are rejected") {
        CHECK_THROWS_AS(lift_point(b, {1.0, 0.0}), std::domain_error);
        CHECK_THROWS_AS(lift_point(b, {1.0, 1.0}), std::domain_error);
        CHECK_THROWS_AS(lift_point(b, {1.0, 2.5}), std::domain_error);
    }
    SUBCASE("subcases without a lift") {
        CHECK_THROWS_AS(lift_point(find_subcase("9.2"), {1.0, 0.5}),
                        std::domain_error);
    }
}

TEST_CASE("mirrored subcases agree under the swap") {
    const ConstraintParams p{};
    std::mt19937 rng(47);
    std::uniform_real_distribution<double> d(0.05, 3.0);
    for (int i = 0; i < 500; ++i) {
        FullPoint c{d(rng), d(rng), d(rng), d(rng)};
        // 7.2 on c equals 7.1 on the branch-swapped vector (c2,c1,c4,c3).
        const FullPoint cs{c[1], c[0], c[3], c[2]};
        const SubcaseBound& b71 = find_subcase("7.1");
        const SubcaseBound& b72 = find_subcase("7.2");
        if (b72.in_domain(c)) {
            CHECK(b71.in_domain(cs));
            CHECK(b72.f_tilde_r(b72.project(c), p) ==
                  doctest::Approx(b71.f_tilde_r(b71.project(cs), p)));
            CHECK(b72.c_tilde(b72.project(c)) ==
                  doctest::Approx(b71.c_tilde(b71.project(cs))));
        }
    }
}

TEST_CASE("proposition 2 certification") {
    const double cstar = 2.076923;
    SUBCASE("closed-form cases certify") {
        CHECK(check_proposition2(find_subcase("2"), cstar, 20000, 1, 3.0));
        CHECK(check_proposition2(find_subcase("6.1"), cstar, 20000, 1, 3.0));
    }
    SUBCASE("9.1 straddles its own optimum") {
        // No feasible reduced point beats 2.0 (min is 27/13 > 2.0) ...
        CHECK(check_proposition2(find_subcase("9.1"), 2.0, 100000, 1, 3.0));
        // ... but feasible points with cost <= 2.2 exist.
        CHECK_FALSE(check_proposition2(find_subcase("9.1"), 2.2, 100000, 1, 3.0));
    }
}
