// Tests for the physical Bell-measurement models: the information each BM
// family yields per Bell state, the Charlie mixture construction, and the
// formation token notation.

#include "cssbell/measurement.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <random>
#include <string>

using cssbell::Rational;
using namespace cssbell::measurement;

namespace {

Rational frac(long num, long den) { return Rational(num, den); }

// Convenience: the probability the distribution assigns to Full.
Rational full_mass(const InfoDistribution& d) { return d[InfoSet::Full]; }

}  // namespace

TEST_CASE("guaranteed-information BMs condition on the matching bit", "[measurement]") {
    auto z1 = BmAssignment::guaranteed(Basis::Z, 1);

    SECTION("triggering state is fully identified") {
        auto d = available_info(z1, 0, 1, false);
        CHECK(d[InfoSet::Full] == 1);
        CHECK(d.total() == 1);
        // the x bit is irrelevant for a Z-basis BM
        CHECK(available_info(z1, 1, 1, false)[InfoSet::Full] == 1);
    }

    SECTION("non-triggering state yields only the measured basis") {
        auto d = available_info(z1, 0, 0, false);
        CHECK(d[InfoSet::SingleZ] == 1);
        CHECK(d[InfoSet::Full] == 0);
        CHECK(d.total() == 1);
    }

    SECTION("X-basis BMs condition on the x bit") {
        auto x0 = BmAssignment::guaranteed(Basis::X, 0);
        CHECK(available_info(x0, 0, 1, false)[InfoSet::Full] == 1);
        CHECK(available_info(x0, 1, 1, false)[InfoSet::SingleX] == 1);
    }

    SECTION("Y-basis BMs condition on x ^ z ^ sigma") {
        auto y0 = BmAssignment::guaranteed(Basis::Y, 0);
        CHECK(available_info(y0, 0, 0, false)[InfoSet::Full] == 1);   // y = 0
        CHECK(available_info(y0, 1, 1, false)[InfoSet::Full] == 1);   // y = 0
        CHECK(available_info(y0, 1, 0, false)[InfoSet::SingleY] == 1);  // y = 1
        // flipping sigma relabels the trigger
        CHECK(available_info(y0, 1, 0, false, 1)[InfoSet::Full] == 1);
        CHECK(available_info(y0, 0, 0, false, 1)[InfoSet::SingleY] == 1);
    }
}

TEST_CASE("erasure destroys all information", "[measurement]") {
    auto z1 = BmAssignment::guaranteed(Basis::Z, 1);
    auto d = available_info(z1, 0, 1, true);
    CHECK(d[InfoSet::None] == 1);
    CHECK(d.total() == 1);

    CHECK(available_info(BmAssignment::unconstrained(), 0, 0, true)[InfoSet::None] == 1);
    CHECK(available_info(BmAssignment::state_independent(1), 0, 0, true)[InfoSet::None] ==
          1);
}

TEST_CASE("the rescue probability upgrades non-triggering outcomes", "[measurement]") {
    auto z1 = BmAssignment::guaranteed(Basis::Z, 1, frac(1, 2));

    SECTION("non-triggering state splits between Full and Single") {
        auto d = available_info(z1, 0, 0, false);
        CHECK(d[InfoSet::Full] == frac(1, 2));
        CHECK(d[InfoSet::SingleZ] == frac(1, 2));
        CHECK(d.total() == 1);
    }

    SECTION("triggering state is unaffected") {
        CHECK(available_info(z1, 0, 1, false)[InfoSet::Full] == 1);
    }

    SECTION("raising p_adv never shrinks the Full mass") {
        Rational prev = -1;
        for (long num = 0; num < 8; ++num) {
            auto bm = BmAssignment::guaranteed(Basis::Z, 1, frac(num, 8));
            Rational full = full_mass(available_info(bm, 0, 0, false));
            CHECK(full >= prev);
            prev = full;
        }
    }
}

TEST_CASE("unconstrained and state-independent BMs", "[measurement]") {
    SECTION("unconstrained always identifies") {
        auto d = available_info(BmAssignment::unconstrained(), 1, 0, false);
        CHECK(d[InfoSet::Full] == 1);
    }

    SECTION("state-independent identifies with probability p_bm, else nothing") {
        auto bm = BmAssignment::state_independent(frac(1, 4));
        for (int x = 0; x < 2; ++x) {
            for (int z = 0; z < 2; ++z) {
                auto d = available_info(bm, x, z, false);
                CHECK(d[InfoSet::Full] == frac(1, 4));
                CHECK(d[InfoSet::None] == frac(3, 4));
                CHECK(d.total() == 1);
            }
        }
    }
}

TEST_CASE("BmAssignment validates its parameters", "[measurement]") {
    CHECK_THROWS_AS(BmAssignment::guaranteed(Basis::Z, 2), std::invalid_argument);
    CHECK_THROWS_AS(BmAssignment::guaranteed(Basis::Z, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(BmAssignment::guaranteed(Basis::Z, 1, frac(-1, 2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(BmAssignment::state_independent(frac(5, 4)), std::invalid_argument);
    CHECK_THROWS_AS(BmAssignment::state_independent(frac(-1, 4)), std::invalid_argument);
    // p_adv = 0 and p_bm endpoints are fine
    CHECK_NOTHROW(BmAssignment::guaranteed(Basis::X, 0, 0));
    CHECK_NOTHROW(BmAssignment::state_independent(0));
    CHECK_NOTHROW(BmAssignment::state_independent(1));
}

TEST_CASE("charlie_distribution reproduces the worked examples", "[measurement]") {
    SECTION("(0,0,1,1) concentrates on one BM") {
        auto mix = charlie_distribution({Rational(0), Rational(0), Rational(1), Rational(1)});
        CHECK(mix.total() == 1);
        // states 2 and 3 share x = 1
        CHECK(mix.weight(Basis::X, 1) == 1);
        auto induced = mix.induced_probabilities();
        CHECK(induced == std::array<Rational, 4>{0, 0, 1, 1});
    }

    SECTION("(0, 2/3, 2/3, 2/3) splits evenly over three BMs") {
        auto mix = charlie_distribution({Rational(0), frac(2, 3), frac(2, 3), frac(2, 3)});
        CHECK(mix.total() == 1);
        CHECK(mix.weight(Basis::Y, 1) == frac(1, 3));
        CHECK(mix.weight(Basis::Z, 1) == frac(1, 3));
        CHECK(mix.weight(Basis::X, 1) == frac(1, 3));
        auto induced = mix.induced_probabilities();
        CHECK(induced == std::array<Rational, 4>{0, frac(2, 3), frac(2, 3), frac(2, 3)});
    }

    SECTION("(1/2,1/2,1/2,1/2) is represented exactly") {
        std::array<Rational, 4> p{frac(1, 2), frac(1, 2), frac(1, 2), frac(1, 2)};
        auto mix = charlie_distribution(p);
        CHECK(mix.total() == 1);
        CHECK(mix.induced_probabilities() == p);
    }

    SECTION("a sum above 2 is infeasible") {
        CHECK_THROWS_AS(
            charlie_distribution({Rational(1), Rational(1), Rational(1), Rational(0)}),
            std::invalid_argument);
    }

    SECTION("probabilities outside [0,1] are rejected") {
        CHECK_THROWS_AS(
            charlie_distribution({frac(3, 2), Rational(0), Rational(0), Rational(0)}),
            std::invalid_argument);
        CHECK_THROWS_AS(
            charlie_distribution({frac(-1, 2), Rational(1), Rational(1), Rational(0)}),
            std::invalid_argument);
    }
}

TEST_CASE("charlie_distribution round-trips random sum-2 tuples exactly", "[measurement]") {
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<int> numerator(0, 24);
    int tested = 0;
    while (tested < 1000) {
        std::array<Rational, 4> p;
        Rational sum = 0;
        for (int i = 0; i < 3; ++i) {
            p[i] = frac(numerator(rng), 24);
            sum += p[i];
        }
        p[3] = Rational(2) - sum;
        if (p[3] < 0 || p[3] > 1) {
            continue;
        }
        ++tested;
        auto mix = charlie_distribution(p);
        REQUIRE(mix.total() == 1);
        for (const Rational& w : mix.weights) {
            REQUIRE(w >= 0);
        }
        REQUIRE(mix.induced_probabilities() == p);
    }
}

TEST_CASE("charlie_distribution dominates tuples summing below 2", "[measurement]") {
    std::mt19937 rng(404);
    std::uniform_int_distribution<int> numerator(0, 12);
    int tested = 0;
    while (tested < 200) {
        std::array<Rational, 4> p;
        Rational sum = 0;
        for (int i = 0; i < 4; ++i) {
            p[i] = frac(numerator(rng), 24);
            sum += p[i];
        }
        if (sum > 2) {
            continue;
        }
        ++tested;
        auto mix = charlie_distribution(p);
        REQUIRE(mix.total() == 1);
        auto induced = mix.induced_probabilities();
        Rational induced_sum = 0;
        for (int i = 0; i < 4; ++i) {
            REQUIRE(induced[i] >= p[i]);
            induced_sum += induced[i];
        }
        // a normalized mixture of two-state identifiers always spends 2
        REQUIRE(induced_sum == 2);
    }
}

TEST_CASE("formation token notation parses and formats", "[measurement]") {
    SECTION("the Steane boundary formation") {
        auto f = parse_formation("Z1 Z1 Z1 X1 X1 X1 X1");
        REQUIRE(f.size() == 7);
        for (std::size_t i = 0; i < 3; ++i) {
            const auto& g = std::get<GuaranteedInfo>(f.assignments[i].variant());
            CHECK(g.basis == Basis::Z);
            CHECK(g.trigger == 1);
        }
        for (std::size_t i = 3; i < 7; ++i) {
            const auto& g = std::get<GuaranteedInfo>(f.assignments[i].variant());
            CHECK(g.basis == Basis::X);
            CHECK(g.trigger == 1);
        }
        CHECK(format_formation(f) == "Z1 Z1 Z1 X1 X1 X1 X1");
    }

    SECTION("all token kinds round-trip") {
        std::string text = "X0 X1 Y0 Y1 Z0 Z1 U S(1/2)";
        auto f = parse_formation(text);
        REQUIRE(f.size() == 8);
        CHECK(f.assignments[6].is_unconstrained());
        CHECK(f.assignments[7].is_state_independent());
        CHECK(std::get<StateIndependent>(f.assignments[7].variant()).p_bm == frac(1, 2));
        CHECK(format_formation(f) == text);
    }

    SECTION("decimal probabilities parse exactly") {
        auto f = parse_formation("S(0.25)");
        CHECK(std::get<StateIndependent>(f.assignments[0].variant()).p_bm == frac(1, 4));
        CHECK(format_formation(f) == "S(1/4)");
    }

    SECTION("p_adv applies to guaranteed tokens only") {
        auto f = parse_formation("Z1 U S(1/2)", frac(1, 8));
        CHECK(f.assignments[0].p_adv() == frac(1, 8));
        CHECK(f.assignments[1].p_adv() == 0);
        CHECK(f.assignments[2].p_adv() == 0);
    }

    SECTION("unknown tokens are rejected with their position") {
        CHECK_THROWS_WITH(parse_formation("Z1 Z1 Q7"),
                          Catch::Matchers::ContainsSubstring("token 3") &&
                              Catch::Matchers::ContainsSubstring("Q7"));
        CHECK_THROWS_WITH(parse_formation("X2"),
                          Catch::Matchers::ContainsSubstring("token 1"));
        CHECK_THROWS_WITH(parse_formation("Z1 S(3/2)"),
                          Catch::Matchers::ContainsSubstring("[0, 1]"));
        CHECK_THROWS_WITH(parse_formation("S(abc)"),
                          Catch::Matchers::ContainsSubstring("cannot parse"));
    }

    SECTION("the empty string is an empty formation") {
        CHECK(parse_formation("").size() == 0);
    }
}

TEST_CASE("a manual mixture induces the expected state probabilities", "[measurement]") {
    CharlieMixture mix;
    mix.weight(Basis::Z, 1) = 1;
    // states with z = 1 are s = 1 (x=0,z=1) and s = 3 (x=1,z=1)
    CHECK(mix.induced_probabilities() == std::array<Rational, 4>{0, 1, 0, 1});

    CharlieMixture even;
    for (int t = 0; t < 2; ++t) {
        even.weight(Basis::Y, t) = frac(1, 2);
    }
    CHECK(even.induced_probabilities() ==
          std::array<Rational, 4>{frac(1, 2), frac(1, 2), frac(1, 2), frac(1, 2)});
}
