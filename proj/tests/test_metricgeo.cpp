#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sumlab/metricgeo.hpp"
#include "sumlab/rng.hpp"

#include <cmath>

using namespace sumlab;

namespace {

UltrametricSpace binary(std::size_t depth = 12) {
    return UltrametricSpace{2, 0.5, depth, {0.5, 0.5}};
}

Word word_of(std::initializer_list<int> syms) {
    Word w;
    for (int s : syms) w.push_back(std::uint8_t(s));
    return w;
}

} // namespace

TEST_CASE("space validation catches bad parameters") {
    CHECK_THROWS_AS((UltrametricSpace{1, 0.5, 4, {1.0}}.validate()), input_error);
    CHECK_THROWS_AS((UltrametricSpace{2, 1.5, 4, {0.5, 0.5}}.validate()),
                    input_error);
    CHECK_THROWS_AS((UltrametricSpace{2, 0.5, 4, {0.7, 0.7}}.validate()),
                    input_error);
    CHECK_NOTHROW(binary().validate());
}

TEST_CASE("distances are powers of the scale at the agreement count") {
    Word x = word_of({0, 1, 0, 1});
    CHECK(ultrametric_distance(x, x, 0.5) == 0.0);
    CHECK(ultrametric_distance(x, word_of({1, 1, 0, 1}), 0.5) == 1.0);
    CHECK(ultrametric_distance(x, word_of({0, 1, 1, 1}), 0.5) == 0.25);
    CHECK_THROWS_AS(ultrametric_distance(x, word_of({0, 1}), 0.5), input_error);
}

TEST_CASE("exhaustive strong triangle inequality at depth six") {
    const std::size_t depth = 6;
    const std::size_t total = 1u << depth;
    auto decode = [&](std::size_t bits) {
        Word w(depth);
        for (std::size_t i = 0; i < depth; ++i) w[i] = (bits >> i) & 1u;
        return w;
    };
    // all 2^18 triples
    std::size_t violations = 0;
    for (std::size_t a = 0; a < total; ++a) {
        Word wa = decode(a);
        for (std::size_t b = 0; b < total; ++b) {
            Word wb = decode(b);
            double dab = ultrametric_distance(wa, wb, 0.5);
            for (std::size_t c = 0; c < total; ++c) {
                Word wc = decode(c);
                double dac = ultrametric_distance(wa, wc, 0.5);
                double dbc = ultrametric_distance(wb, wc, 0.5);
                if (dac > std::max(dab, dbc)) ++violations;
            }
        }
    }
    CHECK(violations == 0);
}

TEST_CASE("balls are agreement cylinders at the expected level") {
    UltrametricSpace sp = binary(8);
    // rho^k < r <= rho^{k-1} pins the cylinder depth at k
    CHECK(ball_level(sp, 2.0) == 0);
    CHECK(ball_level(sp, 1.0) == 1);
    CHECK(ball_level(sp, 0.6) == 1);
    CHECK(ball_level(sp, 0.5) == 2);
    CHECK(ball_level(sp, 0.3) == 2);
    CHECK(ball_level(sp, 1e-9) == 8); // singleton
    CHECK_THROWS_AS(ball_level(sp, 0.0), domain_error);

    Word x = word_of({0, 1, 0, 1, 0, 1, 0, 1});
    CylinderBall b = open_ball(sp, x, 0.3);
    CHECK(b.level == 2);
    CHECK(b.prefix == word_of({0, 1}));
    // membership: y is in the ball exactly when it extends the prefix
    Word y = word_of({0, 1, 1, 1, 1, 1, 1, 1});
    CHECK(ultrametric_distance(x, y, sp.rho) < 0.3);
    Word z = word_of({0, 0, 1, 1, 1, 1, 1, 1});
    CHECK(ultrametric_distance(x, z, sp.rho) >= 0.3);
}

TEST_CASE("nested or disjoint: sampled configurations never violate") {
    Report rep = ball_trichotomy_check(binary(), 10000, 7);
    CHECK(rep.pass());
}

TEST_CASE("same-center balls nest and far balls separate") {
    UltrametricSpace sp = binary(6);
    Word x = word_of({0, 0, 0, 0, 0, 0});
    Word y = word_of({1, 0, 0, 0, 0, 0}); // distance 1
    CylinderBall small = open_ball(sp, x, 0.2);
    CylinderBall big = open_ball(sp, x, 0.7);
    CHECK(ball_relation(small, big) == BallRelation::FirstInsideSecond);
    CylinderBall bx = open_ball(sp, x, 0.5);
    CylinderBall by = open_ball(sp, y, 0.5);
    CHECK(ball_relation(bx, by) == BallRelation::Disjoint);
}

TEST_CASE("maximal balls of a sampled family are pairwise disjoint") {
    UltrametricSpace sp = binary(10);
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<CylinderBall> balls;
        for (int i = 0; i < 12; ++i) {
            Word w(sp.depth);
            for (auto& s : w) s = std::uint8_t(rng.below(2));
            balls.push_back(open_ball(sp, w, std::pow(0.5, double(rng.below(6))) * 0.8));
        }
        for (std::size_t i = 0; i < balls.size(); ++i) {
            bool maximal_i = true;
            for (std::size_t j = 0; j < balls.size() && maximal_i; ++j) {
                if (i == j) continue;
                BallRelation r = ball_relation(balls[i], balls[j]);
                if (r == BallRelation::FirstInsideSecond) maximal_i = false;
                if (r == BallRelation::Equal && j < i) maximal_i = false;
            }
            if (!maximal_i) continue;
            for (std::size_t j = 0; j < balls.size(); ++j) {
                if (i == j) continue;
                bool maximal_j = true;
                for (std::size_t k = 0; k < balls.size() && maximal_j; ++k) {
                    if (j == k) continue;
                    BallRelation r = ball_relation(balls[j], balls[k]);
                    if (r == BallRelation::FirstInsideSecond) maximal_j = false;
                    if (r == BallRelation::Equal && k < j) maximal_j = false;
                }
                if (!maximal_j) continue;
                BallRelation r = ball_relation(balls[i], balls[j]);
                bool same = balls[i].level == balls[j].level &&
                            balls[i].prefix == balls[j].prefix;
                if (!same) CHECK(r == BallRelation::Disjoint);
            }
        }
    }
}

TEST_CASE("halving the radius of a binary ball splits it in two") {
    Report rep = doubling_constant(binary(), 2000, 11);
    CHECK(rep.pass());
    for (const auto& [k, v] : rep.values)
        if (k == "space_constant") CHECK(v == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("doubling stays bounded for lopsided weights") {
    UltrametricSpace sp{2, 0.5, 12, {0.2, 0.8}};
    Report rep = doubling_constant(sp, 2000, 13);
    CHECK(rep.pass());
}

TEST_CASE("whole space is covered by exactly |A|^k level-k balls") {
    UltrametricSpace sp = binary(6);
    for (std::size_t k = 0; k <= 6; ++k) {
        // enumerate all words, collect their level-k cylinders
        std::vector<Word> prefixes;
        for (std::size_t bits = 0; bits < (1u << 6); ++bits) {
            Word w(6);
            for (std::size_t i = 0; i < 6; ++i) w[i] = (bits >> i) & 1u;
            Word p(w.begin(), w.begin() + long(k));
            bool seen = false;
            for (const auto& q : prefixes)
                if (q == p) seen = true;
            if (!seen) prefixes.push_back(p);
        }
        CHECK(prefixes.size() == (std::size_t(1) << k));
    }
}

TEST_CASE("scalar subadditivity and the rescaled metric survive flaking") {
    CHECK(std::pow(2.0, 0.5) <= 2.0);
    Report rep = snowflake_check(binary(), 0.5, 10000, 17);
    CHECK(rep.pass());
    Report identity = snowflake_check(binary(), 1.0, 100, 19);
    CHECK(identity.pass());
    CHECK_THROWS_AS(snowflake_check(binary(), 1.5, 10, 21), domain_error);
    CHECK_THROWS_AS(snowflake_check(binary(), 0.0, 10, 23), domain_error);
}

TEST_CASE("snowflaking keeps the doubling property with reindexed radii") {
    UltrametricSpace sp = binary();
    UltrametricSpace flaked = sp;
    flaked.rho = std::pow(sp.rho, 0.5);
    Report a = doubling_constant(sp, 500, 29);
    Report b = doubling_constant(flaked, 500, 29);
    CHECK(a.pass());
    CHECK(b.pass());
}

TEST_CASE("box slope is exactly one for the self-similar binary space") {
    DimensionEstimate est = box_dimension(binary(18), 1.0, 8, 16);
    CHECK(est.slope == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(est.max_fit_residual < 1e-10);
}

TEST_CASE("the half-power flake doubles the slope") {
    DimensionEstimate est = box_dimension(binary(18), 0.5, 8, 16);
    CHECK(est.slope == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("ternary space at scale one third also has slope one") {
    UltrametricSpace sp{3, 1.0 / 3.0, 18, {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}};
    DimensionEstimate est = box_dimension(sp, 1.0, 8, 16);
    CHECK(est.slope == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("too few scales or exceeding the depth is refused") {
    CHECK_THROWS_AS(box_dimension(binary(18), 1.0, 8, 10), resolution_error);
    CHECK_THROWS_AS(box_dimension(binary(10), 1.0, 4, 12), resolution_error);
}
