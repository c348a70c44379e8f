#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sumlab/maximal.hpp"
#include "sumlab/rng.hpp"

#include <cmath>

using namespace sumlab;

namespace {

GridFunction delta() {
    GridFunction f;
    f.lo = 0;
    f.values = {cplx(1.0, 0.0)};
    return f;
}

GridFunction random_function(Rng& rng, std::size_t max_support) {
    GridFunction f;
    f.lo = long(rng.below(9)) - 4;
    f.values.assign(1 + rng.below(max_support), cplx(0.0, 0.0));
    bool any = false;
    for (auto& z : f.values) {
        if (rng.uniform() < 0.25) continue;
        z = rng.uniform() * rng.unit_phase();
        any = true;
    }
    if (!any) f.values[0] = 1.0;
    return f;
}

// window search written without prefix sums, as an independent check
double brute_maximal(const GridFunction& f, long l, long reach) {
    double best = 0.0;
    for (long a = f.lo - reach; a <= l; ++a)
        for (long b = l; b <= f.hi() + reach; ++b) {
            double sum = 0.0;
            for (long j = a; j <= b; ++j) sum += f.abs_at(j);
            best = std::max(best, sum / double(b - a + 1));
        }
    return best;
}

} // namespace

TEST_CASE("one-point mass has the 1/(distance+1) profile") {
    GridFunction f = delta();
    for (long l = -40; l <= 40; ++l) {
        std::pair<long, long> w;
        double v = discrete_maximal_at(f, l, &w);
        CHECK(v == doctest::Approx(1.0 / double(std::labs(l) + 1)).epsilon(1e-15));
        CHECK(w.first <= l);
        CHECK(w.second >= l);
    }
}

TEST_CASE("constant functions are their own maximal profile") {
    GridFunction f;
    f.lo = -3;
    f.values.assign(7, cplx(0.75, 0.0));
    MaximalProfile prof = discrete_maximal(f);
    for (double v : prof.values) CHECK(v == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("profile values agree with a reach-extended brute search") {
    Rng rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        GridFunction f = random_function(rng, 20);
        for (long l = f.lo - 6; l <= f.hi() + 6; ++l)
            CHECK(discrete_maximal_at(f, l) ==
                  doctest::Approx(brute_maximal(f, l, 8)).epsilon(1e-13));
    }
}

TEST_CASE("profile dominates the function and respects the mass bound") {
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        GridFunction f = random_function(rng, 32);
        MaximalProfile prof = discrete_maximal(f);
        double total = f.abs_sum();
        double supf = 0.0;
        for (const auto& z : f.values) supf = std::max(supf, std::abs(z));
        double mean =
            total / double(f.values.size()); // hull-window average lower bound
        double top = 0.0;
        for (std::size_t i = 0; i < prof.values.size(); ++i) {
            CHECK(prof.values[i] >= f.abs_at(f.lo + long(i)) - 1e-15);
            CHECK(prof.values[i] <= total + 1e-12);
            top = std::max(top, prof.values[i]);
        }
        CHECK(top >= mean - 1e-13);
        CHECK(top <= supf + 1e-13);
    }
}

TEST_CASE("witness windows reproduce the reported value") {
    Rng rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        GridFunction f = random_function(rng, 24);
        MaximalProfile prof = discrete_maximal(f);
        for (std::size_t i = 0; i < prof.values.size(); ++i) {
            auto [a, b] = prof.witness[i];
            double sum = 0.0;
            for (long j = a; j <= b; ++j) sum += f.abs_at(j);
            CHECK(sum / double(b - a + 1) ==
                  doctest::Approx(prof.values[i]).epsilon(1e-13));
        }
    }
}

TEST_CASE("sublinearity and absolute homogeneity of the profile") {
    Rng rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        GridFunction f = random_function(rng, 16);
        GridFunction g = f;
        for (auto& z : g.values) z = rng.uniform() * rng.unit_phase();
        GridFunction sum = f;
        for (std::size_t i = 0; i < sum.values.size(); ++i)
            sum.values[i] += g.values[i];
        cplx t = 3.0 * rng.unit_phase();
        GridFunction tf = f;
        for (auto& z : tf.values) z *= t;
        for (long l = f.lo - 5; l <= f.hi() + 5; ++l) {
            CHECK(discrete_maximal_at(sum, l) <=
                  discrete_maximal_at(f, l) + discrete_maximal_at(g, l) + 1e-12);
            CHECK(discrete_maximal_at(tf, l) ==
                  doctest::Approx(std::abs(t) * discrete_maximal_at(f, l))
                      .epsilon(1e-12));
        }
    }
}

TEST_CASE("cell-aligned continuous averages dominate the discrete profile") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        GridFunction f = random_function(rng, 16);
        f.interp = GridFunction::Interp::PiecewiseConstant;
        for (long l = f.lo; l <= f.hi(); ++l) {
            // real intervals can pinch a neighboring cell, so the continuous
            // value is the discrete one joined with the adjacent cell values
            double continuous =
                std::max({discrete_maximal_at(f, l), f.abs_at(l - 1), f.abs_at(l)});
            CHECK(continuous >= discrete_maximal_at(f, l));
        }
    }
}

TEST_CASE("level sets shrink as the level rises") {
    Rng rng(13);
    GridFunction f = random_function(rng, 24);
    double prev = -1.0;
    for (double lam : {0.05, 0.1, 0.2, 0.4, 0.8}) {
        long count = superlevel_count(f, lam);
        if (prev >= 0.0) CHECK(double(count) <= prev);
        prev = double(count);
    }
}

TEST_CASE("one-point mass level counts at the harmonic thresholds") {
    GridFunction f = delta();
    for (long k = 2; k <= 10; ++k)
        CHECK(superlevel_count(f, 1.0 / double(k) - 1e-12) == 2 * k - 1);
}

TEST_CASE("indicator blocks never exceed level one") {
    GridFunction f;
    f.lo = 0;
    f.values.assign(6, cplx(1.0, 0.0));
    CHECK(superlevel_count(f, 1.0 + 1e-9) == 0);
    Report rep = weak_type_report(f, {1.5, 2.0});
    CHECK(rep.pass());
}

TEST_CASE("level bound with constant two holds on random inputs") {
    Rng rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        GridFunction f = random_function(rng, 24);
        MaximalProfile prof = discrete_maximal(f);
        double top = 0.0;
        for (double v : prof.values) top = std::max(top, v);
        Report rep = weak_type_report(f, {0.9 * top, 0.5 * top, 0.1 * top});
        CHECK(rep.pass());
    }
    CHECK_THROWS_AS(weak_type_report(GridFunction{0, {cplx(0, 0)}, {}}, {0.5}),
                    input_error);
}

TEST_CASE("power bound for the one-point mass has the series value") {
    Report rep = lp_bound_report(delta(), 2.0);
    CHECK(rep.pass());
    double lower = 0.0, upper = 0.0, constant = 0.0;
    for (const auto& [k, v] : rep.values) {
        if (k == "ratio_lower") lower = v;
        if (k == "ratio_upper") upper = v;
        if (k == "constant") constant = v;
    }
    // sum over l of (|l|+1)^{-2} = 2 zeta(2) - 1
    double expect = 2.0 * (3.141592653589793 * 3.141592653589793 / 6.0) - 1.0;
    CHECK(lower <= expect + 1e-9);
    CHECK(upper >= expect - 1e-9);
    CHECK(upper - lower <= 0.2);
    CHECK(constant == doctest::Approx(16.0).epsilon(1e-12));
    CHECK(lower > 1.0);
}

TEST_CASE("power bounds hold across p with the stated constants") {
    Rng rng(19);
    CHECK(lp_maximal_constant(2.0) == doctest::Approx(16.0).epsilon(1e-14));
    CHECK(lp_maximal_constant(3.0) == doctest::Approx(24.0).epsilon(1e-14));
    for (int trial = 0; trial < 30; ++trial) {
        GridFunction f = random_function(rng, 20);
        for (double p : {1.5, 2.0, 3.0}) CHECK(lp_bound_report(f, p).pass());
    }
    CHECK_THROWS_AS(lp_bound_report(delta(), 1.0), domain_error);
    CHECK_THROWS_AS(lp_bound_report(delta(), 0.5), domain_error);
}

TEST_CASE("three stacked intervals reduce to multiplicity two, same union") {
    IntervalFamily fam{{0, 2}, {1, 3}, {0, 3}};
    IntervalFamily red = covering_reduce_multiplicity(fam);
    CHECK(interval_multiplicity(red) <= 2);
    IntervalFamily u = interval_union(red);
    REQUIRE(u.size() == 1);
    CHECK(u[0].lo == 0.0);
    CHECK(u[0].hi == 3.0);
}

TEST_CASE("pairwise disjoint families pass through untouched") {
    IntervalFamily fam{{0, 1}, {2, 3}, {4.5, 5}};
    IntervalFamily red = covering_reduce_multiplicity(fam);
    CHECK(red.size() == 3);
}

TEST_CASE("random families keep their union at multiplicity two") {
    Rng rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        IntervalFamily fam;
        for (std::size_t i = 0; i < 1 + rng.below(50); ++i) {
            double lo = rng.uniform(0.0, 8.0);
            fam.push_back({lo, lo + rng.uniform(0.01, 2.0)});
        }
        IntervalFamily red = covering_reduce_multiplicity(fam);
        CHECK(interval_multiplicity(red) <= 2);
        IntervalFamily u1 = interval_union(fam), u2 = interval_union(red);
        REQUIRE(u1.size() == u2.size());
        for (std::size_t i = 0; i < u1.size(); ++i) {
            CHECK(u1[i].lo == u2[i].lo);
            CHECK(u1[i].hi == u2[i].hi);
        }
    }
}

TEST_CASE("a single ball selects itself") {
    BallFamily fam;
    fam.radii = {1.0};
    fam.center_distance = [](std::size_t, std::size_t) { return 0.0; };
    VitaliSelection sel = vitali_select(fam);
    REQUIRE(sel.selected.size() == 1);
    CHECK(sel.selected[0] == 0);
}

TEST_CASE("the larger of two overlapping balls wins and covers the other") {
    BallFamily fam;
    fam.radii = {2.0, 1.0};
    fam.center_distance = [](std::size_t i, std::size_t j) {
        return i == j ? 0.0 : 2.5;
    };
    VitaliSelection sel = vitali_select(fam);
    REQUIRE(sel.selected.size() == 1);
    CHECK(sel.selected[0] == 0);
    // distance 2.5 plus radius 1 is within three times radius 2
    CHECK(sel.cover[1] == 0);
}

TEST_CASE("greedy selection is disjoint and triple-covers on random lines") {
    Rng rng(29);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 1 + rng.below(30);
        std::vector<double> centers(n);
        for (auto& c : centers) c = rng.uniform(0.0, 10.0);
        BallFamily fam;
        fam.radii.resize(n);
        for (auto& r : fam.radii) r = rng.uniform(0.05, 1.5);
        fam.center_distance = [&centers](std::size_t i, std::size_t j) {
            return std::abs(centers[i] - centers[j]);
        };
        VitaliSelection sel = vitali_select(fam);
        for (std::size_t a = 0; a < sel.selected.size(); ++a)
            for (std::size_t b = a + 1; b < sel.selected.size(); ++b) {
                std::size_t i = sel.selected[a], j = sel.selected[b];
                CHECK(std::abs(centers[i] - centers[j]) >=
                      fam.radii[i] + fam.radii[j]);
            }
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t s = sel.selected[sel.cover[i]];
            CHECK(std::abs(centers[i] - centers[s]) + fam.radii[i] <=
                  3.0 * fam.radii[s] * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("single-row products reduce to the plain level bound") {
    Rng rng(31);
    GridFunction f = random_function(rng, 16);
    std::vector<double> lambdas{0.4, 0.2, 0.1};
    ProductGridFunction prod{{f}, {1.0}};
    Report got = product_maximal(prod, lambdas, {2.0});
    Report expect = weak_type_report(f, lambdas);
    REQUIRE(got.checks.size() >= lambdas.size());
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        CHECK(got.checks[i].observed ==
              doctest::Approx(expect.checks[i].observed).epsilon(1e-12));
        CHECK(got.checks[i].pass);
    }
}

TEST_CASE("two half-weighted copies match the single row ratios") {
    Rng rng(37);
    GridFunction f = random_function(rng, 16);
    std::vector<double> lambdas{0.3, 0.15};
    Report one = product_maximal({{f}, {1.0}}, lambdas, {2.0});
    Report two = product_maximal({{f, f}, {0.5, 0.5}}, lambdas, {2.0});
    for (std::size_t i = 0; i < lambdas.size(); ++i)
        CHECK(one.checks[i].observed ==
              doctest::Approx(two.checks[i].observed).epsilon(1e-12));
}

TEST_CASE("ten random rows satisfy both product inequalities") {
    Rng rng(41);
    ProductGridFunction prod;
    for (int i = 0; i < 10; ++i) {
        GridFunction row = random_function(rng, 16);
        row.lo = 0;
        prod.rows.push_back(row);
        prod.weights.push_back(rng.uniform(0.2, 1.5));
    }
    std::size_t widest = 0;
    for (auto& row : prod.rows) widest = std::max(widest, row.values.size());
    for (auto& row : prod.rows) row.values.resize(widest, cplx(0.0, 0.0));
    Report rep = product_maximal(prod, {0.5, 0.25, 0.1}, {1.5, 2.0, 3.0});
    CHECK(rep.pass());
}
