#include "sumlab/metricgeo.hpp"

#include "sumlab/rng.hpp"

#include <algorithm>
#include <cmath>

namespace sumlab {

void UltrametricSpace::validate() const {
    if (alphabet < 2) throw input_error("ultrametric space: alphabet must be >= 2");
    if (!(rho > 0.0 && rho < 1.0))
        throw input_error("ultrametric space: rho must lie in (0,1)");
    if (depth < 1) throw input_error("ultrametric space: depth must be >= 1");
    if (weights.size() != alphabet)
        throw input_error("ultrametric space: one weight per symbol");
    compensated_sum s;
    for (double w : weights) {
        if (!(w > 0.0)) throw input_error("ultrametric space: weights must be positive");
        s.add(w);
    }
    if (std::abs(s.value() - 1.0) > 1e-12)
        throw input_error("ultrametric space: weights must sum to 1");
}

double ultrametric_distance(const Word& x, const Word& y, double rho) {
    if (x.size() != y.size()) throw input_error("ultrametric_distance: length mismatch");
    if (!(rho > 0.0 && rho < 1.0))
        throw domain_error("ultrametric_distance: rho must lie in (0,1)");
    std::size_t agree = 0;
    while (agree < x.size() && x[agree] == y[agree]) ++agree;
    if (agree == x.size()) return 0.0;
    return std::pow(rho, double(agree));
}

double snowflake_distance(const Word& x, const Word& y, double rho, double a) {
    if (!(a > 0.0)) throw domain_error("snowflake_distance: exponent must be positive");
    return std::pow(ultrametric_distance(x, y, rho), a);
}

std::size_t ball_level(const UltrametricSpace& space, double radius) {
    if (!(radius > 0.0)) throw domain_error("ball_level: radius must be positive");
    // smallest k with rho^k < radius; capped at depth, where the ball
    // degenerates to the center alone
    std::size_t k = 0;
    double p = 1.0;
    while (k < space.depth && p >= radius) {
        ++k;
        p *= space.rho;
    }
    if (p >= radius) return space.depth;
    return k;
}

CylinderBall open_ball(const UltrametricSpace& space, const Word& center,
                       double radius) {
    if (center.size() != space.depth)
        throw input_error("open_ball: word length must equal the depth");
    CylinderBall b;
    b.level = ball_level(space, radius);
    b.prefix.assign(center.begin(), center.begin() + long(b.level));
    return b;
}

BallRelation ball_relation(const CylinderBall& a, const CylinderBall& b) {
    const CylinderBall& shallow = a.level <= b.level ? a : b;
    const CylinderBall& deep = a.level <= b.level ? b : a;
    bool nested = std::equal(shallow.prefix.begin(), shallow.prefix.end(),
                             deep.prefix.begin());
    if (!nested) return BallRelation::Disjoint;
    if (a.level == b.level) return BallRelation::Equal;
    return a.level < b.level ? BallRelation::SecondInsideFirst
                             : BallRelation::FirstInsideSecond;
}

double ball_measure(const UltrametricSpace& space, const CylinderBall& b) {
    double m = 1.0;
    for (auto s : b.prefix) m *= space.weights[s];
    return m;
}

namespace {

Word random_word(const UltrametricSpace& space, Rng& rng) {
    Word w(space.depth);
    for (auto& s : w) s = std::uint8_t(rng.below(space.alphabet));
    return w;
}

double random_radius(const UltrametricSpace& space, Rng& rng) {
    // radii straddling the whole scale range, kept off the exact powers
    auto k = double(rng.below(space.depth));
    double jitter = 0.25 + 0.5 * rng.uniform();
    return std::pow(space.rho, k) * jitter + 1e-15;
}

} // namespace

Report ball_trichotomy_check(const UltrametricSpace& space, std::size_t trials,
                             std::uint64_t seed) {
    space.validate();
    Rng rng(seed);
    Report rep;
    rep.name = "ball-trichotomy";
    rep.seed = seed;

    std::size_t violations = 0;
    std::size_t nested_same_center = 0, separated = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        Word x = random_word(space, rng);
        Word y = (t % 3 == 0) ? x : random_word(space, rng);
        double r = random_radius(space, rng);
        double s = random_radius(space, rng);
        CylinderBall bx = open_ball(space, x, r);
        CylinderBall by = open_ball(space, y, s);
        BallRelation rel = ball_relation(bx, by);

        // materialized cylinders: exactly one of the three relations holds
        // (equality counting as mutual containment)
        bool contained_xy = rel == BallRelation::FirstInsideSecond ||
                            rel == BallRelation::Equal;
        bool contained_yx = rel == BallRelation::SecondInsideFirst ||
                            rel == BallRelation::Equal;
        bool disjoint = rel == BallRelation::Disjoint;
        if (!(contained_xy || contained_yx || disjoint)) ++violations;

        if (x == y && r <= s && !contained_xy) ++violations;
        if (x == y) ++nested_same_center;
        double d = ultrametric_distance(x, y, space.rho);
        if (d > 0.0 && r < d && s < d) {
            ++separated;
            if (!disjoint) ++violations;
        }
    }
    rep.check_le("trichotomy violations", double(violations), 0.0);
    rep.value("trials", double(trials));
    rep.value("same_center_cases", double(nested_same_center));
    rep.value("separated_cases", double(separated));
    return rep;
}

Report doubling_constant(const UltrametricSpace& space, std::size_t samples,
                         std::uint64_t seed) {
    space.validate();
    Rng rng(seed);
    Report rep;
    rep.name = "doubling-constant";
    rep.seed = seed;

    double worst_space = 1.0;
    double worst_measure = 1.0;
    for (std::size_t t = 0; t < samples; ++t) {
        Word x = random_word(space, rng);
        double r = random_radius(space, rng);
        std::size_t level = ball_level(space, r);
        std::size_t half_level = ball_level(space, 0.5 * r);
        // a radius-r ball splits into exactly alphabet^(level gap)
        // radius-r/2 cylinders
        worst_space = std::max(
            worst_space, std::pow(double(space.alphabet),
                                  double(half_level - level)));

        std::size_t double_level = ball_level(space, 2.0 * r);
        CylinderBall ball = open_ball(space, x, r);
        CylinderBall doubled;
        doubled.level = double_level;
        doubled.prefix.assign(x.begin(), x.begin() + long(double_level));
        worst_measure = std::max(worst_measure, ball_measure(space, doubled) /
                                                    ball_measure(space, ball));
    }
    double gap = std::ceil(std::log(2.0) / std::log(1.0 / space.rho) - 1e-12);
    double space_bound = std::pow(double(space.alphabet), gap);
    rep.value("space_constant", worst_space);
    rep.value("measure_constant", worst_measure);
    rep.check_le("space doubling constant within |A|^ceil(log2/log(1/rho))",
                 worst_space, space_bound);
    double wmin = *std::min_element(space.weights.begin(), space.weights.end());
    rep.check_le("measure doubling constant within (1/min w)^ceil(log2/log(1/rho))",
                 worst_measure, std::pow(1.0 / wmin, gap));
    return rep;
}

Report snowflake_check(const UltrametricSpace& space, double a,
                       std::size_t trials, std::uint64_t seed) {
    space.validate();
    if (!(a > 0.0)) throw domain_error("snowflake_check: exponent must be positive");
    if (a > 1.0)
        throw domain_error(
            "snowflake_check: exponents above 1 are only metric-safe on "
            "ultrametric inputs; scalar subadditivity requires a <= 1");
    Rng rng(seed);
    Report rep;
    rep.name = "snowflake";
    rep.seed = seed;

    double scalar_worst = -kInf;
    for (std::size_t t = 0; t < trials; ++t) {
        double x = rng.uniform(0.0, 10.0);
        double y = rng.uniform(0.0, 10.0);
        scalar_worst = std::max(
            scalar_worst, std::pow(x + y, a) - (std::pow(x, a) + std::pow(y, a)));
    }
    rep.check_le("(x+y)^a <= x^a + y^a on sampled pairs", scalar_worst, 1e-12);

    double ultra_worst = -kInf;
    for (std::size_t t = 0; t < trials; ++t) {
        Word x = random_word(space, rng);
        Word y = random_word(space, rng);
        Word z = random_word(space, rng);
        double dxz = snowflake_distance(x, z, space.rho, a);
        double dxy = snowflake_distance(x, y, space.rho, a);
        double dyz = snowflake_distance(y, z, space.rho, a);
        ultra_worst = std::max(ultra_worst, dxz - std::max(dxy, dyz));
    }
    rep.check_le("d^a stays an ultrametric on sampled triples", ultra_worst, 1e-15);

    // ball identification: B_d(p, r) and B_{d^a}(p, r^a) are the same
    // cylinder
    UltrametricSpace flaked = space;
    flaked.rho = std::pow(space.rho, a);
    std::size_t mismatches = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        double r = random_radius(space, rng);
        if (ball_level(space, r) != ball_level(flaked, std::pow(r, a)))
            ++mismatches;
    }
    rep.check_le("B_d(p,r) equals B_{d^a}(p,r^a) as cylinders",
                 double(mismatches), 0.0);
    return rep;
}

DimensionEstimate box_dimension(const UltrametricSpace& space, double a,
                                std::size_t k_lo, std::size_t k_hi) {
    space.validate();
    if (!(a > 0.0)) throw domain_error("box_dimension: exponent must be positive");
    if (k_hi < k_lo + 3)
        throw resolution_error("box_dimension: need at least 4 scales");
    if (k_hi >= space.depth)
        throw resolution_error("box_dimension: scales exceed the materialized depth");

    DimensionEstimate est;
    for (std::size_t k = k_lo; k <= k_hi; ++k) {
        // closed balls of radius rho^k are depth-k cylinders: count |A|^k
        double log_count = double(k) * std::log(double(space.alphabet));
        double log_inv_r = a * double(k) * std::log(1.0 / space.rho);
        est.log_count.push_back(log_count);
        est.log_inv_r.push_back(log_inv_r);
    }
    std::size_t m = est.log_count.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        mx += est.log_inv_r[i];
        my += est.log_count[i];
    }
    mx /= double(m);
    my /= double(m);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (est.log_inv_r[i] - mx) * (est.log_inv_r[i] - mx);
        sxy += (est.log_inv_r[i] - mx) * (est.log_count[i] - my);
    }
    est.slope = sxy / sxx;
    est.intercept = my - est.slope * mx;
    for (std::size_t i = 0; i < m; ++i)
        est.max_fit_residual = std::max(
            est.max_fit_residual,
            std::abs(est.log_count[i] - est.slope * est.log_inv_r[i] -
                     est.intercept));
    return est;
}

} // namespace sumlab
