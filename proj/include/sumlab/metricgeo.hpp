#ifndef SUMLAB_METRICGEO_HPP
#define SUMLAB_METRICGEO_HPP

#include <cstdint>
#include <vector>

#include "sumlab/common.hpp"
#include "sumlab/report.hpp"

namespace sumlab {

/// Point of the sequence space: symbols of fixed length depth.
using Word = std::vector<std::uint8_t>;

// Finite-depth symbol-sequence space with the scale-rho ultrametric
// d(x, y) = rho^(number of initial agreements) and a product measure.
struct UltrametricSpace {
    std::size_t alphabet = 2;
    double rho = 0.5;
    std::size_t depth = 12;
    std::vector<double> weights; // per symbol, positive, summing to 1

    void validate() const;
};

/// rho^(count of initial agreements); zero for identical words.
double ultrametric_distance(const Word& x, const Word& y, double rho);

/// d(x,y)^a, a metric for a in (0,1] and an ultrametric for every a > 0
/// when d is one.
double snowflake_distance(const Word& x, const Word& y, double rho, double a);

// Open balls are agreement cylinders: B(x, r) fixes the first
// ball_level(r) symbols of x.  Level depth means the singleton {x}.
std::size_t ball_level(const UltrametricSpace& space, double radius);

struct CylinderBall {
    Word prefix; // length = level
    std::size_t level = 0;
};

CylinderBall open_ball(const UltrametricSpace& space, const Word& center,
                       double radius);

enum class BallRelation { Equal, FirstInsideSecond, SecondInsideFirst, Disjoint };
BallRelation ball_relation(const CylinderBall& a, const CylinderBall& b);

/// Product-measure mass of a cylinder ball.
double ball_measure(const UltrametricSpace& space, const CylinderBall& b);

// Sampled configurations (x, r, y, t): every pair of balls is nested or
// disjoint, with the paper-exact cases (same center nests; both radii
// below the distance separate) spot-checked.
Report ball_trichotomy_check(const UltrametricSpace& space, std::size_t trials,
                             std::uint64_t seed);

// Exact doubling constants on sampled balls: the cover count of B(x, r)
// by radius r/2 balls (a cylinder count) and the measure ratio
// mu(2B)/mu(B).
Report doubling_constant(const UltrametricSpace& space, std::size_t samples,
                         std::uint64_t seed);

// Scalar subadditivity (x+y)^a <= x^a + y^a, preservation of the
// ultrametric inequality under d -> d^a, and the exact ball identification
// B_d(p, r) = B_{d^a}(p, r^a).
Report snowflake_check(const UltrametricSpace& space, double a,
                       std::size_t trials, std::uint64_t seed);

struct DimensionEstimate {
    std::vector<double> log_inv_r;
    std::vector<double> log_count;
    double slope = 0.0;
    double intercept = 0.0;
    double max_fit_residual = 0.0;
};

// Box-counting estimate: minimal radius-rho^k covers are cylinder counts
// alphabet^k, and the snowflake exponent rescales log(1/r) by a, so the
// fitted slope is log|A| / (a log(1/rho)).
DimensionEstimate box_dimension(const UltrametricSpace& space, double a,
                                std::size_t k_lo, std::size_t k_hi);

} // namespace sumlab

#endif
