#ifndef SUMLAB_MAXIMAL_HPP
#define SUMLAB_MAXIMAL_HPP

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "sumlab/common.hpp"
#include "sumlab/report.hpp"

namespace sumlab {

/// Finitely supported function on an integer window [lo, lo+size-1].
struct GridFunction {
    enum class Interp { OnZ, PiecewiseConstant };

    long lo = 0;
    cvector values;
    Interp interp = Interp::OnZ;

    long hi() const { return lo + long(values.size()) - 1; }
    double abs_at(long j) const {
        if (j < lo || j > hi()) return 0.0;
        return std::abs(values[std::size_t(j - lo)]);
    }
    double abs_sum() const;            // sum of moduli
    double abs_power_sum(double p) const;
};

struct MaximalProfile {
    long lo = 0;
    std::vector<double> values;
    std::vector<std::pair<long, long>> witness; // maximizing window per point

    double at(long j) const {
        long idx = j - lo;
        if (idx < 0 || idx >= long(values.size())) return 0.0;
        return values[std::size_t(idx)];
    }
};

// Largest window average sup_{a<=l<=b} (1/(b-a+1)) sum_{j=a}^b |f(j)|.
// Windows never need to extend past the support hull (extra points only
// dilute the average), so the search over hull windows is exact.
double discrete_maximal_at(const GridFunction& f, long l,
                           std::pair<long, long>* witness = nullptr);

/// Exact maximal profile over the support window, with witnesses.
MaximalProfile discrete_maximal(const GridFunction& f);

/// |{l : f*(l) > lambda}|, computed over the provably sufficient finite
/// region (outside distance d of the support, f* <= sum|f| / (d+1)).
long superlevel_count(const GridFunction& f, double lambda);

// Level-set bound |{f* > lambda}| <= (2/lambda) sum |f| on the lambda
// grid; reports the worst observed ratio.
Report weak_type_report(const GridFunction& f,
                        const std::vector<double>& lambdas);

// Power-sum bound sum f*^p <= (4 p 2^{p-1}/(p-1)) sum |f|^p for p > 1.
// The profile sum carries a certified tail for the unbounded region, and
// the report traces the truncation-split chain
// |{f* > lambda}| <= |{(f - f_lambda)* > lambda/2}| <= (4/lambda) *
// sum_{|f| > lambda/2} |f| on a small lambda grid.
Report lp_bound_report(const GridFunction& f, double p);

/// Open interval (lo, hi) with lo < hi.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};
using IntervalFamily = std::vector<Interval>;

// Deletes intervals contained in the union of two others until no point
// lies in more than two; the union is preserved exactly.
IntervalFamily covering_reduce_multiplicity(IntervalFamily family);

/// Maximal multiplicity of the family (computed by an endpoint sweep).
int interval_multiplicity(const IntervalFamily& family);

/// Union as a sorted list of maximal open intervals (exact endpoints).
IntervalFamily interval_union(const IntervalFamily& family);

// Metric-agnostic ball family: radii plus a center-distance oracle.
// Ultrametric families use the max-disjointness rule instead of the sum
// rule.
struct BallFamily {
    std::vector<double> radii;
    std::function<double(std::size_t, std::size_t)> center_distance;
    bool ultrametric = false;

    std::size_t size() const { return radii.size(); }
};

struct VitaliSelection {
    std::vector<std::size_t> selected; // pairwise disjoint, by decreasing radius
    std::vector<std::size_t> cover;    // per input ball: index into selected
                                       // of a ball whose triple contains it
};

// Greedy selection in decreasing radius order.  Every selected pair is
// disjoint, and every input ball meets a selected ball of no smaller
// radius, hence lies inside its triple.
VitaliSelection vitali_select(const BallFamily& family);

struct ProductGridFunction {
    std::vector<GridFunction> rows; // common window
    std::vector<double> weights;    // mu_x > 0 per row
};

// Row-wise maximal profiles plus the two product-space inequalities:
// the weighted level-count bound with constant 2 and the weighted power
// sums with constant 4 p 2^{p-1}/(p-1).
Report product_maximal(const ProductGridFunction& f,
                       const std::vector<double>& lambdas,
                       const std::vector<double>& ps);

/// 4 p 2^{p-1} / (p-1).
double lp_maximal_constant(double p);

} // namespace sumlab

#endif
