#ifndef SUMLAB_LINALG_HPP
#define SUMLAB_LINALG_HPP

#include <utility>
#include <variant>
#include <vector>

#include "sumlab/common.hpp"
#include "sumlab/report.hpp"

namespace sumlab {

/// Norm selector: p in [1, inf], with p = kInf for the max norm.
struct NormTag {
    double p = 2.0;
    static NormTag one() { return {1.0}; }
    static NormTag two() { return {2.0}; }
    static NormTag inf() { return {kInf}; }
};

/// (sum |v_j|^p)^{1/p}; max of moduli for p = inf.  Throws for p < 1.
double p_norm(const cvector& v, NormTag t);

// Checks the three displayed comparisons between p-norms for p < q:
// monotonicity ||v||_q <= ||v||_p, the dimensional reverse bound
// ||v||_p <= n^{1/p-1/q} ||v||_q, and ||v||_2^2 <= ||v||_1 ||v||_inf
// when {p,q} = {1,2}.
Report norm_inequality_report(const cvector& v, NormTag p, NormTag q);

/// Standard inner product sum v_j conj(w_j).
cplx inner_product(const cvector& v, const cvector& w);

/// ||v|| ||w|| - |<v,w>|, nonnegative up to rounding.
double cauchy_schwarz_gap(const cvector& v, const cvector& w);

/// | (||a-b||^2 + ||a+b||^2) - (2||a||^2 + 2||b||^2) |.
double parallelogram_residual(const cvector& a, const cvector& b);

struct Subspace {
    std::vector<cvector> basis;
};
struct Box {
    std::vector<double> lo, hi; // real coordinates, lo <= hi
};
struct Ball {
    cvector center;
    double radius = 1.0; // Euclidean
};
using ConvexSpec = std::variant<Subspace, Box, Ball>;

// Nearest point of the convex set.  Subspaces solve the Gram system by
// pivoted elimination (rank tolerance 1e-10 times the largest Gram
// diagonal); boxes clamp coordinatewise (real inputs only); balls pull in
// radially.
cvector project(const cvector& v, const ConvexSpec& c);

/// Splits v = w + y with w in span(basis) and y orthogonal to it.
std::pair<cvector, cvector> orthogonal_complement_decompose(
    const cvector& v, const std::vector<cvector>& basis);

/// Solves the Hermitian system G c = rhs by pivoted elimination.
/// Throws input_error when a pivot falls below tol_scale * max diagonal.
cvector solve_gram_system(std::vector<cvector> gram, cvector rhs,
                          double tol_scale = 1e-10);

} // namespace sumlab

#endif
