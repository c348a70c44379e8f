#ifndef SUMLAB_ERGODIC_HPP
#define SUMLAB_ERGODIC_HPP

#include <cstdint>
#include <vector>

#include "sumlab/common.hpp"
#include "sumlab/report.hpp"

namespace sumlab {

class depth_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Two-sided sequence space over a finite alphabet with a product Bernoulli
// measure, materialized to coordinates -depth..depth; the dynamics is the
// coordinate shift.
struct ShiftSystem {
    std::size_t alphabet = 2;
    std::vector<double> weights; // per symbol, positive, summing to 1
    long depth = 12;

    void validate() const;
};

// Function reading finitely many coordinates; the value table is indexed
// by the symbol pattern on those coordinates (first coordinate most
// significant).
class CylinderFunction {
public:
    CylinderFunction(std::vector<long> coords, cvector table,
                     std::size_t alphabet);
    static CylinderFunction coordinate(long coord, cvector symbol_values);
    static CylinderFunction constant(cplx value, std::size_t alphabet);

    const std::vector<long>& coords() const { return coords_; }
    long min_coord() const;
    long max_coord() const;
    std::size_t alphabet() const { return alphabet_; }
    const cvector& table() const { return table_; }

    /// Value on a symbol pattern covering coordinates [base, base+len).
    cplx eval(const std::vector<std::uint8_t>& pattern, long base) const;

    /// The composition with the s-fold shift reads coordinates + s.
    CylinderFunction shifted(long s) const;

private:
    std::vector<long> coords_;
    cvector table_;
    std::size_t alphabet_;
};

/// Exact integral of a cylinder function for the product measure.
cplx shift_space_mean(const ShiftSystem& sys, const CylinderFunction& f);

/// Finite measure-preserving system: a permutation with invariant weights.
struct FiniteSystem {
    std::vector<std::size_t> perm; // x -> perm[x]
    std::vector<double> mu;        // positive, constant along orbits

    std::size_t size() const { return perm.size(); }
    void validate() const;
    std::vector<std::vector<std::size_t>> orbits() const;
};

/// T f = f o phi on a finite system.
cvector finite_transform(const FiniteSystem& sys, const cvector& f);

/// (sum mu |f|^p)^{1/p}.
double finite_lp_norm(const FiniteSystem& sys, const cvector& f, double p);

/// sum mu f.
cplx finite_integral(const FiniteSystem& sys, const cvector& f);

struct BirkhoffResult {
    cvector averages;   // per sampled point
    cplx space_mean;    // exact integral of f
    std::vector<double> deviations;
    std::uint64_t seed = 0;
    Report report;
};

// Orbit averages (1/(n+1)) sum_j f(phi^j x) over sampled points of a shift
// system, against the exact space mean.  Requires
// n + max coordinate <= depth, otherwise depth_error names the depth
// needed.
BirkhoffResult birkhoff_average(const ShiftSystem& sys,
                                const CylinderFunction& f, std::size_t n,
                                std::size_t n_points, std::uint64_t seed);

/// Same on a finite system, exact for the listed points.
BirkhoffResult birkhoff_average(const FiniteSystem& sys, const cvector& f,
                                std::size_t n,
                                const std::vector<std::size_t>& points);

struct CoboundaryDecomposition {
    cvector invariant;  // a with T a = a
    cvector potential;  // b with a + (T b - b) = f
    double residual = 0.0;
};

// Splits f = a + (T b - b): a is the orbit-wise mean (exactly invariant)
// and b accumulates f - a along each cycle, normalized to zero mean per
// orbit.
CoboundaryDecomposition coboundary_decompose(const FiniteSystem& sys,
                                             const cvector& f);

struct TransferenceResult {
    std::vector<double> maximal_values; // per point / per enumerated pattern
    std::vector<double> point_weights;  // measure carried by each entry
    double integral_abs = 0.0;          // exact integral of |f|
    Report report;
};

// Two-sided maximal averages A_n*(f)(x) = max over windows [-k, l],
// 0 <= k, l <= n, of the window mean of |f| along the orbit.  The report
// asserts the level bound with constant 2, the power bounds for
// p in {1.5, 2, 3}, monotonicity in n, and commutation with the shift.
TransferenceResult transference_maximal(const FiniteSystem& sys,
                                        const cvector& f, std::size_t n,
                                        const std::vector<double>& lambdas);

/// Exact expectation version over all cylinders the window can read.
TransferenceResult transference_maximal(const ShiftSystem& sys,
                                        const CylinderFunction& f,
                                        std::size_t n,
                                        const std::vector<double>& lambdas);

// Checks sum_{n<=n_max} ||T^n f||_p^p / (n+1)^p against the exact factored
// form (sum (n+1)^{-p}) ||f||_p^p, and that orbit values |T^n f|/(n+1)
// decay below the sup-norm envelope.
Report power_tail_check(const FiniteSystem& sys, const cvector& f, double p,
                        std::size_t n_max);

/// Shift-system variant; integrals of |T^n f|^p are exact cylinder sums.
Report power_tail_check(const ShiftSystem& sys, const CylinderFunction& f,
                        double p, std::size_t n_max);

struct InvariantMeasureResult {
    std::vector<double> averaged; // lambda_n point weights
    double defect = 0.0;          // total variation of T* lambda_n - lambda_n
    double mass = 0.0;
};

// Pushforward averaging lambda_n = (1/(n+1)) sum (T*)^j lambda on a finite
// system; the defect is exactly bounded by 2 ||lambda|| / (n+1), and a
// point mass on a q-cycle with q | n+1 lands exactly on the uniform orbit
// measure.
InvariantMeasureResult krylov_bogolyubov(const FiniteSystem& sys,
                                         const std::vector<double>& start,
                                         std::size_t n);

struct CountingAverageResult {
    std::int64_t mass_num = 0, mass_den = 1; // L1 mass as an exact rational
    std::int64_t sup_num = 0, sup_den = 1;   // sup norm as an exact rational
    long support_lo = 0, support_hi = 0;
};

// Averages of a one-point mass under the integer shift with counting
// weights: the mass of the average stays exactly 1 while the sup norm
// decays as 1/(n+1).  Computed with integer arithmetic so "exactly" means
// exactly.
CountingAverageResult shifted_delta_average(std::size_t n);

} // namespace sumlab

#endif
