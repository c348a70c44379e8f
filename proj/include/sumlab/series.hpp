#ifndef SUMLAB_SERIES_HPP
#define SUMLAB_SERIES_HPP

#include <optional>
#include <string>
#include <vector>

#include "sumlab/common.hpp"

namespace sumlab {

// Term generator for an infinite complex series.  Kinds:
//   list               a_j read from a finite list, 0 beyond the end
//   geometric          a_j = ratio^j
//   weighted geometric a_j = (j+1)^degree * ratio^j
//   custom             a_j from a named registered rule
// Term evaluation is deterministic; the same index always yields the
// same value.
class SeriesSpec {
public:
    enum class Kind { List, Geometric, WeightedGeometric, Custom };

    static SeriesSpec list(cvector terms);
    static SeriesSpec geometric(cplx ratio);
    static SeriesSpec weighted_geometric(cplx ratio, int degree);
    /// Throws input_error for an unknown rule id.
    static SeriesSpec custom(const std::string& rule_id);

    cplx term(std::size_t j) const;
    cvector terms(std::size_t n) const; // a_0 ... a_n

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Kind::List; }
    const cvector& list_terms() const { return list_; }
    cplx ratio() const { return ratio_; }
    int degree() const { return degree_; }
    const std::string& rule_id() const { return rule_; }

    static std::vector<std::string> custom_rule_ids();

private:
    SeriesSpec() = default;
    Kind kind_ = Kind::List;
    cvector list_;
    cplx ratio_ = 0.0;
    int degree_ = 0;
    std::string rule_;
};

struct PartialSumTrace {
    enum class Kind {
        PartialSums,
        CesaroMeansOfSequence,
        CesaroMeansOfSeries,
        AbelEvaluations
    };
    Kind kind = Kind::PartialSums;
    cvector values;
};

struct SummabilityReport {
    enum class Method { Classical, Cesaro, Abel };
    Method method = Method::Classical;
    std::optional<cplx> estimate; // empty == divergent flag
    PartialSumTrace trace;
    // Per-step quantities; meaning depends on the method.  For Cesaro this
    // is |beta_l - beta_n| over the stabilization window, for Abel the
    // certified truncation tail bound per grid point.
    std::vector<double> diagnostics;
    double stabilization_spread = 0.0;
    // Trailing maximum of |a_l|/(l+1); must vanish for a summable series.
    double trailing_term_over_index = 0.0;
    std::vector<std::string> notes;

    bool divergent() const { return !estimate.has_value(); }
};

struct AdmissibilityProbe {
    std::vector<double> t_values{0.9, 0.99, 0.999};
    std::size_t n_probe = 256;
};

struct AdmissibilityResult {
    enum class Class { Admissible, NotAdmissible, Undetermined };
    Class cls = Class::Undetermined;
    double radius = 0.0; // estimated radius of convergence
};

/// Partial sums b_l = a_0 + ... + a_l for l = 0..n.
PartialSumTrace partial_sums(const SeriesSpec& s, std::size_t n);

/// Running averages (z_0 + ... + z_m) / (m+1) of a sequence.
PartialSumTrace cesaro_means(const cvector& seq);

// Cesaro summation: beta_n computed both by averaging partial sums and by
// the direct weight (n+1-j)/(n+1); the two routes must agree pointwise or
// a consistency_error is thrown.  The estimate is set when the trailing
// quarter of the beta trace stabilizes within tol.
SummabilityReport cesaro_sum(const SeriesSpec& s, std::size_t n, double tol);

// Abel summation: evaluates f(r) = sum a_j r^j on the grid with a certified
// truncation tail, then extrapolates the last three grid points to r = 1 by
// iterated linear (Richardson/Neville) extrapolation in 1-r.
SummabilityReport abel_sum(const SeriesSpec& s,
                           const std::vector<double>& r_grid,
                           std::size_t n_terms,
                           double tail_tol = 1e-12);

/// Radius-of-convergence classification from a root test over the probe
/// window plus boundedness of a_j t^j at the probe points.
AdmissibilityResult is_admissible(const SeriesSpec& s,
                                  const AdmissibilityProbe& probe = {});

/// Convolution c_k = sum_{j<=k} a_j b_{k-j}, returned as a list series.
SeriesSpec cauchy_product(const SeriesSpec& a, const SeriesSpec& b,
                          std::size_t n);

// Modulus of the difference between sum_{j<=n} a_j z^j and
// (1-z) * sum_{j<=n-1} b_j z^j + b_n z^n, where b are the partial sums.
double summation_by_parts_residual(const SeriesSpec& s, cplx z,
                                   std::size_t n);

/// Iterated linear extrapolation of (xs, ys) to x = 0 (Neville's scheme).
cplx extrapolate_to_zero(const std::vector<double>& xs, const cvector& ys);

} // namespace sumlab

#endif
