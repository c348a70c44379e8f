#include "sumlab/series.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace sumlab {

namespace {

const std::map<std::string, std::function<cplx(std::size_t)>>& rule_registry() {
    static const std::map<std::string, std::function<cplx(std::size_t)>> rules = {
        {"harmonic", [](std::size_t j) { return cplx(1.0 / (double(j) + 1.0), 0.0); }},
        {"alternating-harmonic",
         [](std::size_t j) {
             double sign = (j % 2 == 0) ? 1.0 : -1.0;
             return cplx(sign / (double(j) + 1.0), 0.0);
         }},
        {"inverse-squares",
         [](std::size_t j) {
             double d = double(j) + 1.0;
             return cplx(1.0 / (d * d), 0.0);
         }},
        {"ones", [](std::size_t) { return cplx(1.0, 0.0); }},
    };
    return rules;
}

cplx complex_pow_int(cplx base, std::size_t e) {
    cplx result(1.0, 0.0);
    cplx b = base;
    while (e > 0) {
        if (e & 1) result *= b;
        b *= b;
        e >>= 1;
    }
    return result;
}

} // namespace

SeriesSpec SeriesSpec::list(cvector terms) {
    SeriesSpec s;
    s.kind_ = Kind::List;
    s.list_ = std::move(terms);
    return s;
}

SeriesSpec SeriesSpec::geometric(cplx ratio) {
    SeriesSpec s;
    s.kind_ = Kind::Geometric;
    s.ratio_ = ratio;
    return s;
}

SeriesSpec SeriesSpec::weighted_geometric(cplx ratio, int degree) {
    if (degree < 0) throw input_error("weighted_geometric: degree must be >= 0");
    SeriesSpec s;
    s.kind_ = Kind::WeightedGeometric;
    s.ratio_ = ratio;
    s.degree_ = degree;
    return s;
}

SeriesSpec SeriesSpec::custom(const std::string& rule_id) {
    if (rule_registry().find(rule_id) == rule_registry().end())
        throw input_error("unknown custom series rule: " + rule_id);
    SeriesSpec s;
    s.kind_ = Kind::Custom;
    s.rule_ = rule_id;
    return s;
}

std::vector<std::string> SeriesSpec::custom_rule_ids() {
    std::vector<std::string> ids;
    for (const auto& [k, v] : rule_registry()) ids.push_back(k);
    return ids;
}

cplx SeriesSpec::term(std::size_t j) const {
    switch (kind_) {
    case Kind::List:
        return j < list_.size() ? list_[j] : cplx(0.0, 0.0);
    case Kind::Geometric:
        return complex_pow_int(ratio_, j);
    case Kind::WeightedGeometric: {
        double w = std::pow(double(j) + 1.0, double(degree_));
        return w * complex_pow_int(ratio_, j);
    }
    case Kind::Custom:
        return rule_registry().at(rule_)(j);
    }
    throw input_error("SeriesSpec: bad kind");
}

cvector SeriesSpec::terms(std::size_t n) const {
    cvector out;
    out.reserve(n + 1);
    // Incremental products for the geometric kinds keep the cost linear.
    if (kind_ == Kind::Geometric || kind_ == Kind::WeightedGeometric) {
        cplx p(1.0, 0.0);
        for (std::size_t j = 0; j <= n; ++j) {
            if (kind_ == Kind::Geometric)
                out.push_back(p);
            else
                out.push_back(std::pow(double(j) + 1.0, double(degree_)) * p);
            p *= ratio_;
        }
        return out;
    }
    for (std::size_t j = 0; j <= n; ++j) out.push_back(term(j));
    return out;
}

PartialSumTrace partial_sums(const SeriesSpec& s, std::size_t n) {
    cvector a = s.terms(n);
    PartialSumTrace t;
    t.kind = PartialSumTrace::Kind::PartialSums;
    t.values.reserve(n + 1);
    compensated_sum re, im;
    for (std::size_t j = 0; j <= n; ++j) {
        re.add(a[j].real());
        im.add(a[j].imag());
        t.values.emplace_back(re.value(), im.value());
    }
    return t;
}

PartialSumTrace cesaro_means(const cvector& seq) {
    PartialSumTrace t;
    t.kind = PartialSumTrace::Kind::CesaroMeansOfSequence;
    t.values.reserve(seq.size());
    compensated_sum re, im;
    for (std::size_t m = 0; m < seq.size(); ++m) {
        re.add(seq[m].real());
        im.add(seq[m].imag());
        t.values.emplace_back(re.value() / double(m + 1),
                              im.value() / double(m + 1));
    }
    return t;
}

SummabilityReport cesaro_sum(const SeriesSpec& s, std::size_t n, double tol) {
    if (n < 1) throw domain_error("cesaro_sum: n must be >= 1");
    if (!(tol > 0.0)) throw domain_error("cesaro_sum: tol must be positive");

    cvector a = s.terms(n);

    // Route 1: averages of the partial sums b_0..b_l.
    cvector beta_avg(n + 1);
    {
        compensated_sum bre, bim;   // running partial sum b_l
        compensated_sum sre, sim;   // running sum of the b's
        for (std::size_t l = 0; l <= n; ++l) {
            bre.add(a[l].real());
            bim.add(a[l].imag());
            sre.add(bre.value());
            sim.add(bim.value());
            beta_avg[l] = cplx(sre.value() / double(l + 1),
                               sim.value() / double(l + 1));
        }
    }

    // Route 2: the direct weights (l+1-j)/(l+1), accumulated as
    // b_l - (sum_j j*a_j)/(l+1).
    cvector beta_weighted(n + 1);
    {
        compensated_sum bre, bim;
        compensated_sum jre, jim;
        for (std::size_t l = 0; l <= n; ++l) {
            bre.add(a[l].real());
            bim.add(a[l].imag());
            jre.add(double(l) * a[l].real());
            jim.add(double(l) * a[l].imag());
            beta_weighted[l] = cplx(bre.value() - jre.value() / double(l + 1),
                                    bim.value() - jim.value() / double(l + 1));
        }
    }

    double scale = 1.0;
    for (const auto& b : beta_avg) scale = std::max(scale, std::abs(b));
    for (std::size_t l = 0; l <= n; ++l) {
        if (std::abs(beta_avg[l] - beta_weighted[l]) > 1e-9 * scale)
            throw consistency_error(
                "cesaro_sum: averaging and weighted formulas disagree at step " +
                std::to_string(l));
    }

    SummabilityReport rep;
    rep.method = SummabilityReport::Method::Cesaro;
    rep.trace.kind = PartialSumTrace::Kind::CesaroMeansOfSeries;
    rep.trace.values = beta_avg;

    // Stabilization over the trailing quarter (at least 16 points when
    // available).
    std::size_t win = std::max<std::size_t>((n + 1) / 4, std::min<std::size_t>(16, n + 1));
    std::size_t start = n + 1 - win;
    double spread = 0.0;
    double term_ratio = 0.0;
    rep.diagnostics.reserve(win);
    for (std::size_t l = start; l <= n; ++l) {
        double d = std::abs(beta_avg[l] - beta_avg[n]);
        rep.diagnostics.push_back(d);
        spread = std::max(spread, d);
        term_ratio = std::max(term_ratio, std::abs(a[l]) / double(l + 1));
    }
    rep.stabilization_spread = spread;
    rep.trailing_term_over_index = term_ratio;
    if (spread <= tol) rep.estimate = beta_avg[n];
    return rep;
}

cplx extrapolate_to_zero(const std::vector<double>& xs, const cvector& ys) {
    if (xs.size() != ys.size() || xs.empty())
        throw input_error("extrapolate_to_zero: need matching nonempty inputs");
    cvector p = ys;
    std::size_t n = xs.size();
    // Neville's scheme evaluated at x = 0: each level is one linear
    // extrapolation of the level below.
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = 0; i + level < n; ++i)
            p[i] = (xs[i] * p[i + 1] - xs[i + level] * p[i]) /
                   (xs[i] - xs[i + level]);
    return p[0];
}

SummabilityReport abel_sum(const SeriesSpec& s,
                           const std::vector<double>& r_grid,
                           std::size_t n_terms, double tail_tol) {
    if (r_grid.empty()) throw domain_error("abel_sum: empty r grid");
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        if (!(r_grid[i] > 0.0 && r_grid[i] < 1.0))
            throw domain_error("abel_sum: grid values must lie in (0,1)");
        if (i > 0 && !(r_grid[i] > r_grid[i - 1]))
            throw domain_error("abel_sum: grid must be strictly increasing");
    }
    AdmissibilityResult adm = is_admissible(s);
    if (adm.cls == AdmissibilityResult::Class::NotAdmissible)
        throw domain_error("abel_sum: series is not admissible (radius " +
                           std::to_string(adm.radius) + ")");

    cvector a = s.terms(n_terms);
    std::size_t effective_n = n_terms;
    if (s.is_finite())
        effective_n = s.list_terms().empty() ? 0 : s.list_terms().size() - 1;

    SummabilityReport rep;
    rep.method = SummabilityReport::Method::Abel;
    rep.trace.kind = PartialSumTrace::Kind::AbelEvaluations;

    for (double r : r_grid) {
        compensated_sum fre, fim;
        double rpow = 1.0;
        double last_mod = 0.0, prev_mod = 0.0;
        double max_ratio_tail = 0.0;
        bool ratio_valid = true; // a vanishing trailing term breaks the chain
        std::size_t tail_start = n_terms - std::min<std::size_t>(n_terms, n_terms / 4);
        for (std::size_t j = 0; j <= n_terms; ++j) {
            cplx t = a[j] * rpow;
            fre.add(t.real());
            fim.add(t.imag());
            double m = std::abs(t);
            if (j >= tail_start) {
                if (m == 0.0) ratio_valid = false;
                if (j > 0 && prev_mod > 0.0)
                    max_ratio_tail = std::max(max_ratio_tail, m / prev_mod);
            }
            prev_mod = m;
            if (j == n_terms) last_mod = m;
            rpow *= r;
        }
        rep.trace.values.emplace_back(fre.value(), fim.value());

        // Certified truncation tail.  A finite list has no tail at all;
        // otherwise take the best of the probe comparison
        // M_t (r/t)^{n+1} / (1 - r/t) and the trailing-ratio geometric
        // bound (the registered families have eventually nonincreasing
        // term ratios, which makes both rigorous).
        double tail = kInf;
        if (s.is_finite() && n_terms >= effective_n) {
            tail = 0.0;
        } else {
            double t_probe = 0.5 * (1.0 + r);
            double m_probe = 0.0;
            std::size_t argmax = 0;
            double tp = 1.0;
            for (std::size_t j = 0; j <= n_terms; ++j) {
                double v = std::abs(a[j]) * tp;
                if (v > m_probe) {
                    m_probe = v;
                    argmax = j;
                }
                tp *= t_probe;
            }
            if (argmax + 1 < n_terms) {
                double q = r / t_probe;
                tail = m_probe * std::pow(q, double(n_terms) + 1.0) / (1.0 - q);
            }
            if (ratio_valid && max_ratio_tail > 0.0 && max_ratio_tail < 1.0) {
                double tb = last_mod * max_ratio_tail / (1.0 - max_ratio_tail);
                tail = std::min(tail, tb);
            }
        }
        rep.diagnostics.push_back(tail);
    }

    double f_scale = std::max(1.0, std::abs(rep.trace.values.back()));
    if (!(rep.diagnostics.back() <= tail_tol * f_scale))
        throw resolution_error(
            "abel_sum: truncation tail bound " +
            std::to_string(rep.diagnostics.back()) +
            " exceeds tolerance at the largest grid point; raise n_terms");

    std::size_t k = std::min<std::size_t>(3, r_grid.size());
    std::vector<double> eps(k);
    cvector vals(k);
    for (std::size_t i = 0; i < k; ++i) {
        eps[i] = 1.0 - r_grid[r_grid.size() - k + i];
        vals[i] = rep.trace.values[r_grid.size() - k + i];
    }
    rep.estimate = extrapolate_to_zero(eps, vals);
    if (k < 3)
        rep.notes.push_back("fewer than three grid points; reduced-order extrapolation");
    if (s.kind() == SeriesSpec::Kind::Custom)
        rep.notes.push_back("tail certificate is heuristic for custom rules");
    return rep;
}

AdmissibilityResult is_admissible(const SeriesSpec& s,
                                  const AdmissibilityProbe& probe) {
    if (probe.n_probe < 16)
        throw domain_error("is_admissible: n_probe must be >= 16");
    AdmissibilityResult res;
    if (s.is_finite()) {
        res.cls = AdmissibilityResult::Class::Admissible;
        res.radius = kInf;
        return res;
    }
    std::size_t n = probe.n_probe;
    cvector a = s.terms(n);

    double limsup = 0.0;
    for (std::size_t j = n / 2; j <= n; ++j) {
        double m = std::abs(a[j]);
        if (m > 0.0) limsup = std::max(limsup, std::pow(m, 1.0 / double(j)));
    }
    res.radius = limsup > 0.0 ? 1.0 / limsup : kInf;

    // Boundedness of a_j t^j at the probe points: clear trailing growth
    // at some t vetoes the admissible classification.
    bool growth = false;
    for (double t : probe.t_values) {
        double head = 0.0, trail = 0.0;
        double tp = 1.0;
        for (std::size_t j = 0; j <= n; ++j) {
            double v = std::abs(a[j]) * tp;
            if (j < n / 2)
                head = std::max(head, v);
            else
                trail = std::max(trail, v);
            tp *= t;
        }
        if (trail > 10.0 * std::max(head, 1e-300)) growth = true;
    }

    double eps = std::max(0.05, 2.0 * std::log(double(n) + 1.0) / double(n));
    if (res.radius >= 1.0 - eps && !growth)
        res.cls = AdmissibilityResult::Class::Admissible;
    else if (res.radius < 1.0 - 2.0 * eps)
        res.cls = AdmissibilityResult::Class::NotAdmissible;
    else
        res.cls = AdmissibilityResult::Class::Undetermined;
    return res;
}

SeriesSpec cauchy_product(const SeriesSpec& a, const SeriesSpec& b,
                          std::size_t n) {
    cvector ta = a.terms(n);
    cvector tb = b.terms(n);
    cvector c(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        compensated_sum re, im;
        for (std::size_t j = 0; j <= k; ++j) {
            cplx prod = ta[j] * tb[k - j];
            re.add(prod.real());
            im.add(prod.imag());
        }
        c[k] = cplx(re.value(), im.value());
    }
    return SeriesSpec::list(std::move(c));
}

double summation_by_parts_residual(const SeriesSpec& s, cplx z,
                                   std::size_t n) {
    if (!(std::abs(z) < 1.0))
        throw domain_error("summation_by_parts_residual: |z| must be < 1");
    cvector a = s.terms(n);

    cplx lhs(0.0, 0.0);
    cplx b(0.0, 0.0);       // running partial sum
    cplx rhs_sum(0.0, 0.0); // sum of b_j z^j for j <= n-1
    cplx zp(1.0, 0.0);
    for (std::size_t j = 0; j <= n; ++j) {
        lhs += a[j] * zp;
        b += a[j];
        if (j < n) rhs_sum += b * zp;
        zp *= z;
    }
    // zp now holds z^{n+1}; recompute z^n directly to avoid the extra factor.
    cplx zn(1.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) zn *= z;
    cplx rhs = (cplx(1.0, 0.0) - z) * rhs_sum + b * zn;
    return std::abs(lhs - rhs);
}

} // namespace sumlab
