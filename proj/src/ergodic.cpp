#include "sumlab/ergodic.hpp"

#include "sumlab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace sumlab {

void ShiftSystem::validate() const {
    if (alphabet < 2) throw input_error("shift system: alphabet size must be >= 2");
    if (weights.size() != alphabet)
        throw input_error("shift system: one weight per symbol required");
    compensated_sum s;
    for (double w : weights) {
        if (!(w > 0.0)) throw input_error("shift system: weights must be positive");
        s.add(w);
    }
    if (std::abs(s.value() - 1.0) > 1e-12)
        throw input_error("shift system: weights must sum to 1");
    if (depth < 0) throw input_error("shift system: negative depth");
}

CylinderFunction::CylinderFunction(std::vector<long> coords, cvector table,
                                   std::size_t alphabet)
    : coords_(std::move(coords)), table_(std::move(table)), alphabet_(alphabet) {
    if (alphabet_ < 2) throw input_error("cylinder function: alphabet must be >= 2");
    if (!std::is_sorted(coords_.begin(), coords_.end()) ||
        std::adjacent_find(coords_.begin(), coords_.end()) != coords_.end())
        throw input_error("cylinder function: coordinates must be sorted and unique");
    std::size_t expect = 1;
    for (std::size_t i = 0; i < coords_.size(); ++i) expect *= alphabet_;
    if (table_.size() != expect)
        throw input_error("cylinder function: table size must be alphabet^#coords");
}

CylinderFunction CylinderFunction::coordinate(long coord, cvector symbol_values) {
    std::size_t a = symbol_values.size();
    return CylinderFunction({coord}, std::move(symbol_values), a);
}

CylinderFunction CylinderFunction::constant(cplx value, std::size_t alphabet) {
    return CylinderFunction({}, cvector{value}, alphabet);
}

long CylinderFunction::min_coord() const {
    return coords_.empty() ? 0 : coords_.front();
}

long CylinderFunction::max_coord() const {
    return coords_.empty() ? 0 : coords_.back();
}

cplx CylinderFunction::eval(const std::vector<std::uint8_t>& pattern,
                            long base) const {
    std::size_t idx = 0;
    for (long c : coords_) {
        long off = c - base;
        if (off < 0 || off >= long(pattern.size()))
            throw input_error("cylinder function: pattern does not cover coords");
        idx = idx * alphabet_ + pattern[std::size_t(off)];
    }
    return table_[idx];
}

CylinderFunction CylinderFunction::shifted(long s) const {
    std::vector<long> c = coords_;
    for (auto& x : c) x += s;
    return CylinderFunction(std::move(c), table_, alphabet_);
}

namespace {

// Enumerates all symbol patterns of the given length with their product
// weights.  Caps the state count so callers cannot blow up by accident.
void for_each_pattern(
    std::size_t alphabet, std::size_t length, const std::vector<double>& w,
    const std::function<void(const std::vector<std::uint8_t>&, double)>& fn) {
    double states = std::pow(double(alphabet), double(length));
    if (states > double(1 << 22))
        throw resolution_error("cylinder enumeration too large (over 2^22 states)");
    std::vector<std::uint8_t> pattern(length, 0);
    while (true) {
        double weight = 1.0;
        for (auto s : pattern) weight *= w[s];
        fn(pattern, weight);
        std::size_t i = length;
        while (i > 0) {
            if (++pattern[i - 1] < alphabet) break;
            pattern[i - 1] = 0;
            --i;
        }
        if (i == 0) break;
    }
}

std::vector<std::size_t> inverse_perm(const std::vector<std::size_t>& perm) {
    std::vector<std::size_t> inv(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = i;
    return inv;
}

// max over 0 <= k, l <= n of the average of values[center-k .. center+l];
// prefix holds cumulative sums of the value array.
double two_sided_max_average(const std::vector<double>& prefix, std::size_t center,
                             std::size_t n) {
    double best = 0.0;
    for (std::size_t k = 0; k <= n; ++k)
        for (std::size_t l = 0; l <= n; ++l) {
            double sum = prefix[center + l + 1] - prefix[center - k];
            best = std::max(best, sum / double(k + l + 1));
        }
    return best;
}

} // namespace

cplx shift_space_mean(const ShiftSystem& sys, const CylinderFunction& f) {
    sys.validate();
    if (f.alphabet() != sys.alphabet)
        throw input_error("shift_space_mean: alphabet mismatch");
    if (f.coords().empty()) return f.table()[0];
    long base = f.min_coord();
    std::size_t len = std::size_t(f.max_coord() - base + 1);
    compensated_sum re, im;
    for_each_pattern(sys.alphabet, len, sys.weights,
                     [&](const std::vector<std::uint8_t>& p, double w) {
                         cplx v = f.eval(p, base);
                         re.add(w * v.real());
                         im.add(w * v.imag());
                     });
    return {re.value(), im.value()};
}

void FiniteSystem::validate() const {
    if (perm.empty()) throw input_error("finite system: empty ground set");
    if (mu.size() != perm.size())
        throw input_error("finite system: one weight per point required");
    std::vector<bool> seen(perm.size(), false);
    for (std::size_t x = 0; x < perm.size(); ++x) {
        if (perm[x] >= perm.size() || seen[perm[x]])
            throw input_error("finite system: mapping is not a bijection");
        seen[perm[x]] = true;
        if (!(mu[x] > 0.0))
            throw input_error("finite system: weights must be positive");
    }
    for (std::size_t x = 0; x < perm.size(); ++x)
        if (mu[perm[x]] != mu[x])
            throw input_error("finite system: weights must be invariant under the map");
}

std::vector<std::vector<std::size_t>> FiniteSystem::orbits() const {
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> seen(perm.size(), false);
    for (std::size_t start = 0; start < perm.size(); ++start) {
        if (seen[start]) continue;
        std::vector<std::size_t> orbit;
        std::size_t x = start;
        while (!seen[x]) {
            seen[x] = true;
            orbit.push_back(x);
            x = perm[x];
        }
        out.push_back(std::move(orbit));
    }
    return out;
}

cvector finite_transform(const FiniteSystem& sys, const cvector& f) {
    if (f.size() != sys.size())
        throw input_error("finite_transform: dimension mismatch");
    cvector out(f.size());
    for (std::size_t x = 0; x < f.size(); ++x) out[x] = f[sys.perm[x]];
    return out;
}

double finite_lp_norm(const FiniteSystem& sys, const cvector& f, double p) {
    if (f.size() != sys.size()) throw input_error("finite_lp_norm: dimension mismatch");
    if (p == kInf) {
        double m = 0.0;
        for (const auto& z : f) m = std::max(m, std::abs(z));
        return m;
    }
    compensated_sum s;
    for (std::size_t x = 0; x < f.size(); ++x)
        s.add(sys.mu[x] * std::pow(std::abs(f[x]), p));
    return std::pow(s.value(), 1.0 / p);
}

cplx finite_integral(const FiniteSystem& sys, const cvector& f) {
    if (f.size() != sys.size()) throw input_error("finite_integral: dimension mismatch");
    compensated_sum re, im;
    for (std::size_t x = 0; x < f.size(); ++x) {
        re.add(sys.mu[x] * f[x].real());
        im.add(sys.mu[x] * f[x].imag());
    }
    return {re.value(), im.value()};
}

BirkhoffResult birkhoff_average(const ShiftSystem& sys,
                                const CylinderFunction& f, std::size_t n,
                                std::size_t n_points, std::uint64_t seed) {
    sys.validate();
    if (f.alphabet() != sys.alphabet)
        throw input_error("birkhoff_average: alphabet mismatch");
    long lo_needed = std::min(f.min_coord(), 0L);
    long hi_needed = f.max_coord() + long(n);
    if (hi_needed > sys.depth || lo_needed < -sys.depth) {
        throw depth_error("birkhoff_average: depth " +
                          std::to_string(std::max(hi_needed, -lo_needed)) +
                          " required, system has " + std::to_string(sys.depth));
    }

    BirkhoffResult res;
    res.seed = seed;
    res.space_mean = shift_space_mean(sys, f);
    Rng rng(seed);
    std::size_t len = std::size_t(hi_needed - lo_needed + 1);
    std::vector<std::uint8_t> pattern(len);
    std::vector<double> cum(sys.alphabet);
    {
        double acc = 0.0;
        for (std::size_t s = 0; s < sys.alphabet; ++s) {
            acc += sys.weights[s];
            cum[s] = acc;
        }
        cum.back() = 1.0;
    }
    for (std::size_t pt = 0; pt < n_points; ++pt) {
        for (auto& s : pattern) {
            double u = rng.uniform();
            std::size_t sym = 0;
            while (sym + 1 < sys.alphabet && u >= cum[sym]) ++sym;
            s = std::uint8_t(sym);
        }
        compensated_sum re, im;
        for (std::size_t j = 0; j <= n; ++j) {
            // T^j f reads coordinates + j, i.e. the same pattern re-based
            cplx v = f.eval(pattern, lo_needed - long(j));
            re.add(v.real());
            im.add(v.imag());
        }
        cplx avg(re.value() / double(n + 1), im.value() / double(n + 1));
        res.averages.push_back(avg);
        res.deviations.push_back(std::abs(avg - res.space_mean));
    }

    res.report.name = "birkhoff-average";
    res.report.seed = seed;
    res.report.value("space_mean_re", res.space_mean.real());
    res.report.value("space_mean_im", res.space_mean.imag());
    double max_dev = 0.0, sum_dev = 0.0, within = 0.0;
    for (double d : res.deviations) {
        max_dev = std::max(max_dev, d);
        sum_dev += d;
        if (d <= 0.05) within += 1.0;
    }
    res.report.value("max_deviation", max_dev);
    res.report.value("mean_deviation",
                     res.deviations.empty() ? 0.0 : sum_dev / double(res.deviations.size()));
    res.report.value("fraction_within_0.05",
                     res.deviations.empty() ? 1.0 : within / double(res.deviations.size()));
    Table t;
    t.name = "points";
    t.columns = {"point", "avg_re", "avg_im", "deviation"};
    for (std::size_t i = 0; i < res.averages.size(); ++i)
        t.rows.push_back({double(i), res.averages[i].real(),
                          res.averages[i].imag(), res.deviations[i]});
    res.report.tables.push_back(std::move(t));
    return res;
}

BirkhoffResult birkhoff_average(const FiniteSystem& sys, const cvector& f,
                                std::size_t n,
                                const std::vector<std::size_t>& points) {
    sys.validate();
    if (f.size() != sys.size())
        throw input_error("birkhoff_average: dimension mismatch");
    BirkhoffResult res;
    double mass = 0.0;
    for (double m : sys.mu) mass += m;
    res.space_mean = finite_integral(sys, f) / mass;
    for (std::size_t x0 : points) {
        if (x0 >= sys.size()) throw input_error("birkhoff_average: point out of range");
        compensated_sum re, im;
        std::size_t x = x0;
        for (std::size_t j = 0; j <= n; ++j) {
            re.add(f[x].real());
            im.add(f[x].imag());
            x = sys.perm[x];
        }
        cplx avg(re.value() / double(n + 1), im.value() / double(n + 1));
        res.averages.push_back(avg);
        res.deviations.push_back(std::abs(avg - res.space_mean));
    }
    res.report.name = "birkhoff-average-finite";
    return res;
}

CoboundaryDecomposition coboundary_decompose(const FiniteSystem& sys,
                                             const cvector& f) {
    sys.validate();
    if (f.size() != sys.size())
        throw input_error("coboundary_decompose: dimension mismatch");
    CoboundaryDecomposition out;
    out.invariant.assign(f.size(), cplx(0.0, 0.0));
    out.potential.assign(f.size(), cplx(0.0, 0.0));

    for (const auto& orbit : sys.orbits()) {
        cplx mean(0.0, 0.0);
        for (std::size_t x : orbit) mean += f[x];
        mean /= double(orbit.size());
        for (std::size_t x : orbit) out.invariant[x] = mean;

        // b(phi(x)) - b(x) = f(x) - mean accumulates along the cycle; the
        // orbit mean of b is then removed.
        cplx acc(0.0, 0.0);
        cplx bmean(0.0, 0.0);
        std::vector<cplx> vals(orbit.size());
        for (std::size_t i = 0; i < orbit.size(); ++i) {
            vals[i] = acc;
            bmean += acc;
            acc += f[orbit[i]] - mean;
        }
        bmean /= double(orbit.size());
        for (std::size_t i = 0; i < orbit.size(); ++i)
            out.potential[orbit[i]] = vals[i] - bmean;
    }

    cvector tb = finite_transform(sys, out.potential);
    double resid = 0.0;
    for (std::size_t x = 0; x < f.size(); ++x)
        resid += std::norm(out.invariant[x] + tb[x] - out.potential[x] - f[x]) *
                 sys.mu[x];
    out.residual = std::sqrt(resid);
    return out;
}

TransferenceResult transference_maximal(const FiniteSystem& sys,
                                        const cvector& f, std::size_t n,
                                        const std::vector<double>& lambdas) {
    sys.validate();
    if (f.size() != sys.size())
        throw input_error("transference_maximal: dimension mismatch");
    std::vector<std::size_t> inv = inverse_perm(sys.perm);

    TransferenceResult res;
    res.report.name = "transference-maximal";
    std::vector<double> prev_max(sys.size());
    cvector tf = finite_transform(sys, f);

    auto orbit_values = [&](std::size_t x0, const cvector& g) {
        std::vector<double> prefix(2 * n + 2, 0.0);
        // T^j(g)(x) = g(phi^j(x)), j = -n..n
        std::size_t back = x0;
        for (std::size_t j = 0; j < n; ++j) back = inv[back];
        std::size_t cur = back;
        for (std::size_t i = 0; i <= 2 * n; ++i) {
            prefix[i + 1] = prefix[i] + std::abs(g[cur]);
            cur = sys.perm[cur];
        }
        return prefix;
    };

    std::vector<double> commute_gap;
    for (std::size_t x = 0; x < sys.size(); ++x) {
        std::vector<double> prefix = orbit_values(x, f);
        res.maximal_values.push_back(two_sided_max_average(prefix, n, n));
        res.point_weights.push_back(sys.mu[x]);
        prev_max[x] = n == 0 ? res.maximal_values.back()
                             : two_sided_max_average(prefix, n, n - 1);

        // commutation: A_n*(T f)(x) = A_n*(f)(phi(x))
        std::vector<double> tprefix = orbit_values(x, tf);
        double lhs = two_sided_max_average(tprefix, n, n);
        std::vector<double> sprefix = orbit_values(sys.perm[x], f);
        double rhs = two_sided_max_average(sprefix, n, n);
        commute_gap.push_back(std::abs(lhs - rhs));
    }

    compensated_sum int_abs;
    for (std::size_t x = 0; x < sys.size(); ++x)
        int_abs.add(sys.mu[x] * std::abs(f[x]));
    res.integral_abs = int_abs.value();

    for (double lam : lambdas) {
        compensated_sum level;
        for (std::size_t x = 0; x < sys.size(); ++x)
            if (res.maximal_values[x] > lam) level.add(sys.mu[x]);
        res.report.check_le("measure{A_n* > lambda} <= 2 integral|f| / lambda",
                            level.value(), 2.0 * res.integral_abs / lam);
    }
    for (double p : {1.5, 2.0, 3.0}) {
        compensated_sum lhs, rhs;
        for (std::size_t x = 0; x < sys.size(); ++x) {
            lhs.add(sys.mu[x] * std::pow(res.maximal_values[x], p));
            rhs.add(sys.mu[x] * std::pow(std::abs(f[x]), p));
        }
        res.report.check_le("integral A_n*^p within the Lp constant", lhs.value(),
                            4.0 * p * std::pow(2.0, p - 1.0) / (p - 1.0) *
                                rhs.value());
    }
    double mono_worst = 0.0, commute_worst = 0.0;
    for (std::size_t x = 0; x < sys.size(); ++x) {
        mono_worst = std::max(mono_worst, prev_max[x] - res.maximal_values[x]);
        commute_worst = std::max(commute_worst, commute_gap[x]);
    }
    res.report.check_le("A_{n-1}* <= A_n* pointwise", mono_worst, 1e-12);
    res.report.check_le("A_n*(T f) = T(A_n* f) pointwise", commute_worst, 1e-12);
    return res;
}

TransferenceResult transference_maximal(const ShiftSystem& sys,
                                        const CylinderFunction& f,
                                        std::size_t n,
                                        const std::vector<double>& lambdas) {
    sys.validate();
    if (f.alphabet() != sys.alphabet)
        throw input_error("transference_maximal: alphabet mismatch");
    // one extra coordinate on the right so A_n*(T f) reads genuinely
    // different cells of the same pattern
    long base = f.min_coord() - long(n);
    long top = f.max_coord() + long(n) + 1;
    std::size_t len = std::size_t(top - base + 1);

    TransferenceResult res;
    res.report.name = "transference-maximal-shift";

    // Exact expectation over every pattern the windows can read.
    compensated_sum int_abs;
    std::vector<compensated_sum> level(lambdas.size());
    std::vector<compensated_sum> power(3);
    const double pvals[3] = {1.5, 2.0, 3.0};
    std::vector<compensated_sum> rhs_power(3);
    double mono_worst = 0.0;

    // The pushforward by the shift preserves the product weights, so
    // A_n*(T f) must carry the same level measures.
    std::vector<compensated_sum> level_shifted(lambdas.size());

    std::vector<double> prefix(2 * n + 2, 0.0);
    std::vector<double> sprefix(2 * n + 2, 0.0);
    for_each_pattern(
        sys.alphabet, len, sys.weights,
        [&](const std::vector<std::uint8_t>& pattern, double w) {
            for (std::size_t i = 0; i <= 2 * n; ++i) {
                // T^j f reads the pattern re-based by -j
                cplx v = f.eval(pattern, base - (long(i) - long(n)));
                prefix[i + 1] = prefix[i] + std::abs(v);
                cplx vs = f.eval(pattern, base - (long(i) - long(n)) - 1);
                sprefix[i + 1] = sprefix[i] + std::abs(vs);
            }
            double an = two_sided_max_average(prefix, n, n);
            double abs_f = prefix[n + 1] - prefix[n];

            int_abs.add(w * abs_f);
            for (std::size_t li = 0; li < lambdas.size(); ++li)
                if (an > lambdas[li]) level[li].add(w);
            for (int pi = 0; pi < 3; ++pi) {
                power[pi].add(w * std::pow(an, pvals[pi]));
                rhs_power[pi].add(w * std::pow(abs_f, pvals[pi]));
            }
            if (n >= 1) {
                double prev = two_sided_max_average(prefix, n, n - 1);
                mono_worst = std::max(mono_worst, prev - an);
            }

            double an_shift = two_sided_max_average(sprefix, n, n);
            for (std::size_t li = 0; li < lambdas.size(); ++li)
                if (an_shift > lambdas[li]) level_shifted[li].add(w);

            res.maximal_values.push_back(an);
            res.point_weights.push_back(w);
        });

    res.integral_abs = int_abs.value();
    for (std::size_t li = 0; li < lambdas.size(); ++li) {
        res.report.check_le("measure{A_n* > lambda} <= 2 integral|f| / lambda",
                            level[li].value(),
                            2.0 * res.integral_abs / lambdas[li]);
        res.report.check_le("shift invariance of the level measure",
                            std::abs(level[li].value() - level_shifted[li].value()),
                            1e-12);
    }
    for (int pi = 0; pi < 3; ++pi)
        res.report.check_le(
            "integral A_n*^p within the Lp constant", power[pi].value(),
            4.0 * pvals[pi] * std::pow(2.0, pvals[pi] - 1.0) / (pvals[pi] - 1.0) *
                rhs_power[pi].value());
    res.report.check_le("A_{n-1}* <= A_n* pointwise", mono_worst, 1e-12);
    return res;
}

Report power_tail_check(const FiniteSystem& sys, const cvector& f, double p,
                        std::size_t n_max) {
    sys.validate();
    if (!(p > 1.0)) throw domain_error("power_tail_check: p must exceed 1");
    if (f.size() != sys.size())
        throw input_error("power_tail_check: dimension mismatch");

    Report rep;
    rep.name = "power-tail";
    double fp = std::pow(finite_lp_norm(sys, f, p), p);

    compensated_sum series;      // sum_n ||T^n f||_p^p / (n+1)^p
    compensated_sum zeta_part;   // sum_n (n+1)^{-p}
    cvector cur = f;
    double iso_worst = 0.0;
    double sup = finite_lp_norm(sys, f, kInf);
    double decay_worst = 0.0;
    for (std::size_t m = 0; m <= n_max; ++m) {
        double norm_p = std::pow(finite_lp_norm(sys, cur, p), p);
        iso_worst = std::max(iso_worst, rel_diff(norm_p, fp));
        series.add(norm_p / std::pow(double(m + 1), p));
        zeta_part.add(std::pow(double(m + 1), -p));
        // pointwise envelope |T^m f| / (m+1) <= sup|f| / (m+1)
        for (const auto& z : cur)
            decay_worst = std::max(decay_worst,
                                   std::abs(z) / double(m + 1) -
                                       sup / double(m + 1));
        cur = finite_transform(sys, cur);
    }
    rep.check_le("||T^n f||_p = ||f||_p along the orbit", iso_worst, 1e-12);
    rep.check_le("sum ||T^n f||_p^p/(n+1)^p factors exactly",
                 rel_diff(series.value(), zeta_part.value() * fp), 1e-12);
    rep.check_le("|T^n f|/(n+1) below the sup envelope", decay_worst, 1e-15);
    rep.value("series_value", series.value());
    rep.value("zeta_partial", zeta_part.value());
    rep.value("input_power", fp);
    return rep;
}

Report power_tail_check(const ShiftSystem& sys, const CylinderFunction& f,
                        double p, std::size_t n_max) {
    sys.validate();
    if (!(p > 1.0)) throw domain_error("power_tail_check: p must exceed 1");

    // |f|^p as a cylinder function over the same coordinates
    cvector table = f.table();
    for (auto& v : table) v = cplx(std::pow(std::abs(v), p), 0.0);
    CylinderFunction fp_fn(f.coords(), table, f.alphabet());
    double fp = shift_space_mean(sys, fp_fn).real();

    Report rep;
    rep.name = "power-tail-shift";
    compensated_sum series, zeta_part;
    double iso_worst = 0.0;
    for (std::size_t m = 0; m <= n_max; ++m) {
        double norm_p = shift_space_mean(sys, fp_fn.shifted(long(m))).real();
        iso_worst = std::max(iso_worst, rel_diff(norm_p, fp));
        series.add(norm_p / std::pow(double(m + 1), p));
        zeta_part.add(std::pow(double(m + 1), -p));
    }
    rep.check_le("integral of |T^n f|^p is shift-invariant", iso_worst, 1e-12);
    rep.check_le("sum of the damped powers factors exactly",
                 rel_diff(series.value(), zeta_part.value() * fp), 1e-12);
    rep.value("series_value", series.value());
    rep.value("zeta_partial", zeta_part.value());
    rep.value("input_power", fp);
    return rep;
}

InvariantMeasureResult krylov_bogolyubov(const FiniteSystem& sys,
                                         const std::vector<double>& start,
                                         std::size_t n) {
    sys.validate();
    if (start.size() != sys.size())
        throw input_error("krylov_bogolyubov: dimension mismatch");

    // T*(lambda) assigns to phi(x) the weight lambda had at x.
    auto pushforward = [&](const std::vector<double>& w) {
        std::vector<double> out(w.size(), 0.0);
        for (std::size_t x = 0; x < w.size(); ++x) out[sys.perm[x]] += w[x];
        return out;
    };

    std::vector<double> cur = start;
    std::vector<compensated_sum> acc(start.size());
    for (std::size_t j = 0; j <= n; ++j) {
        for (std::size_t x = 0; x < cur.size(); ++x) acc[x].add(cur[x]);
        if (j < n) cur = pushforward(cur);
    }
    InvariantMeasureResult res;
    res.averaged.resize(start.size());
    for (std::size_t x = 0; x < start.size(); ++x)
        res.averaged[x] = acc[x].value() / double(n + 1);

    std::vector<double> pushed = pushforward(res.averaged);
    compensated_sum defect, mass;
    for (std::size_t x = 0; x < start.size(); ++x) {
        defect.add(std::abs(pushed[x] - res.averaged[x]));
        mass.add(res.averaged[x]);
    }
    res.defect = defect.value();
    res.mass = mass.value();
    return res;
}

CountingAverageResult shifted_delta_average(std::size_t n) {
    // T^j of the one-point mass at 0 is the one-point mass at -j; tally
    // integer numerators of the average over the window [-n, 0], all over
    // the common denominator n+1.
    std::vector<std::int64_t> numer(n + 1, 0);
    for (std::size_t j = 0; j <= n; ++j) numer[n - j] += 1; // point -j
    CountingAverageResult res;
    res.mass_den = std::int64_t(n) + 1;
    res.sup_den = std::int64_t(n) + 1;
    for (std::int64_t v : numer) {
        res.mass_num += v;
        res.sup_num = std::max(res.sup_num, v);
    }
    res.support_lo = -long(n);
    res.support_hi = 0;
    return res;
}

} // namespace sumlab
