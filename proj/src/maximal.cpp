#include "sumlab/maximal.hpp"

#include <algorithm>
#include <cmath>

namespace sumlab {

double GridFunction::abs_sum() const {
    compensated_sum s;
    for (const auto& z : values) s.add(std::abs(z));
    return s.value();
}

double GridFunction::abs_power_sum(double p) const {
    compensated_sum s;
    for (const auto& z : values) s.add(std::pow(std::abs(z), p));
    return s.value();
}

namespace {

// Window-search engine; the prefix table is built once per function.
class MaximalEvaluator {
public:
    explicit MaximalEvaluator(const GridFunction& f) : f_(f) {
        if (f.values.empty())
            throw input_error("discrete_maximal: empty function");
        pre_.assign(f.values.size() + 1, 0.0);
        for (std::size_t i = 0; i < f.values.size(); ++i)
            pre_[i + 1] = pre_[i] + std::abs(f.values[i]);
    }

    double total() const { return pre_.back(); }

    double at(long l, std::pair<long, long>* witness = nullptr) const {
        double best = 0.0;
        std::pair<long, long> best_win{l, l};
        long lo = f_.lo, hi = f_.hi();
        if (l < lo) {
            // left endpoint pinned at l; stretching left only dilutes
            for (long b = lo; b <= hi; ++b) {
                double avg = range_sum(lo, b) / double(b - l + 1);
                if (avg > best) {
                    best = avg;
                    best_win = {l, b};
                }
            }
        } else if (l > hi) {
            for (long a = lo; a <= hi; ++a) {
                double avg = range_sum(a, hi) / double(l - a + 1);
                if (avg > best) {
                    best = avg;
                    best_win = {a, l};
                }
            }
        } else {
            for (long a = lo; a <= l; ++a)
                for (long b = l; b <= hi; ++b) {
                    double avg = range_sum(a, b) / double(b - a + 1);
                    if (avg > best) {
                        best = avg;
                        best_win = {a, b};
                    }
                }
        }
        if (witness) *witness = best_win;
        return best;
    }

    long superlevel(double lambda) const {
        if (total() == 0.0) return 0;
        // beyond distance d of the support, f* <= total/(d+1) < lambda
        long reach = long(std::ceil(total() / lambda)) + 1;
        if (reach > 10000000)
            throw resolution_error(
                "superlevel: level too small for the finite search region");
        long count = 0;
        for (long l = f_.lo - reach; l <= f_.hi() + reach; ++l)
            if (at(l) > lambda) ++count;
        return count;
    }

private:
    double range_sum(long a, long b) const {
        long ca = std::max(a, f_.lo), cb = std::min(b, f_.hi());
        if (ca > cb) return 0.0;
        return pre_[std::size_t(cb - f_.lo + 1)] - pre_[std::size_t(ca - f_.lo)];
    }

    const GridFunction& f_;
    std::vector<double> pre_;
};

} // namespace

double discrete_maximal_at(const GridFunction& f, long l,
                           std::pair<long, long>* witness) {
    return MaximalEvaluator(f).at(l, witness);
}

MaximalProfile discrete_maximal(const GridFunction& f) {
    MaximalEvaluator eval(f);
    MaximalProfile prof;
    prof.lo = f.lo;
    prof.values.resize(f.values.size());
    prof.witness.resize(f.values.size());
    for (std::size_t i = 0; i < f.values.size(); ++i)
        prof.values[i] = eval.at(f.lo + long(i), &prof.witness[i]);
    return prof;
}

long superlevel_count(const GridFunction& f, double lambda) {
    if (!(lambda > 0.0)) throw domain_error("superlevel_count: lambda <= 0");
    return MaximalEvaluator(f).superlevel(lambda);
}

Report weak_type_report(const GridFunction& f,
                        const std::vector<double>& lambdas) {
    MaximalEvaluator eval(f);
    double total = eval.total();
    if (total == 0.0) throw input_error("weak_type_report: zero function");
    double lam_min = kInf;
    for (double lam : lambdas) {
        if (!(lam > 0.0)) throw domain_error("weak_type_report: lambda <= 0");
        lam_min = std::min(lam_min, lam);
    }
    // One profile pass over the region sufficient for the smallest lambda
    // serves every level count.
    long reach = long(std::ceil(total / lam_min)) + 1;
    if (reach > 10000000)
        throw resolution_error(
            "weak_type_report: smallest level too small for the finite region");
    std::vector<double> prof;
    prof.reserve(std::size_t(2 * reach) + f.values.size());
    for (long l = f.lo - reach; l <= f.hi() + reach; ++l) prof.push_back(eval.at(l));

    Report rep;
    rep.name = "weak-type";
    Table t;
    t.name = "level_sets";
    t.columns = {"lambda", "count", "bound"};
    double worst = 0.0;
    for (double lam : lambdas) {
        long count = 0;
        for (double v : prof)
            if (v > lam) ++count;
        double bound = 2.0 * total / lam;
        t.rows.push_back({lam, double(count), bound});
        rep.check_le("count <= 2 sum|f| / lambda", double(count), bound);
        worst = std::max(worst, double(count) * lam / total);
    }
    rep.value("worst_ratio", worst);
    rep.tables.push_back(std::move(t));
    return rep;
}

double lp_maximal_constant(double p) {
    return 4.0 * p * std::pow(2.0, p - 1.0) / (p - 1.0);
}

namespace {

// Exact region sum of f*^p plus a certified tail for the rest of the line.
// Outside the region f*(l) <= total/(dist+1), and the integral comparison
// bounds the remaining series.
std::pair<double, double> profile_power_sum(const GridFunction& f, double p) {
    MaximalEvaluator eval(f);
    long reach = std::max<long>(64, 4 * long(f.values.size()));
    compensated_sum main_sum;
    for (long l = f.lo - reach; l <= f.hi() + reach; ++l)
        main_sum.add(std::pow(eval.at(l), p));
    double d1 = double(reach) + 1.0;
    double tail = 2.0 * std::pow(eval.total(), p) *
                  (std::pow(d1, -p) + std::pow(d1, 1.0 - p) / (p - 1.0));
    return {main_sum.value(), tail};
}

} // namespace

Report lp_bound_report(const GridFunction& f, double p) {
    if (!(p > 1.0))
        throw domain_error(
            "lp_bound_report: p must exceed 1 (the maximal function of a "
            "nonzero summable input is never summable)");
    MaximalEvaluator eval(f);
    double total = eval.total();
    if (total == 0.0) throw input_error("lp_bound_report: zero function");

    auto [main_sum, tail] = profile_power_sum(f, p);
    double input_sum = f.abs_power_sum(p);
    double constant = lp_maximal_constant(p);

    Report rep;
    rep.name = "lp-bound";
    rep.value("profile_power_sum_lower", main_sum);
    rep.value("profile_power_sum_upper", main_sum + tail);
    rep.value("input_power_sum", input_sum);
    rep.value("ratio_lower", main_sum / input_sum);
    rep.value("ratio_upper", (main_sum + tail) / input_sum);
    rep.value("constant", constant);
    rep.check_le("sum f*^p <= (4p 2^{p-1}/(p-1)) sum |f|^p", main_sum + tail,
                 constant * input_sum);

    // Truncation-split chain: cutting |f| at lambda/2 pushes the level set
    // into the truncated part, whose level bound carries 4/lambda.
    double sup_profile = 0.0;
    for (long l = f.lo; l <= f.hi(); ++l)
        sup_profile = std::max(sup_profile, eval.at(l));
    Table chain;
    chain.name = "truncation_chain";
    chain.columns = {"lambda", "level_count", "split_level_count", "split_bound"};
    for (double frac : {0.75, 0.5, 0.25}) {
        double lam = frac * std::max(sup_profile, 1e-300);
        long count = eval.superlevel(lam);

        GridFunction big = f;
        for (auto& z : big.values)
            if (std::abs(z) <= 0.5 * lam) z = 0.0;
        double big_mass = big.abs_sum();
        long split_count = big_mass == 0.0 ? 0 : superlevel_count(big, 0.5 * lam);
        double split_bound = 4.0 / lam * big_mass;

        chain.rows.push_back(
            {lam, double(count), double(split_count), split_bound});
        rep.check_le("level set within split level set", double(count),
                     double(split_count));
        rep.check_le("split level set within (4/lambda) truncated mass",
                     double(split_count), split_bound);
    }
    rep.tables.push_back(std::move(chain));
    return rep;
}

int interval_multiplicity(const IntervalFamily& family) {
    std::vector<double> points;
    for (const auto& iv : family) {
        points.push_back(iv.lo);
        points.push_back(iv.hi);
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    auto count_at = [&](double x) {
        int c = 0;
        for (const auto& iv : family)
            if (iv.lo < x && x < iv.hi) ++c;
        return c;
    };
    int worst = 0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i)
        worst = std::max(worst, count_at(0.5 * (points[i] + points[i + 1])));
    for (double x : points) worst = std::max(worst, count_at(x));
    return worst;
}

IntervalFamily interval_union(const IntervalFamily& family) {
    IntervalFamily sorted = family;
    std::sort(sorted.begin(), sorted.end(),
              [](const Interval& a, const Interval& b) {
                  return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
              });
    IntervalFamily merged;
    for (const auto& iv : sorted) {
        // open intervals merge only on genuine overlap, not at touching
        // endpoints
        if (!merged.empty() && iv.lo < merged.back().hi)
            merged.back().hi = std::max(merged.back().hi, iv.hi);
        else
            merged.push_back(iv);
    }
    return merged;
}

IntervalFamily covering_reduce_multiplicity(IntervalFamily family) {
    for (const auto& iv : family)
        if (!(iv.lo < iv.hi))
            throw input_error("covering_reduce_multiplicity: empty interval");

    while (true) {
        std::vector<double> points;
        for (const auto& iv : family) {
            points.push_back(iv.lo);
            points.push_back(iv.hi);
        }
        std::sort(points.begin(), points.end());
        points.erase(std::unique(points.begin(), points.end()), points.end());

        bool reduced = false;
        for (std::size_t i = 0; i + 1 < points.size() && !reduced; ++i) {
            double x = 0.5 * (points[i] + points[i + 1]);
            std::vector<std::size_t> hit;
            for (std::size_t k = 0; k < family.size(); ++k)
                if (family[k].lo < x && x < family[k].hi) hit.push_back(k);
            if (hit.size() < 3) continue;

            // Among intervals sharing the point, the one with neither the
            // least left endpoint nor the greatest right endpoint lies in
            // the union of those two.
            std::size_t ia = hit[0], ib = hit[0];
            for (std::size_t k : hit) {
                if (family[k].lo < family[ia].lo) ia = k;
                if (family[k].hi > family[ib].hi) ib = k;
            }
            std::size_t victim = hit[0];
            bool found = false;
            for (std::size_t k : hit)
                if (k != ia && k != ib) {
                    victim = k;
                    found = true;
                    break;
                }
            if (!found) {
                // a single interval holds both extremes and swallows the rest
                for (std::size_t k : hit)
                    if (k != ia) {
                        victim = k;
                        break;
                    }
            }
            family.erase(family.begin() + long(victim));
            reduced = true;
        }
        if (!reduced) return family;
    }
}

VitaliSelection vitali_select(const BallFamily& family) {
    std::size_t n = family.size();
    for (double r : family.radii)
        if (!(r > 0.0)) throw input_error("vitali_select: radii must be positive");
    VitaliSelection sel;
    sel.cover.assign(n, 0);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (family.radii[a] != family.radii[b])
            return family.radii[a] > family.radii[b];
        return a < b;
    });

    auto disjoint = [&](std::size_t i, std::size_t j) {
        double d = family.center_distance(i, j);
        if (family.ultrametric)
            return d >= std::max(family.radii[i], family.radii[j]);
        return d >= family.radii[i] + family.radii[j];
    };

    for (std::size_t idx : order) {
        bool ok = true;
        for (std::size_t s : sel.selected)
            if (!disjoint(idx, s)) {
                ok = false;
                break;
            }
        if (ok) sel.selected.push_back(idx);
    }

    // every ball meets a selected ball of no smaller radius, whose triple
    // then contains it
    for (std::size_t i = 0; i < n; ++i) {
        bool assigned = false;
        for (std::size_t k = 0; k < sel.selected.size() && !assigned; ++k) {
            std::size_t s = sel.selected[k];
            if (family.radii[s] < family.radii[i] * (1.0 - 1e-12)) continue;
            if (s != i && disjoint(i, s)) continue;
            double d = family.center_distance(i, s);
            double enclosing = family.ultrametric ? std::max(d, family.radii[i])
                                                  : d + family.radii[i];
            if (enclosing <= 3.0 * family.radii[s] * (1.0 + 1e-12)) {
                sel.cover[i] = k;
                assigned = true;
            }
        }
        if (!assigned)
            throw consistency_error(
                "vitali_select: ball escaped every selected triple");
    }
    return sel;
}

Report product_maximal(const ProductGridFunction& f,
                       const std::vector<double>& lambdas,
                       const std::vector<double>& ps) {
    if (f.rows.empty() || f.rows.size() != f.weights.size())
        throw input_error("product_maximal: rows/weights mismatch");
    long lo = f.rows.front().lo;
    std::size_t width = f.rows.front().values.size();
    for (const auto& row : f.rows)
        if (row.lo != lo || row.values.size() != width)
            throw input_error("product_maximal: rows must share one window");
    for (double w : f.weights)
        if (!(w > 0.0))
            throw input_error("product_maximal: weights must be positive");

    Report rep;
    rep.name = "product-maximal";

    compensated_sum mass; // sum_j integral |f(x,j)| dmu
    for (std::size_t x = 0; x < f.rows.size(); ++x)
        mass.add(f.weights[x] * f.rows[x].abs_sum());

    double lam_min = kInf;
    for (double lam : lambdas) {
        if (!(lam > 0.0)) throw domain_error("product_maximal: lambda <= 0");
        lam_min = std::min(lam_min, lam);
    }
    std::vector<std::vector<double>> profiles(f.rows.size());
    for (std::size_t x = 0; x < f.rows.size(); ++x) {
        MaximalEvaluator eval(f.rows[x]);
        if (eval.total() == 0.0) continue;
        long reach = long(std::ceil(eval.total() / lam_min)) + 1;
        if (reach > 10000000)
            throw resolution_error(
                "product_maximal: smallest level too small for the finite region");
        for (long l = f.rows[x].lo - reach; l <= f.rows[x].hi() + reach; ++l)
            profiles[x].push_back(eval.at(l));
    }
    for (double lam : lambdas) {
        compensated_sum level; // sum_j mu({x : f*(x,j) > lam})
        for (std::size_t x = 0; x < f.rows.size(); ++x) {
            long count = 0;
            for (double v : profiles[x])
                if (v > lam) ++count;
            level.add(f.weights[x] * double(count));
        }
        rep.check_le("weighted level measure <= 2 mass / lambda",
                     level.value(), 2.0 * mass.value() / lam);
    }

    for (double p : ps) {
        compensated_sum lhs, rhs;
        for (std::size_t x = 0; x < f.rows.size(); ++x) {
            rhs.add(f.weights[x] * f.rows[x].abs_power_sum(p));
            if (f.rows[x].abs_sum() == 0.0) continue;
            auto [row_sum, tail] = profile_power_sum(f.rows[x], p);
            lhs.add(f.weights[x] * (row_sum + tail));
        }
        rep.check_le("weighted power sums within the Lp constant", lhs.value(),
                     lp_maximal_constant(p) * rhs.value());
    }
    return rep;
}

} // namespace sumlab
