#include "sumlab/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace sumlab {

namespace {

void require_same_dim(const cvector& v, const cvector& w) {
    if (v.size() != w.size())
        throw input_error("vector dimension mismatch");
}

void require_nonempty(const cvector& v) {
    if (v.empty()) throw input_error("vector dimension must be >= 1");
}

} // namespace

double p_norm(const cvector& v, NormTag t) {
    require_nonempty(v);
    if (!(t.p >= 1.0)) throw domain_error("p_norm: p must be >= 1");
    if (t.p == kInf) {
        double m = 0.0;
        for (const auto& z : v) m = std::max(m, std::abs(z));
        return m;
    }
    double scale = 0.0;
    for (const auto& z : v) scale = std::max(scale, std::abs(z));
    if (scale == 0.0) return 0.0;
    compensated_sum acc;
    if (t.p == 1.0) {
        for (const auto& z : v) acc.add(std::abs(z) / scale);
    } else if (t.p == 2.0) {
        for (const auto& z : v) {
            double m = std::abs(z) / scale;
            acc.add(m * m);
        }
        return scale * std::sqrt(acc.value());
    } else {
        for (const auto& z : v) acc.add(std::pow(std::abs(z) / scale, t.p));
    }
    return scale * std::pow(acc.value(), 1.0 / t.p);
}

Report norm_inequality_report(const cvector& v, NormTag p, NormTag q) {
    if (!(p.p >= 1.0 && q.p <= kInf && p.p < q.p))
        throw domain_error("norm_inequality_report: need 1 <= p < q <= inf");
    Report rep;
    rep.name = "norm-inequalities";
    double n = double(v.size());
    double np = p_norm(v, p);
    double nq = p_norm(v, q);
    double slack_tol = 1e-12 * std::max(1.0, np);

    rep.value("norm_p", np);
    rep.value("norm_q", nq);
    rep.checks.push_back({"||v||_q <= ||v||_p", nq <= np + slack_tol, nq, np});

    double factor = (q.p == kInf) ? std::pow(n, 1.0 / p.p)
                                  : std::pow(n, 1.0 / p.p - 1.0 / q.p);
    rep.checks.push_back({"||v||_p <= n^{1/p-1/q} ||v||_q",
                          np <= factor * nq + slack_tol, np, factor * nq});

    if (p.p == 1.0 && q.p == 2.0) {
        double n1 = np, n2 = nq, ninf = p_norm(v, NormTag::inf());
        rep.checks.push_back({"||v||_2^2 <= ||v||_1 ||v||_inf",
                              n2 * n2 <= n1 * ninf + slack_tol, n2 * n2,
                              n1 * ninf});
    }
    return rep;
}

cplx inner_product(const cvector& v, const cvector& w) {
    require_same_dim(v, w);
    require_nonempty(v);
    compensated_sum re, im;
    for (std::size_t j = 0; j < v.size(); ++j) {
        cplx t = v[j] * std::conj(w[j]);
        re.add(t.real());
        im.add(t.imag());
    }
    return {re.value(), im.value()};
}

double cauchy_schwarz_gap(const cvector& v, const cvector& w) {
    require_same_dim(v, w);
    return p_norm(v, NormTag::two()) * p_norm(w, NormTag::two()) -
           std::abs(inner_product(v, w));
}

double parallelogram_residual(const cvector& a, const cvector& b) {
    require_same_dim(a, b);
    cvector diff(a.size()), sum(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
        diff[j] = a[j] - b[j];
        sum[j] = a[j] + b[j];
    }
    auto sq = [](const cvector& x) {
        double n = p_norm(x, NormTag::two());
        return n * n;
    };
    return std::abs(sq(diff) + sq(sum) - 2.0 * sq(a) - 2.0 * sq(b));
}

cvector solve_gram_system(std::vector<cvector> gram, cvector rhs,
                          double tol_scale) {
    std::size_t k = rhs.size();
    double max_diag = 0.0;
    for (std::size_t i = 0; i < k; ++i)
        max_diag = std::max(max_diag, std::abs(gram[i][i]));
    double tol = tol_scale * std::max(max_diag, 1e-300);

    std::vector<std::size_t> order(k);
    for (std::size_t i = 0; i < k; ++i) order[i] = i;

    for (std::size_t col = 0; col < k; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < k; ++r)
            if (std::abs(gram[r][col]) > std::abs(gram[piv][col])) piv = r;
        if (std::abs(gram[piv][col]) < tol)
            throw input_error("degenerate basis: Gram system is rank deficient");
        std::swap(gram[piv], gram[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t r = col + 1; r < k; ++r) {
            cplx f = gram[r][col] / gram[col][col];
            for (std::size_t c = col; c < k; ++c) gram[r][c] -= f * gram[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    cvector x(k);
    for (std::size_t i = k; i-- > 0;) {
        cplx acc = rhs[i];
        for (std::size_t c = i + 1; c < k; ++c) acc -= gram[i][c] * x[c];
        x[i] = acc / gram[i][i];
    }
    return x;
}

namespace {

cvector project_subspace(const cvector& v, const std::vector<cvector>& basis) {
    if (basis.empty()) return cvector(v.size(), cplx(0.0, 0.0));
    std::size_t k = basis.size();
    for (const auto& b : basis) require_same_dim(v, b);

    // <v - w, basis_i> = 0 with w = sum_j c_j basis_j.
    std::vector<cvector> gram(k, cvector(k));
    cvector rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j)
            gram[i][j] = inner_product(basis[j], basis[i]);
        rhs[i] = inner_product(v, basis[i]);
    }
    cvector c = solve_gram_system(std::move(gram), std::move(rhs));
    cvector w(v.size(), cplx(0.0, 0.0));
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t t = 0; t < v.size(); ++t) w[t] += c[j] * basis[j][t];
    return w;
}

} // namespace

cvector project(const cvector& v, const ConvexSpec& c) {
    require_nonempty(v);
    if (const auto* s = std::get_if<Subspace>(&c)) return project_subspace(v, s->basis);
    if (const auto* b = std::get_if<Box>(&c)) {
        if (b->lo.size() != v.size() || b->hi.size() != v.size())
            throw input_error("project: box bound dimension mismatch");
        cvector out(v.size());
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (std::abs(v[j].imag()) > 1e-12 * std::max(1.0, std::abs(v[j])))
                throw input_error("project: box projection requires real input");
            if (!(b->lo[j] <= b->hi[j]))
                throw input_error("project: box bounds must satisfy lo <= hi");
            out[j] = cplx(std::clamp(v[j].real(), b->lo[j], b->hi[j]), 0.0);
        }
        return out;
    }
    const auto& ball = std::get<Ball>(c);
    require_same_dim(v, ball.center);
    if (!(ball.radius >= 0.0)) throw input_error("project: negative ball radius");
    cvector d(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) d[j] = v[j] - ball.center[j];
    double dist = p_norm(d, NormTag::two());
    if (dist <= ball.radius) return v;
    cvector out(v.size());
    double f = ball.radius / dist;
    for (std::size_t j = 0; j < v.size(); ++j) out[j] = ball.center[j] + f * d[j];
    return out;
}

std::pair<cvector, cvector> orthogonal_complement_decompose(
    const cvector& v, const std::vector<cvector>& basis) {
    cvector w = project_subspace(v, basis);
    cvector y(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) y[j] = v[j] - w[j];
    return {std::move(w), std::move(y)};
}

} // namespace sumlab
