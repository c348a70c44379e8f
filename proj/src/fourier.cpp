#include "sumlab/fourier.hpp"

#include <algorithm>
#include <cmath>

namespace sumlab {

namespace {

constexpr double kTwoPi = 6.283185307179586;

void require_grid(const SampledCircleFunction& f) {
    if (f.m < 4) throw input_error("circle grid needs at least 4 nodes");
    if (f.values.size() != f.m)
        throw input_error("sample count does not match the grid");
}

// Roots of unity w[t] = exp(-2 pi i t / m); indexing by (j*k mod m) keeps
// every twiddle a single rounding instead of accumulating angle error.
cvector root_table(std::size_t m) {
    cvector w(m);
    for (std::size_t t = 0; t < m; ++t) {
        double ang = -kTwoPi * double(t) / double(m);
        w[t] = {std::cos(ang), std::sin(ang)};
    }
    return w;
}

std::size_t mod_index(long j, long k, std::size_t m) {
    long t = (j % long(m)) * (k % long(m)) % long(m);
    if (t < 0) t += long(m);
    return std::size_t(t);
}

SampledCircleFunction synthesize(const FourierCoeffs& coeffs,
                                 const cvector& weights, std::size_t m) {
    const cvector w = root_table(m);
    SampledCircleFunction out;
    out.m = m;
    out.values.assign(m, cplx(0.0, 0.0));
    for (std::size_t k = 0; k < m; ++k) {
        compensated_sum re, im;
        for (int j = -coeffs.degree; j <= coeffs.degree; ++j) {
            cplx term = weights[std::size_t(j + coeffs.degree)] *
                        coeffs.coeff(j) *
                        std::conj(w[mod_index(j, long(k), m)]);
            re.add(term.real());
            im.add(term.imag());
        }
        out.values[k] = {re.value(), im.value()};
    }
    return out;
}

} // namespace

SampledCircleFunction sample_circle(std::size_t m,
                                    const std::function<cplx(double)>& f) {
    if (m < 4) throw input_error("circle grid needs at least 4 nodes");
    SampledCircleFunction out;
    out.m = m;
    out.values.reserve(m);
    for (std::size_t k = 0; k < m; ++k) out.values.push_back(f(kTwoPi * double(k) / double(m)));
    return out;
}

FourierCoeffs fourier_coefficients(const SampledCircleFunction& f, int degree) {
    require_grid(f);
    if (degree < 0) throw input_error("fourier_coefficients: negative degree");
    if (f.m <= 2 * std::size_t(degree))
        throw aliasing_error("fourier_coefficients: grid must satisfy m > 2N");
    const cvector w = root_table(f.m);
    FourierCoeffs out;
    out.degree = degree;
    out.c.assign(2 * std::size_t(degree) + 1, cplx(0.0, 0.0));
    for (int j = -degree; j <= degree; ++j) {
        compensated_sum re, im;
        for (std::size_t k = 0; k < f.m; ++k) {
            cplx term = f.values[k] * w[mod_index(j, long(k), f.m)];
            re.add(term.real());
            im.add(term.imag());
        }
        out.c[std::size_t(j + degree)] =
            cplx(re.value() / double(f.m), im.value() / double(f.m));
    }
    return out;
}

CircleMeanResult fejer_mean(const SampledCircleFunction& f, std::size_t n,
                            int degree) {
    require_grid(f);
    if (degree < 0) degree = int(n);
    if (std::size_t(degree) < n)
        throw input_error("fejer_mean: coefficient degree below the mean order");
    if (f.m <= 2 * std::max<std::size_t>(n, std::size_t(degree)))
        throw aliasing_error("fejer_mean: grid must satisfy m > 2 max(n, N)");

    FourierCoeffs coeffs = fourier_coefficients(f, int(n));
    cvector weights(2 * n + 1);
    for (long j = -long(n); j <= long(n); ++j)
        weights[std::size_t(j + long(n))] =
            1.0 - double(std::labs(j)) / double(n + 1);

    CircleMeanResult res;
    res.mean = synthesize(coeffs, weights, f.m);
    res.sup_error = sup_distance(res.mean, f);
    return res;
}

CircleMeanResult abel_poisson_mean(const SampledCircleFunction& f, double r,
                                   int degree, double tail_tol) {
    require_grid(f);
    if (!(r > 0.0 && r < 1.0))
        throw domain_error("abel_poisson_mean: r must lie in (0,1)");
    if (degree < 0) throw input_error("abel_poisson_mean: negative degree");
    if (f.m <= 2 * std::size_t(degree))
        throw aliasing_error("abel_poisson_mean: grid must satisfy m > 2N");

    double sup = sup_norm(f);
    double bound = 2.0 * sup * std::pow(r, double(degree) + 1.0) / (1.0 - r);
    if (bound > tail_tol * std::max(sup, 1e-300))
        throw resolution_error(
            "abel_poisson_mean: truncation bound not achievable at this grid "
            "resolution; raise the degree or loosen tail_tol");

    FourierCoeffs coeffs = fourier_coefficients(f, degree);
    cvector weights(2 * std::size_t(degree) + 1);
    for (int j = -degree; j <= degree; ++j)
        weights[std::size_t(j + degree)] = std::pow(r, double(std::abs(j)));

    CircleMeanResult res;
    res.mean = synthesize(coeffs, weights, f.m);
    res.sup_error = sup_distance(res.mean, f);
    res.truncation_bound = bound;
    return res;
}

SampledCircleFunction rotation_cesaro(const SampledCircleFunction& f,
                                      cplx alpha, std::size_t n) {
    require_grid(f);
    double ang = std::arg(alpha);
    double s_real = ang * double(f.m) / kTwoPi;
    long s = std::lround(s_real);
    cplx snapped = {std::cos(kTwoPi * double(s) / double(f.m)),
                    std::sin(kTwoPi * double(s) / double(f.m))};
    if (std::abs(alpha - snapped) > 1e-9)
        throw domain_error(
            "rotation_cesaro: alpha is not on the grid rotation subgroup");
    long sm = ((s % long(f.m)) + long(f.m)) % long(f.m);

    SampledCircleFunction out;
    out.m = f.m;
    out.values.assign(f.m, cplx(0.0, 0.0));
    for (std::size_t k = 0; k < f.m; ++k) {
        compensated_sum re, im;
        std::size_t idx = k;
        for (std::size_t j = 0; j <= n; ++j) {
            re.add(f.values[idx].real());
            im.add(f.values[idx].imag());
            idx = (idx + std::size_t(sm)) % f.m;
        }
        out.values[k] = {re.value() / double(n + 1), im.value() / double(n + 1)};
    }
    return out;
}

double sup_norm(const SampledCircleFunction& f) {
    double m = 0.0;
    for (const auto& z : f.values) m = std::max(m, std::abs(z));
    return m;
}

double sup_distance(const SampledCircleFunction& a,
                    const SampledCircleFunction& b) {
    if (a.m != b.m) throw input_error("sup_distance: grid mismatch");
    double m = 0.0;
    for (std::size_t k = 0; k < a.m; ++k)
        m = std::max(m, std::abs(a.values[k] - b.values[k]));
    return m;
}

cplx grid_integral(const SampledCircleFunction& f) {
    require_grid(f);
    compensated_sum re, im;
    for (const auto& z : f.values) {
        re.add(z.real());
        im.add(z.imag());
    }
    double h = kTwoPi / double(f.m);
    return {re.value() * h, im.value() * h};
}

} // namespace sumlab
