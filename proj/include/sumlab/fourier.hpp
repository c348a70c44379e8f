#ifndef SUMLAB_FOURIER_HPP
#define SUMLAB_FOURIER_HPP

#include <functional>
#include <vector>

#include "sumlab/common.hpp"

namespace sumlab {

class aliasing_error : public domain_error {
public:
    using domain_error::domain_error;
};

/// Complex samples at the equispaced nodes theta_k = 2 pi k / m, m >= 4.
struct SampledCircleFunction {
    std::size_t m = 0;
    cvector values;

    double node(std::size_t k) const { return 6.283185307179586 * double(k) / double(m); }
};

SampledCircleFunction sample_circle(std::size_t m,
                                    const std::function<cplx(double)>& f);

/// Coefficients c_j for -degree <= j <= degree, stored at index j + degree.
struct FourierCoeffs {
    int degree = 0;
    cvector c;
    cplx coeff(int j) const { return c[std::size_t(j + degree)]; }
};

// Trapezoid-rule coefficients c_j = (1/m) sum_k f(theta_k) e^{-ij theta_k};
// exact for trigonometric polynomials of degree <= N when m > 2N, which is
// required (aliasing_error otherwise).
FourierCoeffs fourier_coefficients(const SampledCircleFunction& f, int degree);

struct CircleMeanResult {
    SampledCircleFunction mean;
    double sup_error = 0.0;       // sup distance to the input samples
    double truncation_bound = 0.0; // certified tail (Abel mean only)
};

// Order-n Cesaro mean of the symmetric partial sums: the triangular
// coefficient damping (1 - |j|/(n+1)).  degree = -1 uses n; the grid must
// satisfy m > 2*max(n, degree).
CircleMeanResult fejer_mean(const SampledCircleFunction& f, std::size_t n,
                            int degree = -1);

// Abel--Poisson mean: coefficients damped by r^{|j|} and truncated at the
// given degree.  The recorded truncation bound 2 ||f||_sup r^{N+1}/(1-r)
// must stay below tail_tol * ||f||_sup or a resolution_error is thrown.
CircleMeanResult abel_poisson_mean(const SampledCircleFunction& f, double r,
                                   int degree, double tail_tol = 1e-12);

// Cesaro average of the rotation orbit f, f(alpha z), f(alpha^2 z), ...
// alpha must be a grid rotation exp(2 pi i s / m) so the orbit is an exact
// node permutation.
SampledCircleFunction rotation_cesaro(const SampledCircleFunction& f,
                                      cplx alpha, std::size_t n);

double sup_norm(const SampledCircleFunction& f);
double sup_distance(const SampledCircleFunction& a,
                    const SampledCircleFunction& b);

/// Grid arc-length integral (2 pi / m) sum_k f(theta_k).
cplx grid_integral(const SampledCircleFunction& f);

} // namespace sumlab

#endif
