#ifndef SUMLAB_OPERATORS_HPP
#define SUMLAB_OPERATORS_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "sumlab/common.hpp"
#include "sumlab/linalg.hpp"

namespace sumlab {

/// Dense square complex matrix, row-major.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t n) : n_(n), a_(n * n, cplx(0.0, 0.0)) {}
    static Matrix identity(std::size_t n) {
        Matrix m(n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }

    std::size_t dim() const { return n_; }
    cplx& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const cplx& at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    Matrix adjoint() const;

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(cplx s);

private:
    std::size_t n_ = 0;
    std::vector<cplx> a_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(cplx s, Matrix a);
cvector operator*(const Matrix& a, const cvector& v);

/// Domain/codomain norm pair for operator norms.
struct NormPairing {
    NormTag domain = NormTag::inf();
    NormTag codomain = NormTag::inf();
    static NormPairing one_one() { return {NormTag::one(), NormTag::one()}; }
    static NormPairing two_two() { return {NormTag::two(), NormTag::two()}; }
    static NormPairing inf_inf() { return {NormTag::inf(), NormTag::inf()}; }
};

class unsupported_pairing : public domain_error {
public:
    using domain_error::domain_error;
};

class not_provably_invertible : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OperatorNormResult {
    double value = 0.0;
    cvector witness; // unit vector with ||T w|| >= (value - tol) ||w||
};

// Supported pairings: (1, q) for any q (exact column maximum), (inf, inf)
// (exact row-sum maximum), and (2, 2) (largest singular value via power
// iteration on T*T, run to 1e-10 relative stagnation; the returned value
// is certified from below by the witness).  Anything else throws
// unsupported_pairing.
OperatorNormResult operator_norm(const Matrix& t, NormPairing pairing);

struct NeumannResult {
    Matrix inverse;              // of (I - a)
    std::size_t terms_used = 0;  // S_n = sum_{j<=n} a^j
    double residual = 0.0;       // ||(I-a) S_n - I||
    double tail_bound = 0.0;     // certified ||inv - S_n||
    std::size_t contraction_power = 1;
    double contraction_norm = 0.0; // ||a^m|| < 1
    double block_constant = 0.0;   // m * max_{s<m} ||a^s||
};

// Geometric-series inverse of (I - a).  Requires some power a^m, m <= 64,
// to be a contraction in the pairing norm; otherwise throws
// not_provably_invertible.  The tail estimate splits indices into blocks
// of length m: ||inv - S_n|| <= ||a^m||^{floor((n+1)/m)} C / (1 - ||a^m||)
// with C = m * max_{s<m} ||a^s||.
NeumannResult neumann_inverse(const Matrix& a, NormPairing pairing, double tol);

struct SpectralReport {
    std::vector<std::size_t> trace_indices;
    std::vector<double> gelfand_trace; // ||x^n||^{1/n} at the trace indices
    double gelfand_estimate = 0.0;     // trace value at n_max
    double fekete_inf = 0.0;           // min over the trace
    double eigen_radius = 0.0;         // max eigenvalue modulus
    bool eigen_available = false;
    bool consistent = false;
    double scale = 1.0; // norm used for internal rescaling
};

// Growth-rate trace ||x^n||^{1/n} at n = 1..8, powers of two, and n_max,
// computed with log-domain rescaling so powers never overflow.  The limit
// equals the infimum for this submultiplicative sequence, and equals the
// largest eigenvalue modulus, which is cross-checked when dim <= 64.
SpectralReport spectral_radius(const Matrix& x, std::size_t n_max,
                               NormPairing pairing = NormPairing::inf_inf());

/// Eigenvalues sorted by decreasing modulus.  Desk scale only (dim <= 64).
cvector spectrum_eigenvalues(const Matrix& x);

class singular_resolvent : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// (lambda I - x)^{-1} by elimination; throws singular_resolvent naming the
/// nearest eigenvalue when lambda is within 1e-8 of the spectrum.
Matrix resolvent(const Matrix& x, cplx lambda);

struct OperatorAverages {
    Matrix average;        // (1/(n+1)) sum_{j<=n} x^j
    Matrix double_average; // (1/(n+1)) sum_{l<=n} sum_{j<=l} x^j
};

OperatorAverages cesaro_operator_average(const Matrix& x, std::size_t n);

/// Streams (k, average_k, double_average_k) for k = 0..n_max.
void scan_operator_averages(
    const Matrix& x, std::size_t n_max,
    const std::function<void(std::size_t, const Matrix&, const Matrix&)>& visit);

struct MeanErgodicResult {
    cvector average;         // (1/(n+1)) sum_{j<=n} U^j v
    cvector predicted_limit; // projection of v onto the fixed space of U
    double coboundary_norm = 0.0; // ||u|| with (U - I) u = v - predicted
    std::size_t fixed_dimension = 0;
};

// Ergodic average of a unitary matrix applied to v, together with the
// predicted limit (the fixed-space component of v) and the constant whose
// telescoping controls the convergence rate: ||average - predicted|| <=
// 2 ||u|| / (n+1).
MeanErgodicResult mean_ergodic_projection(const Matrix& u, const cvector& v,
                                          std::size_t n);

// Entrywise power averages (1/(n+1)) sum_{j<=n} b_k^j for ||b||_inf <= 1.
// Entries exactly 1 where b_k == 1; elsewhere the closed geometric form.
cvector multiplication_average(const cvector& b, std::size_t n);

} // namespace sumlab

#endif
