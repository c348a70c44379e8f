#include "sumlab/operators.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sumlab {

namespace {

void require_same_dim(const Matrix& a, const Matrix& b) {
    if (a.dim() != b.dim()) throw input_error("matrix dimension mismatch");
}

Eigen::MatrixXcd to_eigen(const Matrix& m) {
    Eigen::MatrixXcd e(m.dim(), m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) e(i, j) = m.at(i, j);
    return e;
}

Matrix from_eigen(const Eigen::MatrixXcd& e) {
    Matrix m(std::size_t(e.rows()));
    for (Eigen::Index i = 0; i < e.rows(); ++i)
        for (Eigen::Index j = 0; j < e.cols(); ++j)
            m.at(std::size_t(i), std::size_t(j)) = e(i, j);
    return m;
}

} // namespace

Matrix Matrix::adjoint() const {
    Matrix r(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) r.at(j, i) = std::conj(at(i, j));
    return r;
}

Matrix& Matrix::operator+=(const Matrix& o) {
    require_same_dim(*this, o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    require_same_dim(*this, o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
}

Matrix& Matrix::operator*=(cplx s) {
    for (auto& z : a_) z *= s;
    return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(cplx s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
    require_same_dim(a, b);
    std::size_t n = a.dim();
    Matrix c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            cplx aik = a.at(i, k);
            if (aik == cplx(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < n; ++j) c.at(i, j) += aik * b.at(k, j);
        }
    return c;
}

cvector operator*(const Matrix& a, const cvector& v) {
    if (a.dim() != v.size()) throw input_error("matrix/vector dimension mismatch");
    cvector out(a.dim(), cplx(0.0, 0.0));
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) out[i] += a.at(i, j) * v[j];
    return out;
}

OperatorNormResult operator_norm(const Matrix& t, NormPairing pairing) {
    std::size_t n = t.dim();
    if (n == 0) throw input_error("operator_norm: empty matrix");

    if (pairing.domain.p == 1.0) {
        // ell^1 domain: the norm is the largest column image.
        OperatorNormResult res;
        std::size_t best = 0;
        for (std::size_t j = 0; j < n; ++j) {
            cvector col(n);
            for (std::size_t i = 0; i < n; ++i) col[i] = t.at(i, j);
            double v = p_norm(col, pairing.codomain);
            if (v > res.value) {
                res.value = v;
                best = j;
            }
        }
        res.witness.assign(n, cplx(0.0, 0.0));
        res.witness[best] = 1.0;
        return res;
    }
    if (pairing.domain.p == kInf && pairing.codomain.p == kInf) {
        OperatorNormResult res;
        std::size_t best = 0;
        for (std::size_t i = 0; i < n; ++i) {
            compensated_sum row;
            for (std::size_t j = 0; j < n; ++j) row.add(std::abs(t.at(i, j)));
            if (row.value() > res.value) {
                res.value = row.value();
                best = i;
            }
        }
        res.witness.assign(n, cplx(1.0, 0.0));
        for (std::size_t j = 0; j < n; ++j) {
            double m = std::abs(t.at(best, j));
            if (m > 0.0) res.witness[j] = std::conj(t.at(best, j)) / m;
        }
        return res;
    }
    if (pairing.domain.p == 2.0 && pairing.codomain.p == 2.0) {
        // Power iteration on T*T; the Rayleigh value is a lower bound for
        // the top singular value and stagnates to it.
        Matrix tt = t.adjoint() * t;
        cvector v(n);
        for (std::size_t j = 0; j < n; ++j)
            v[j] = cplx(1.0 + 0.01 * double(j % 7), 0.003 * double(j % 5));
        double nv = p_norm(v, NormTag::two());
        for (auto& z : v) z /= nv;
        double sigma2 = 0.0;
        for (int it = 0; it < 20000; ++it) {
            cvector w = tt * v;
            double ray = inner_product(w, v).real(); // = ||T v||^2
            double nw = p_norm(w, NormTag::two());
            if (nw == 0.0) {
                sigma2 = 0.0;
                break;
            }
            for (std::size_t j = 0; j < n; ++j) v[j] = w[j] / nw;
            if (it > 0 && std::abs(ray - sigma2) <= 1e-10 * std::max(1.0, ray)) {
                sigma2 = ray;
                break;
            }
            sigma2 = ray;
        }
        OperatorNormResult res;
        cvector tv = t * v;
        res.value = p_norm(tv, NormTag::two()); // certified by the witness
        res.witness = v;
        return res;
    }
    throw unsupported_pairing("operator_norm: unsupported norm pairing");
}

NeumannResult neumann_inverse(const Matrix& a, NormPairing pairing, double tol) {
    if (!(tol > 0.0)) throw domain_error("neumann_inverse: tol must be positive");
    std::size_t n = a.dim();
    auto nrm = [&](const Matrix& m) { return operator_norm(m, pairing).value; };

    // Find a contraction power m <= 64 and the block constant along the way.
    Matrix power = Matrix::identity(n);
    double max_block = 1.0; // max ||a^s||, s < m
    std::size_t m = 0;
    double theta = 0.0;
    for (std::size_t k = 1; k <= 64; ++k) {
        max_block = std::max(max_block, nrm(power));
        power = power * a;
        double v = nrm(power);
        if (v < 1.0) {
            m = k;
            theta = v;
            break;
        }
    }
    if (m == 0)
        throw not_provably_invertible(
            "neumann_inverse: no power a^m with ||a^m|| < 1 for m <= 64");

    NeumannResult res;
    res.contraction_power = m;
    res.contraction_norm = theta;
    res.block_constant = double(m) * max_block;

    auto tail_bound = [&](std::size_t terms) {
        if (theta == 0.0) return 0.0; // nilpotent block: finite termination
        double q = std::floor((double(terms) + 1.0) / double(m));
        return std::pow(theta, q) * res.block_constant / (1.0 - theta);
    };

    Matrix sum = Matrix::identity(n);
    Matrix pw = Matrix::identity(n);
    std::size_t terms = 0;
    const std::size_t cap = 200000;
    while (true) {
        // residual ||(I-a) S_n - I|| equals ||a^{n+1}||
        Matrix next = pw * a;
        double res_est = nrm(next);
        if (res_est <= 0.5 * tol) break;
        sum += next;
        pw = next;
        ++terms;
        if (terms > cap)
            throw resolution_error("neumann_inverse: no convergence within term cap");
    }

    res.inverse = sum;
    res.terms_used = terms;
    res.tail_bound = tail_bound(terms);
    Matrix check = (Matrix::identity(n) - a) * sum - Matrix::identity(n);
    res.residual = nrm(check);
    if (res.residual > tol)
        throw resolution_error("neumann_inverse: residual above tolerance");
    return res;
}

SpectralReport spectral_radius(const Matrix& x, std::size_t n_max,
                               NormPairing pairing) {
    if (n_max < 8) throw domain_error("spectral_radius: n_max must be >= 8");
    SpectralReport rep;
    auto nrm = [&](const Matrix& m) { return operator_norm(m, pairing).value; };

    double base = nrm(x);
    rep.scale = base;
    if (base == 0.0) {
        rep.trace_indices = {1};
        rep.gelfand_trace = {0.0};
        rep.gelfand_estimate = 0.0;
        rep.fekete_inf = 0.0;
    } else {
        // Work with log ||x^n||; matrices are renormalized after every
        // multiply so entries never overflow.
        Matrix unit = x;
        unit *= cplx(1.0 / base, 0.0);

        auto push = [&](std::size_t idx, double log_norm) {
            rep.trace_indices.push_back(idx);
            rep.gelfand_trace.push_back(std::exp(log_norm / double(idx)));
        };

        Matrix cur = unit;       // normalized power
        double log_norm = std::log(base);
        push(1, log_norm);
        bool dead = false;
        for (std::size_t k = 2; k <= std::min<std::size_t>(8, n_max); ++k) {
            if (!dead) {
                cur = cur * unit;
                double v = nrm(cur);
                if (v == 0.0)
                    dead = true;
                else {
                    log_norm += std::log(base) + std::log(v);
                    cur *= cplx(1.0 / v, 0.0);
                }
            }
            push(k, dead ? -kInf : log_norm);
        }
        // Repeated squaring from x^8 upward.
        std::size_t idx = std::min<std::size_t>(8, n_max);
        while (idx * 2 <= n_max) {
            if (!dead) {
                cur = cur * cur;
                double v = nrm(cur);
                if (v == 0.0)
                    dead = true;
                else {
                    log_norm = 2.0 * log_norm + std::log(v);
                    cur *= cplx(1.0 / v, 0.0);
                }
            } else {
                log_norm = -kInf;
            }
            idx *= 2;
            push(idx, dead ? -kInf : log_norm);
        }
        if (idx < n_max && !dead) {
            // Finish to exactly n_max with plain multiplies (gap < idx).
            for (std::size_t k = idx; k < n_max; ++k) {
                cur = cur * unit;
                double v = nrm(cur);
                if (v == 0.0) {
                    dead = true;
                    break;
                }
                log_norm += std::log(base) + std::log(v);
                cur *= cplx(1.0 / v, 0.0);
            }
            push(n_max, dead ? -kInf : log_norm);
        } else if (idx < n_max) {
            push(n_max, -kInf);
        }
        // exp(-inf) entries print as zero radii
        for (auto& g : rep.gelfand_trace)
            if (!std::isfinite(g)) g = 0.0;
        rep.gelfand_estimate = rep.gelfand_trace.back();
        rep.fekete_inf = *std::min_element(rep.gelfand_trace.begin(),
                                           rep.gelfand_trace.end());
    }

    if (x.dim() <= 64) {
        cvector eig = spectrum_eigenvalues(x);
        rep.eigen_available = true;
        rep.eigen_radius = eig.empty() ? 0.0 : std::abs(eig.front());
        // slow convergence of the root trace is expected; the tolerance is
        // relative once the input leaves unit scale
        double tol = std::max(1e-2, 5.0 / double(n_max)) *
                     std::max(1.0, rep.eigen_radius);
        rep.consistent = std::abs(rep.gelfand_estimate - rep.eigen_radius) <= tol;
    }
    return rep;
}

cvector spectrum_eigenvalues(const Matrix& x) {
    if (x.dim() > 64)
        throw domain_error("spectrum_eigenvalues: desk scale only (dim <= 64)");
    if (x.dim() == 0) return {};
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(to_eigen(x), false);
    if (solver.info() != Eigen::Success)
        throw resolution_error("spectrum_eigenvalues: eigensolver failed");
    cvector eig(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i) eig[i] = solver.eigenvalues()(Eigen::Index(i));
    std::sort(eig.begin(), eig.end(), [](cplx a, cplx b) {
        double ma = std::abs(a), mb = std::abs(b);
        if (ma != mb) return ma > mb;
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
    return eig;
}

Matrix resolvent(const Matrix& x, cplx lambda) {
    cvector eig = spectrum_eigenvalues(x);
    double dist = kInf;
    cplx nearest(0.0, 0.0);
    for (const auto& ev : eig) {
        double d = std::abs(lambda - ev);
        if (d < dist) {
            dist = d;
            nearest = ev;
        }
    }
    if (dist <= 1e-8) {
        std::ostringstream msg;
        msg << "resolvent: lambda is within " << dist
            << " of the eigenvalue (" << nearest.real() << ", "
            << nearest.imag() << "i)";
        throw singular_resolvent(msg.str());
    }
    std::size_t n = x.dim();
    Eigen::MatrixXcd m = -to_eigen(x);
    for (std::size_t i = 0; i < n; ++i) m(Eigen::Index(i), Eigen::Index(i)) += lambda;
    Eigen::MatrixXcd inv = m.partialPivLu().solve(
        Eigen::MatrixXcd::Identity(Eigen::Index(n), Eigen::Index(n)));
    return from_eigen(inv);
}

void scan_operator_averages(
    const Matrix& x, std::size_t n_max,
    const std::function<void(std::size_t, const Matrix&, const Matrix&)>& visit) {
    std::size_t n = x.dim();
    Matrix pw = Matrix::identity(n); // x^k
    Matrix s = Matrix::identity(n);  // sum of powers up to k
    Matrix ss = s;                   // sum of the partial sums up to k
    for (std::size_t k = 0; k <= n_max; ++k) {
        if (k > 0) {
            pw = pw * x;
            s += pw;
            ss += s;
        }
        Matrix avg = s;
        avg *= cplx(1.0 / double(k + 1), 0.0);
        Matrix dbl = ss;
        dbl *= cplx(1.0 / double(k + 1), 0.0);
        visit(k, avg, dbl);
    }
}

OperatorAverages cesaro_operator_average(const Matrix& x, std::size_t n) {
    if (n < 1) throw domain_error("cesaro_operator_average: n must be >= 1");
    OperatorAverages out;
    scan_operator_averages(x, n,
                           [&](std::size_t k, const Matrix& avg, const Matrix& dbl) {
                               if (k == n) {
                                   out.average = avg;
                                   out.double_average = dbl;
                               }
                           });
    return out;
}

MeanErgodicResult mean_ergodic_projection(const Matrix& u, const cvector& v,
                                          std::size_t n) {
    if (u.dim() != v.size())
        throw input_error("mean_ergodic_projection: dimension mismatch");
    std::size_t d = u.dim();
    Matrix gram = u.adjoint() * u - Matrix::identity(d);
    if (operator_norm(gram, NormPairing::inf_inf()).value > 1e-10)
        throw domain_error("mean_ergodic_projection: matrix is not unitary");

    // Fixed space = nullspace of (U - I), via SVD.
    Eigen::MatrixXcd um = to_eigen(u);
    Eigen::MatrixXcd shifted = um - Eigen::MatrixXcd::Identity(
                                        Eigen::Index(d), Eigen::Index(d));
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(shifted, Eigen::ComputeFullV);
    std::vector<cvector> basis;
    for (Eigen::Index j = 0; j < svd.singularValues().size(); ++j) {
        if (svd.singularValues()(j) <= 1e-8) {
            cvector col(d);
            for (std::size_t i = 0; i < d; ++i) col[i] = svd.matrixV()(Eigen::Index(i), j);
            basis.push_back(std::move(col));
        }
    }

    MeanErgodicResult res;
    res.fixed_dimension = basis.size();
    res.predicted_limit = basis.empty() ? cvector(d, cplx(0.0, 0.0))
                                        : project(v, Subspace{basis});

    // Averages of U^j v.
    cvector cur = v;
    cvector acc = v;
    for (std::size_t j = 1; j <= n; ++j) {
        cur = u * cur;
        for (std::size_t i = 0; i < d; ++i) acc[i] += cur[i];
    }
    res.average.resize(d);
    for (std::size_t i = 0; i < d; ++i) res.average[i] = acc[i] / double(n + 1);

    // Rate constant: solve (U - I) w = v - predicted inside the orthogonal
    // complement; adding the fixed-space projector makes the system
    // invertible without disturbing that subspace.
    Eigen::MatrixXcd solve_m = shifted;
    for (const auto& b : basis) {
        Eigen::VectorXcd bb = Eigen::VectorXcd::Zero(Eigen::Index(d));
        for (std::size_t i = 0; i < d; ++i) bb(Eigen::Index(i)) = b[i];
        solve_m += bb * bb.adjoint();
    }
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(Eigen::Index(d));
    for (std::size_t i = 0; i < d; ++i) rhs(Eigen::Index(i)) = v[i] - res.predicted_limit[i];
    Eigen::VectorXcd w = solve_m.partialPivLu().solve(rhs);
    res.coboundary_norm = w.norm();
    return res;
}

cvector multiplication_average(const cvector& b, std::size_t n) {
    for (const auto& z : b)
        if (std::abs(z) > 1.0 + 1e-12)
            throw domain_error("multiplication_average: ||b||_inf exceeds 1");
    cvector out(b.size());
    for (std::size_t k = 0; k < b.size(); ++k) {
        if (b[k] == cplx(1.0, 0.0)) {
            out[k] = 1.0;
            continue;
        }
        // (1 - b^{n+1}) / ((n+1)(1 - b))
        cplx p(1.0, 0.0);
        cplx base = b[k];
        std::size_t e = n + 1;
        while (e > 0) {
            if (e & 1) p *= base;
            base *= base;
            e >>= 1;
        }
        out[k] = (cplx(1.0, 0.0) - p) / (double(n + 1) * (cplx(1.0, 0.0) - b[k]));
    }
    return out;
}

} // namespace sumlab
