#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include "sumlab/operators.hpp"
#include "sumlab/rng.hpp"

#include <cmath>

using namespace sumlab;

namespace {

Matrix random_matrix(Rng& rng, std::size_t n, double scale = 1.0) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = scale * rng.complex_normal();
    return m;
}

Matrix rotation90() {
    Matrix x(2);
    x.at(0, 1) = -1.0;
    x.at(1, 0) = 1.0;
    return x;
}

Eigen::MatrixXcd to_eigen(const Matrix& m) {
    Eigen::MatrixXcd e(m.dim(), m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) e(i, j) = m.at(i, j);
    return e;
}

} // namespace

TEST_CASE("identity has unit norm in every supported pairing") {
    Matrix id = Matrix::identity(5);
    for (NormPairing p : {NormPairing::one_one(), NormPairing::inf_inf(),
                          NormPairing::two_two(),
                          NormPairing{NormTag::one(), NormTag::two()}})
        CHECK(operator_norm(id, p).value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("column and row formulas on a 2x2 example") {
    Matrix t(2);
    t.at(0, 0) = 1.0;
    t.at(0, 1) = 2.0;
    t.at(1, 0) = 3.0;
    t.at(1, 1) = 4.0;
    CHECK(operator_norm(t, NormPairing::one_one()).value ==
          doctest::Approx(6.0).epsilon(1e-15));
    CHECK(operator_norm(t, NormPairing::inf_inf()).value ==
          doctest::Approx(7.0).epsilon(1e-15));
    // largest singular value by the quadratic formula for T^* T
    double expect = std::sqrt((30.0 + std::sqrt(884.0)) / 2.0);
    CHECK(operator_norm(t, NormPairing::two_two()).value ==
          doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("witness vectors certify the reported norms from below") {
    Rng rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        Matrix t = random_matrix(rng, 2 + rng.below(6));
        for (NormPairing p : {NormPairing::one_one(), NormPairing::inf_inf(),
                              NormPairing::two_two()}) {
            OperatorNormResult r = operator_norm(t, p);
            cvector tw = t * r.witness;
            double lhs = p_norm(tw, p.codomain);
            double rhs = (r.value - 1e-8) * p_norm(r.witness, p.domain);
            CHECK(lhs >= rhs);
        }
    }
}

TEST_CASE("norms stay submultiplicative under composition") {
    Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 2 + rng.below(5);
        Matrix a = random_matrix(rng, n), b = random_matrix(rng, n);
        for (NormPairing p : {NormPairing::one_one(), NormPairing::inf_inf(),
                              NormPairing::two_two()}) {
            double lhs = operator_norm(b * a, p).value;
            double rhs = operator_norm(a, p).value * operator_norm(b, p).value;
            CHECK(lhs <= rhs + 1e-10 * (1.0 + rhs));
        }
    }
}

TEST_CASE("mixed pairings outside the supported set are refused") {
    Matrix t = Matrix::identity(3);
    CHECK_THROWS_AS(operator_norm(t, NormPairing{NormTag::two(), NormTag::inf()}),
                    unsupported_pairing);
    CHECK_THROWS_AS(operator_norm(t, NormPairing{{3.0}, {3.0}}),
                    unsupported_pairing);
}

TEST_CASE("preconditions on the remaining operator entry points") {
    Matrix x = Matrix::identity(2);
    CHECK_THROWS_AS(spectral_radius(x, 4), domain_error);
    CHECK_THROWS_AS(neumann_inverse(x, NormPairing::inf_inf(), 0.0), domain_error);
    CHECK_THROWS_AS(cesaro_operator_average(x, 0), domain_error);
    CHECK_THROWS_AS(spectrum_eigenvalues(Matrix(65)), domain_error);
    CHECK_THROWS_AS(mean_ergodic_projection(x, cvector{{1, 0}}, 4), input_error);
}

TEST_CASE("series inversion works under the other exact pairings") {
    Rng rng(43);
    Matrix a = random_matrix(rng, 4);
    double n1 = operator_norm(a, NormPairing::one_one()).value;
    a *= cplx(0.8 / n1, 0.0);
    NeumannResult r = neumann_inverse(a, NormPairing::one_one(), 1e-10);
    CHECK(r.residual <= 1e-10);
    Matrix truth = resolvent(a, cplx(1.0, 0.0));
    CHECK(operator_norm(truth - r.inverse, NormPairing::one_one()).value <=
          r.tail_bound * (1.0 + 1e-9) + 1e-13);
}

TEST_CASE("series inverse of a scaled identity carries the textbook tail") {
    Matrix a = Matrix::identity(4);
    a *= cplx(0.5, 0.0);
    NeumannResult r = neumann_inverse(a, NormPairing::inf_inf(), 1e-12);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(std::abs(r.inverse.at(i, i) - cplx(2.0, 0.0)) < 1e-11);
    CHECK(r.contraction_power == 1);
    CHECK(r.tail_bound ==
          doctest::Approx(std::pow(2.0, -double(r.terms_used))).epsilon(1e-12));
}

TEST_CASE("a nilpotent input terminates exactly even with norm above one") {
    Matrix nil(3);
    nil.at(0, 1) = 2.0;
    nil.at(0, 2) = 3.0;
    nil.at(1, 2) = 4.0;
    NeumannResult r = neumann_inverse(nil, NormPairing::inf_inf(), 1e-12);
    CHECK(r.terms_used == 2);
    CHECK(r.residual == 0.0);
    CHECK(r.tail_bound == 0.0);
    // I + a + a^2 is the exact inverse of I - a here
    Matrix expect = Matrix::identity(3) + nil + nil * nil;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(r.inverse.at(i, j) == expect.at(i, j));
}

TEST_CASE("series inverse matches elimination on contractive input") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 2 + rng.below(7);
        Matrix a = random_matrix(rng, n);
        double nm = operator_norm(a, NormPairing::inf_inf()).value;
        a *= cplx(0.9 / nm, 0.0);
        NeumannResult r = neumann_inverse(a, NormPairing::inf_inf(), 1e-10);
        CHECK(r.residual <= 1e-10);
        CHECK(r.terms_used <= 300);
        Matrix truth = resolvent(a, cplx(1.0, 0.0));
        double err = operator_norm(truth - r.inverse, NormPairing::inf_inf()).value;
        CHECK(err <= r.tail_bound * (1.0 + 1e-9) + 1e-13);
    }
}

TEST_CASE("no contraction power means a refusal, not an answer") {
    Matrix a = Matrix::identity(2);
    a *= cplx(2.0, 0.0);
    CHECK_THROWS_AS(neumann_inverse(a, NormPairing::inf_inf(), 1e-10),
                    not_provably_invertible);
}

TEST_CASE("perturbations below the inverse-norm threshold stay invertible") {
    Rng rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 2 + rng.below(5);
        Matrix x = Matrix::identity(n) + random_matrix(rng, n, 0.3 / double(n));
        Matrix xinv = resolvent(x, cplx(0.0, 0.0));
        xinv *= cplx(-1.0, 0.0); // (0 - x)^{-1} = -x^{-1}
        double inv_norm = operator_norm(xinv, NormPairing::inf_inf()).value;

        Matrix delta = random_matrix(rng, n);
        double dn = operator_norm(delta, NormPairing::inf_inf()).value;
        delta *= cplx(0.9 / (inv_norm * dn), 0.0);
        // y = x - delta = x (I - x^{-1} delta), and the bracket inverts
        CHECK_NOTHROW(neumann_inverse(xinv * delta, NormPairing::inf_inf(), 1e-8));
    }
}

TEST_CASE("inverse stays close to the identity for small input") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 2 + rng.below(5);
        Matrix a = random_matrix(rng, n);
        double nm = operator_norm(a, NormPairing::inf_inf()).value;
        a *= cplx(rng.uniform(0.05, 0.5) / nm, 0.0);
        nm = operator_norm(a, NormPairing::inf_inf()).value;
        NeumannResult r = neumann_inverse(a, NormPairing::inf_inf(), 1e-12);
        double drift =
            operator_norm(r.inverse - Matrix::identity(n), NormPairing::inf_inf())
                .value;
        CHECK(drift <= nm / (1.0 - nm) + 1e-10);
    }
}

TEST_CASE("growth trace of a diagonal matrix sits at the top modulus") {
    Matrix x(2);
    x.at(0, 0) = 2.0;
    x.at(1, 1) = cplx(0.0, 3.0);
    SpectralReport r = spectral_radius(x, 64);
    for (double g : r.gelfand_trace) CHECK(g == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(r.eigen_radius == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(r.consistent);
}

TEST_CASE("a single nilpotent block dies after its dimension") {
    Matrix x(4);
    for (std::size_t i = 0; i + 1 < 4; ++i) x.at(i, i + 1) = 1.0;
    SpectralReport r = spectral_radius(x, 64);
    CHECK(r.gelfand_estimate == 0.0);
    CHECK(r.fekete_inf == 0.0);
    CHECK(r.eigen_radius <= 1e-8);
    for (std::size_t i = 0; i < r.trace_indices.size(); ++i)
        if (r.trace_indices[i] >= 4) CHECK(r.gelfand_trace[i] == 0.0);
}

TEST_CASE("plane rotations keep a flat unit trace in the (2,2) norm") {
    double theta = 0.731;
    Matrix x(2);
    x.at(0, 0) = std::cos(theta);
    x.at(0, 1) = -std::sin(theta);
    x.at(1, 0) = std::sin(theta);
    x.at(1, 1) = std::cos(theta);
    SpectralReport r = spectral_radius(x, 128, NormPairing::two_two());
    for (double g : r.gelfand_trace) CHECK(g == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.eigen_radius == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("norm powers are submultiplicative and dominate the infimum") {
    Rng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 2 + rng.below(6);
        Matrix x = random_matrix(rng, n);
        std::vector<double> norms(13, 0.0);
        Matrix p = Matrix::identity(n);
        for (std::size_t k = 1; k <= 12; ++k) {
            p = p * x;
            norms[k] = operator_norm(p, NormPairing::inf_inf()).value;
        }
        for (std::size_t j = 1; j <= 6; ++j)
            for (std::size_t l = 1; l + j <= 12; ++l)
                CHECK(norms[j + l] <= norms[j] * norms[l] * (1.0 + 1e-10));

        SpectralReport r = spectral_radius(x, 64);
        for (double g : r.gelfand_trace) CHECK(r.fekete_inf <= g + 1e-12);
        // every eigenvalue modulus sits below every root of a power norm
        cvector eig = spectrum_eigenvalues(x);
        for (std::size_t k = 1; k <= 12; ++k)
            CHECK(std::abs(eig.front()) <=
                  std::pow(norms[k], 1.0 / double(k)) + 1e-9);
    }
}

TEST_CASE("huge input norms are rescaled away") {
    Rng rng(15);
    Matrix x = random_matrix(rng, 6, 1e150);
    SpectralReport r = spectral_radius(x, 256);
    CHECK(std::isfinite(r.gelfand_estimate));
    CHECK(r.consistent);
}

TEST_CASE("eigenvalues of a diagonal matrix are its entries") {
    Matrix x(3);
    x.at(0, 0) = cplx(0.5, 0.0);
    x.at(1, 1) = cplx(-2.0, 0.0);
    x.at(2, 2) = cplx(0.0, 1.0);
    cvector eig = spectrum_eigenvalues(x);
    CHECK(std::abs(eig[0] - cplx(-2.0, 0.0)) < 1e-12);
    CHECK(std::abs(eig[1] - cplx(0.0, 1.0)) < 1e-12);
    CHECK(std::abs(eig[2] - cplx(0.5, 0.0)) < 1e-12);
}

TEST_CASE("quarter-turn rotation has eigenvalues +-i") {
    cvector eig = spectrum_eigenvalues(rotation90());
    CHECK(std::abs(std::abs(eig[0]) - 1.0) < 1e-12);
    CHECK(std::min(std::abs(eig[0] - cplx(0, 1)), std::abs(eig[0] - cplx(0, -1))) <
          1e-12);
    CHECK(std::abs(eig[0] + eig[1]) < 1e-12);
}

TEST_CASE("companion matrix of z^2 - z - 1 yields the golden pair") {
    Matrix x(2);
    x.at(0, 1) = 1.0;
    x.at(1, 0) = 1.0;
    x.at(1, 1) = 1.0;
    cvector eig = spectrum_eigenvalues(x);
    double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    CHECK(std::abs(eig[0] - cplx(phi, 0.0)) < 1e-10);
    CHECK(std::abs(eig[1] - cplx(1.0 - phi, 0.0)) < 1e-10);
}

TEST_CASE("returned eigenvalues nearly annihilate a singular direction") {
    Rng rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        std::size_t n = 2 + rng.below(7);
        Matrix x = random_matrix(rng, n);
        double scale = operator_norm(x, NormPairing::inf_inf()).value;
        for (const cplx& lam : spectrum_eigenvalues(x)) {
            Eigen::MatrixXcd shifted =
                lam * Eigen::MatrixXcd::Identity(long(n), long(n)) - to_eigen(x);
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(shifted);
            CHECK(svd.singularValues()(long(n) - 1) <= 1e-6 * scale);
        }
    }
}

TEST_CASE("resolvent of the zero matrix is a scaled identity") {
    Matrix x(3);
    Matrix r = resolvent(x, cplx(2.0, 0.0));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(std::abs(r.at(i, j) - (i == j ? cplx(0.5, 0.0) : cplx(0.0, 0.0))) <
                  1e-14);
}

TEST_CASE("resolvent agrees with the scaled series beyond the norm radius") {
    Rng rng(19);
    Matrix x = random_matrix(rng, 5);
    double nm = operator_norm(x, NormPairing::inf_inf()).value;
    cplx lambda = cplx(1.7 * nm, 0.4 * nm);
    Matrix direct = resolvent(x, lambda);
    // lambda e - x = lambda (e - x/lambda)
    Matrix scaled = x;
    scaled *= cplx(1.0, 0.0) / lambda;
    NeumannResult nr = neumann_inverse(scaled, NormPairing::inf_inf(), 1e-12);
    Matrix series = nr.inverse;
    series *= cplx(1.0, 0.0) / lambda;
    CHECK(operator_norm(direct - series, NormPairing::inf_inf()).value <= 1e-8);
    // and the resolvent residual itself is tight
    Matrix check = Matrix::identity(5);
    check *= lambda;
    check -= x;
    CHECK(operator_norm(check * direct - Matrix::identity(5),
                        NormPairing::inf_inf())
              .value <= 1e-8);
}

TEST_CASE("resolvent blows up at the rate of the spectral gap") {
    Matrix x(2);
    x.at(0, 0) = 1.0;
    x.at(1, 1) = 2.0;
    for (double gap : {1e-3, 1e-5, 1e-7}) {
        Matrix r = resolvent(x, cplx(1.0 + gap, 0.0));
        CHECK(operator_norm(r, NormPairing::inf_inf()).value >= 0.99 / gap);
    }
    CHECK_THROWS_AS(resolvent(x, cplx(2.0 + 1e-10, 0.0)), singular_resolvent);
}

TEST_CASE("averages of identity powers stay the identity") {
    OperatorAverages oa = cesaro_operator_average(Matrix::identity(3), 17);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(std::abs(oa.average.at(i, j) -
                           (i == j ? cplx(1, 0) : cplx(0, 0))) < 1e-12);
}

TEST_CASE("rotation averages decay and their double average finds the inverse") {
    Matrix x = rotation90();
    Matrix inv(2); // (I - x)^{-1} = [[1,-1],[1,1]] / 2
    inv.at(0, 0) = 0.5;
    inv.at(0, 1) = -0.5;
    inv.at(1, 0) = 0.5;
    inv.at(1, 1) = 0.5;
    double inv_norm = operator_norm(inv, NormPairing::two_two()).value;
    for (std::size_t n : {7u, 63u, 255u}) {
        OperatorAverages oa = cesaro_operator_average(x, n);
        CHECK(operator_norm(oa.average, NormPairing::two_two()).value <=
              2.0 * inv_norm / double(n + 1) + 1e-12);
        CHECK(operator_norm(oa.double_average - inv, NormPairing::two_two()).value <=
              2.0 * inv_norm * inv_norm / double(n + 1) + 1e-12);
    }
}

TEST_CASE("contractive powers average to zero at the geometric rate") {
    Rng rng(21);
    Matrix x = random_matrix(rng, 4);
    double nm = operator_norm(x, NormPairing::inf_inf()).value;
    x *= cplx(0.6 / nm, 0.0);
    nm = operator_norm(x, NormPairing::inf_inf()).value;
    for (std::size_t n : {3u, 31u, 127u}) {
        OperatorAverages oa = cesaro_operator_average(x, n);
        CHECK(operator_norm(oa.average, NormPairing::inf_inf()).value <=
              (1.0 / double(n + 1)) / (1.0 - nm) + 1e-12);
    }
}

TEST_CASE("plane rotation by pi/3 averages any vector to zero") {
    double theta = 3.141592653589793 / 3.0;
    Matrix u(2);
    u.at(0, 0) = std::cos(theta);
    u.at(0, 1) = -std::sin(theta);
    u.at(1, 0) = std::sin(theta);
    u.at(1, 1) = std::cos(theta);
    cvector v{{1.3, -0.2}, {0.4, 2.0}};
    MeanErgodicResult r = mean_ergodic_projection(u, v, 4000);
    CHECK(r.fixed_dimension == 0);
    CHECK(p_norm(r.predicted_limit, NormTag::two()) < 1e-12);
    CHECK(p_norm(r.average, NormTag::two()) <=
          2.0 * r.coboundary_norm / 4001.0 + 1e-12);
}

TEST_CASE("identity transport keeps every vector fixed") {
    cvector v{{1, 1}, {2, -1}, {0, 3}};
    MeanErgodicResult r = mean_ergodic_projection(Matrix::identity(3), v, 50);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(std::abs(r.average[i] - v[i]) < 1e-12);
        CHECK(std::abs(r.predicted_limit[i] - v[i]) < 1e-12);
    }
}

TEST_CASE("cyclic shifts average to the coordinate mean") {
    Rng rng(23);
    for (std::size_t m : {3u, 5u, 8u}) {
        Matrix u(m);
        for (std::size_t i = 0; i < m; ++i) u.at(i, (i + 1) % m) = 1.0;
        cvector v(m);
        for (auto& z : v) z = rng.complex_normal();
        cplx mean(0, 0);
        for (const auto& z : v) mean += z;
        mean /= double(m);
        MeanErgodicResult r = mean_ergodic_projection(u, v, 2000);
        CHECK(r.fixed_dimension == 1);
        for (std::size_t i = 0; i < m; ++i)
            CHECK(std::abs(r.predicted_limit[i] - mean) < 1e-10);
        // the limit is genuinely fixed
        cvector moved = u * r.predicted_limit;
        for (std::size_t i = 0; i < m; ++i)
            CHECK(std::abs(moved[i] - r.predicted_limit[i]) < 1e-8);
    }
}

TEST_CASE("non-unitary input is refused") {
    Matrix t = Matrix::identity(2);
    t.at(0, 1) = 0.5;
    CHECK_THROWS_AS(mean_ergodic_projection(t, cvector{{1, 0}, {0, 0}}, 10),
                    domain_error);
}

TEST_CASE("entrywise power averages keep ones and flatten the rest") {
    cvector b{{1, 0}, {-1, 0}};
    cvector a = multiplication_average(b, 99);
    CHECK(a[0] == cplx(1.0, 0.0));
    CHECK(std::abs(a[1]) <= 0.01);

    cvector c = multiplication_average(cvector{{0.5, 0.0}}, 50);
    CHECK(std::abs(c[0]) <= 2.0 / 51.0 + 1e-15);

    cvector ones(4, cplx(1.0, 0.0));
    cvector d = multiplication_average(ones, 13);
    for (const auto& z : d) CHECK(z == cplx(1.0, 0.0));

    CHECK_THROWS_AS(multiplication_average(cvector{{1.5, 0.0}}, 5), domain_error);
}

TEST_CASE("entrywise averages match a direct power sum and the phase bound") {
    Rng rng(25);
    for (int trial = 0; trial < 20; ++trial) {
        cvector b(6);
        for (auto& z : b) {
            if (trial % 2 == 0)
                z = rng.unit_phase();
            else
                z = rng.uniform(0.0, 0.999) * rng.unit_phase();
        }
        std::size_t n = 40;
        cvector a = multiplication_average(b, n);
        for (std::size_t k = 0; k < b.size(); ++k) {
            cplx direct(0, 0), p(1, 0);
            for (std::size_t j = 0; j <= n; ++j) {
                direct += p;
                p *= b[k];
            }
            direct /= double(n + 1);
            CHECK(std::abs(a[k] - direct) < 1e-12);
            double mod = std::abs(b[k]);
            if (mod < 1.0)
                CHECK(std::abs(a[k]) <=
                      (1.0 / double(n + 1)) / (1.0 - mod) + 1e-12);
            else if (b[k] != cplx(1.0, 0.0))
                CHECK(std::abs(a[k]) <=
                      2.0 / (double(n + 1) * std::abs(cplx(1.0, 0.0) - b[k])) +
                          1e-12);
        }
    }
}
