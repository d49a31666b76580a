#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qip/qip.hpp"
#include "test_support.hpp"

using namespace qip;
using qip::testing::random_hermitian;
using qip::testing::random_matrix;

namespace {
Catch::Approx near(double x, double margin = 1e-9) {
    return Catch::Approx(x).margin(margin);
}
} // namespace

TEST_CASE("matrix construction and validation") {
    ComplexMatrix z(2, 3);
    REQUIRE(z.rows() == 2);
    REQUIRE(z.cols() == 3);
    REQUIRE(z(1, 2) == Complex{0.0, 0.0});
    REQUIRE(z.shape_string() == "2x3");

    REQUIRE_THROWS_AS(ComplexMatrix(2, 2, {Complex{1, 0}}), ShapeError);
    REQUIRE_THROWS_AS(
        ComplexMatrix(1, 1, {Complex{std::nan(""), 0}}), ValidationError);
    REQUIRE_THROWS_AS(
        ComplexMatrix(1, 1, {Complex{0, std::numeric_limits<double>::infinity()}}),
        ValidationError);

    const ComplexMatrix id = ComplexMatrix::identity(3);
    REQUIRE(id(0, 0) == Complex{1.0, 0.0});
    REQUIRE(id(0, 1) == Complex{0.0, 0.0});
}

TEST_CASE("matrix arithmetic") {
    std::mt19937_64 gen(11);
    const ComplexMatrix a = random_matrix(3, 3, gen);
    const ComplexMatrix b = random_matrix(3, 3, gen);

    SECTION("addition and scaling are entrywise") {
        const ComplexMatrix sum = a + b;
        const ComplexMatrix scaled = Complex{0.0, 2.0} * a;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                REQUIRE(sum(i, j) == a(i, j) + b(i, j));
                REQUIRE(scaled(i, j) == Complex{0.0, 2.0} * a(i, j));
            }
    }

    SECTION("sigma_x sigma_y = i sigma_z") {
        const ComplexMatrix prod = matmul(pauli_x(), pauli_y());
        const ComplexMatrix expect = Complex{0.0, 1.0} * pauli_z();
        REQUIRE(max_abs_diff(prod, expect) < 1e-15);
    }

    SECTION("Pauli algebra: squares are the identity, traces vanish") {
        for (const ComplexMatrix& s : {pauli_x(), pauli_y(), pauli_z()}) {
            REQUIRE(max_abs_diff(matmul(s, s), ComplexMatrix::identity(2)) < 1e-15);
            REQUIRE(std::abs(trace(s)) < 1e-15);
            REQUIRE(max_hermiticity_deviation(s) < 1e-15);
        }
    }

    SECTION("matmul shape errors") {
        REQUIRE_THROWS_AS(matmul(random_matrix(2, 3, gen), random_matrix(2, 3, gen)),
                          ShapeError);
        REQUIRE_THROWS_AS(trace(random_matrix(2, 3, gen)), ShapeError);
    }

    SECTION("dagger is the conjugate transpose and an involution") {
        const ComplexMatrix ad = dagger(a);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) REQUIRE(ad(i, j) == std::conj(a(j, i)));
        REQUIRE(max_abs_diff(dagger(ad), a) == 0.0);
        // tr(AB) = tr(BA)
        const Complex t1 = trace(matmul(a, b));
        const Complex t2 = trace(matmul(b, a));
        REQUIRE(std::abs(t1 - t2) < 1e-12);
    }
}

TEST_CASE("kron follows the row-major composite index convention") {
    // index of |kl> is k*dB + l, so (A (x) B)(k*dB+l, m*dB+n) = A(k,m) B(l,n)
    std::mt19937_64 gen(12);
    const ComplexMatrix a = random_matrix(2, 2, gen);
    const ComplexMatrix b = random_matrix(3, 3, gen);
    const ComplexMatrix k = kron(a, b);
    REQUIRE(k.rows() == 6);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t p = 0; p < 3; ++p)
                for (std::size_t q = 0; q < 3; ++q)
                    REQUIRE(k(i * 3 + p, j * 3 + q) == a(i, j) * b(p, q));

    SECTION("mixed-product identity (A(x)B)(C(x)D) = AC (x) BD") {
        const ComplexMatrix c = random_matrix(2, 2, gen);
        const ComplexMatrix d = random_matrix(3, 3, gen);
        const ComplexMatrix lhs = matmul(kron(a, b), kron(c, d));
        const ComplexMatrix rhs = kron(matmul(a, c), matmul(b, d));
        REQUIRE(max_abs_diff(lhs, rhs) < 1e-12);
    }
}

TEST_CASE("hermitian_eig on fixed matrices") {
    SECTION("sigma_z: eigenvalues ascending (-1, 1)") {
        const HermitianEigenResult r = hermitian_eig(pauli_z());
        REQUIRE(r.eigenvalues[0] == near(-1.0, 1e-12));
        REQUIRE(r.eigenvalues[1] == near(1.0, 1e-12));
        // eigenvector of -1 is |1> up to phase
        REQUIRE(std::abs(r.eigenvectors(1, 0)) == near(1.0, 1e-12));
        REQUIRE(std::abs(r.eigenvectors(0, 0)) == near(0.0, 1e-12));
    }

    SECTION("sigma_x: eigenvectors are the +-45 degree superpositions") {
        const HermitianEigenResult r = hermitian_eig(pauli_x());
        REQUIRE(r.eigenvalues[0] == near(-1.0, 1e-12));
        REQUIRE(r.eigenvalues[1] == near(1.0, 1e-12));
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t i = 0; i < 2; ++i)
                REQUIRE(std::abs(r.eigenvectors(i, j)) == near(1.0 / std::sqrt(2.0), 1e-12));
    }

    SECTION("rejects non-Hermitian and non-square input") {
        ComplexMatrix bad(2, 2, {Complex{0, 0}, Complex{1, 0}, Complex{2, 0}, Complex{0, 0}});
        REQUIRE_THROWS_AS(hermitian_eig(bad), HermiticityError);
        REQUIRE_THROWS_AS(hermitian_eig(ComplexMatrix(2, 3)), ShapeError);
    }
}

TEST_CASE("hermitian_eig against the closed-form 2x2 spectrum") {
    std::mt19937_64 gen(13);
    for (int trial = 0; trial < 200; ++trial) {
        const ComplexMatrix a = random_hermitian(2, gen);
        const HermitianEigenResult r = hermitian_eig(a);
        const std::vector<double> expect = oracle::eig2x2(a);
        REQUIRE(r.eigenvalues[0] == near(expect[0], 1e-10));
        REQUIRE(r.eigenvalues[1] == near(expect[1], 1e-10));
    }
}

TEST_CASE("hermitian_eig properties on random matrices up to 8x8") {
    std::mt19937_64 gen(14);
    for (std::size_t n : {2, 3, 4, 5, 8}) {
        for (int trial = 0; trial < 20; ++trial) {
            const ComplexMatrix a = random_hermitian(n, gen);
            const HermitianEigenResult r = hermitian_eig(a);

            REQUIRE(std::is_sorted(r.eigenvalues.begin(), r.eigenvalues.end()));

            // A V = V diag(lambda)
            ComplexMatrix lambda(n, n);
            for (std::size_t i = 0; i < n; ++i) lambda(i, i) = r.eigenvalues[i];
            const ComplexMatrix residual =
                matmul(a, r.eigenvectors) + (-1.0) * matmul(r.eigenvectors, lambda);
            REQUIRE(max_abs_diff(residual, ComplexMatrix(n, n)) < 1e-10);

            // V unitary
            const ComplexMatrix gram = matmul(dagger(r.eigenvectors), r.eigenvectors);
            REQUIRE(max_abs_diff(gram, ComplexMatrix::identity(n)) < 1e-10);

            // spectrum sums to the trace
            double ev_sum = 0.0;
            for (double ev : r.eigenvalues) ev_sum += ev;
            REQUIRE(ev_sum == near(trace(a).real(), 1e-9));
        }
    }
}

TEST_CASE("svd reproduces, orthogonalizes and orders") {
    std::mt19937_64 gen(15);

    SECTION("antisymmetric singlet coefficient matrix has equal singular values") {
        const double r = 1.0 / std::sqrt(2.0);
        ComplexMatrix m(2, 2, {Complex{0, 0}, Complex{r, 0}, Complex{-r, 0}, Complex{0, 0}});
        const SvdResult sv = svd(m);
        REQUIRE(sv.singular_values[0] == near(r, 1e-12));
        REQUIRE(sv.singular_values[1] == near(r, 1e-12));
    }

    SECTION("random rectangular matrices") {
        const std::pair<std::size_t, std::size_t> shapes[] = {
            {2, 2}, {3, 2}, {2, 3}, {4, 4}, {5, 3}};
        for (auto [rows, cols] : shapes) {
            for (int trial = 0; trial < 20; ++trial) {
                const ComplexMatrix a = random_matrix(rows, cols, gen);
                const SvdResult sv = svd(a);
                const std::size_t k = std::min(rows, cols);
                REQUIRE(sv.singular_values.size() == k);
                REQUIRE(std::is_sorted(sv.singular_values.rbegin(),
                                       sv.singular_values.rend()));
                for (double s : sv.singular_values) REQUIRE(s >= 0.0);

                // U, V have orthonormal columns
                REQUIRE(max_abs_diff(matmul(dagger(sv.u), sv.u),
                                     ComplexMatrix::identity(k)) < 1e-10);
                REQUIRE(max_abs_diff(matmul(dagger(sv.v), sv.v),
                                     ComplexMatrix::identity(k)) < 1e-10);

                // A = U diag(s) V^dagger
                ComplexMatrix sig(k, k);
                for (std::size_t i = 0; i < k; ++i) sig(i, i) = sv.singular_values[i];
                const ComplexMatrix recon = matmul(matmul(sv.u, sig), dagger(sv.v));
                REQUIRE(max_abs_diff(recon, a) < 1e-10);
            }
        }
    }

    SECTION("rank-deficient input still yields orthonormal factors") {
        ComplexMatrix a(3, 3);
        a(0, 0) = 2.0; // rank 1
        const SvdResult sv = svd(a);
        REQUIRE(sv.singular_values[0] == near(2.0, 1e-12));
        REQUIRE(sv.singular_values[1] == near(0.0, 1e-12));
        REQUIRE(max_abs_diff(matmul(dagger(sv.u), sv.u), ComplexMatrix::identity(3)) < 1e-10);
        ComplexMatrix sig(3, 3);
        sig(0, 0) = sv.singular_values[0];
        REQUIRE(max_abs_diff(matmul(matmul(sv.u, sig), dagger(sv.v)), a) < 1e-10);
    }
}

TEST_CASE("is_psd separates spectra at the tolerance") {
    ComplexMatrix ok(2, 2);
    ok(0, 0) = 0.5;
    ok(1, 1) = 0.5;
    REQUIRE(is_psd(ok).is_psd);

    ComplexMatrix neg(2, 2);
    neg(0, 0) = 1.0;
    neg(1, 1) = -1e-3;
    const PsdCheck c = is_psd(neg);
    REQUIRE_FALSE(c.is_psd);
    REQUIRE(c.min_eigenvalue == near(-1e-3, 1e-10));

    // a dip smaller than the tolerance still counts as PSD
    ComplexMatrix dip(2, 2);
    dip(0, 0) = 1.0;
    dip(1, 1) = -1e-10;
    REQUIRE(is_psd(dip, 1e-9).is_psd);
}
