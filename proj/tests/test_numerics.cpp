#include "framecast/numerics.hpp"
#include "framecast/random.hpp"

#include <doctest.h>

#include "helpers.hpp"

#include <cmath>
#include <complex>

namespace num = framecast::numerics;
using fc::Complex;
using fc::Index;
using fc::Mat;
using fc::Vec;

TEST_CASE("herm_eig solves a known 2x2 symmetric matrix") {
    const Mat m = mat2(2.0, 1.0, 1.0, 2.0);
    const num::EigResult eig = num::herm_eig(m);

    REQUIRE(eig.values.size() == 2);
    CHECK(eig.values(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eig.values(1) == doctest::Approx(3.0).epsilon(1e-12));

    // Orthonormal eigenvectors with M v = lambda v.
    CHECK(max_diff(eig.vectors.adjoint() * eig.vectors, Mat::Identity(2, 2)) < 1e-12);
    for (Index i = 0; i < 2; ++i) {
        const Vec v = eig.vectors.col(i);
        CHECK((m * v - eig.values(i) * v).norm() < 1e-12);
        // canonical phase: leading significant entry real positive
        CHECK(v(0).imag() == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(v(0).real() > 0.0);
    }
}

TEST_CASE("herm_eig rejects non-Hermitian input") {
    CHECK_THROWS_AS(num::herm_eig(mat2(0.0, 1.0, 0.0, 0.0)), fc::NotHermitianError);
}

TEST_CASE("svd returns descending singular values and reconstructs the input") {
    const Mat m = mat2(3.0, 0.0, 0.0, 4.0);
    const num::SvdResult s = num::svd(m);
    CHECK(s.singulars(0) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(s.singulars(1) == doctest::Approx(3.0).epsilon(1e-12));

    fc::Rng rng(11);
    const Mat rect = rng.gaussian_matrix(3, 5);
    const num::SvdResult rs = num::svd(rect);
    const Mat rebuilt =
        rs.left * rs.singulars.cast<Complex>().asDiagonal() * rs.right.adjoint();
    CHECK(max_diff(rebuilt, rect) < 1e-12);
    for (Index i = 0; i + 1 < rs.singulars.size(); ++i)
        CHECK(rs.singulars(i) >= rs.singulars(i + 1));
}

TEST_CASE("pinv satisfies the Moore-Penrose identities") {
    fc::Rng rng(7);
    const Mat a = rng.gaussian_matrix(4, 6);
    const Mat p = num::pinv(a);

    CHECK(max_diff(a * p * a, a) < 1e-11);
    CHECK(max_diff(p * a * p, p) < 1e-11);
    CHECK(max_diff((a * p).adjoint(), a * p) < 1e-11);
    CHECK(max_diff((p * a).adjoint(), p * a) < 1e-11);
}

TEST_CASE("pinv inverts only above the rank cutoff") {
    const Mat m = diag2(2.0, 0.0);
    const Mat p = num::pinv(m);
    CHECK(std::abs(p(0, 0) - Complex(0.5)) < 1e-14);
    CHECK(std::abs(p(1, 1)) < 1e-14);
}

TEST_CASE("operator_norm equals the largest singular value") {
    CHECK(num::operator_norm(diag2(1.0, -2.0)) == doctest::Approx(2.0).epsilon(1e-12));

    fc::Rng rng(3);
    const Mat a = rng.gaussian_matrix(4, 4);
    // independent route: sqrt of the top eigenvalue of A*A
    const num::EigResult gram = num::herm_eig(a.adjoint() * a);
    const double expected = std::sqrt(gram.values(gram.values.size() - 1));
    CHECK(num::operator_norm(a) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("spectral_radius handles normal and defective cases") {
    CHECK(num::spectral_radius(mat2(0.0, 5.0, 0.0, 0.0)) < 1e-7);
    CHECK(num::spectral_radius(diag2(0.5, 1.0 / 3.0)) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(num::spectral_radius(mat2(0.0, -1.0, 1.0, 0.0)) ==
          doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("eigenvalues are sorted by real then imaginary part") {
    Mat m = Mat::Zero(3, 3);
    m(0, 0) = Complex(2.0, 0.0);
    m(1, 1) = Complex(1.0, 1.0);
    m(2, 2) = Complex(1.0, -1.0);
    const std::vector<Complex> vals = num::eigenvalues(m);
    REQUIRE(vals.size() == 3);
    CHECK(std::abs(vals[0] - Complex(1.0, -1.0)) < 1e-12);
    CHECK(std::abs(vals[1] - Complex(1.0, 1.0)) < 1e-12);
    CHECK(std::abs(vals[2] - Complex(2.0, 0.0)) < 1e-12);
}

TEST_CASE("rank and kernel_basis agree on a rank-one matrix") {
    const Mat m = mat2(1.0, 2.0, 2.0, 4.0);
    CHECK(num::rank(m) == 1);

    const Mat k = num::kernel_basis(m);
    REQUIRE(k.cols() == 1);
    CHECK((m * k).norm() < 1e-12);
    CHECK(std::abs(k.col(0).norm() - 1.0) < 1e-12);
    // canonical phase puts the kernel line at (2,-1)/sqrt(5)
    const double r5 = std::sqrt(5.0);
    CHECK(std::abs(k(0, 0) - Complex(2.0 / r5)) < 1e-12);
    CHECK(std::abs(k(1, 0) - Complex(-1.0 / r5)) < 1e-12);
}

TEST_CASE("kernel_basis of a full-rank matrix is empty") {
    CHECK(num::kernel_basis(diag2(1.0, 2.0)).cols() == 0);
}

TEST_CASE("stein_solve matches the closed-form diagonal solution") {
    const Mat t = diag2(0.5, 1.0 / 3.0);
    const Vec phi = vec2(1.0, 1.0);
    const Mat s = num::stein_solve(t, phi * phi.adjoint());

    CHECK(std::abs(s(0, 0) - Complex(4.0 / 3.0)) < 1e-13);
    CHECK(std::abs(s(0, 1) - Complex(6.0 / 5.0)) < 1e-13);
    CHECK(std::abs(s(1, 0) - Complex(6.0 / 5.0)) < 1e-13);
    CHECK(std::abs(s(1, 1) - Complex(9.0 / 8.0)) < 1e-13);
}

TEST_CASE("stein_solve matches brute-force partial sums on a random contraction") {
    fc::Rng rng(21);
    Mat t = rng.gaussian_matrix(3, 3);
    t *= 0.6 / num::spectral_radius(t);
    const Mat c = rng.gaussian_matrix(3, 2);
    const Mat w = c * c.adjoint();

    const Mat s = num::stein_solve(t, w);

    Mat sum = Mat::Zero(3, 3);
    Mat term = w;
    for (int k = 0; k < 2000; ++k) {
        sum += term;
        term = t * term * t.adjoint();
        if (term.cwiseAbs().maxCoeff() < 1e-18) break;
    }
    CHECK(max_diff(s, sum) < 1e-10 * num::operator_norm(s));
    CHECK(num::operator_norm(s - t * s * t.adjoint() - w) < 1e-11 * num::operator_norm(s));
    // solution is Hermitian PSD
    CHECK(max_diff(s, s.adjoint()) < 1e-12);
    CHECK(num::herm_eig(s).values(0) > -1e-10);
}

TEST_CASE("stein_solve doubling path reproduces the scalar geometric series") {
    // d = 33 exceeds the direct Kronecker cutoff
    const Index d = 33;
    Mat t = Mat::Zero(d, d);
    Mat w = Mat::Zero(d, d);
    for (Index i = 0; i < d; ++i) {
        const double ti = 0.9 * static_cast<double>(i + 1) / static_cast<double>(d);
        t(i, i) = ti;
        w(i, i) = 1.0 + static_cast<double>(i);
    }
    const Mat s = num::stein_solve(t, w);
    for (Index i = 0; i < d; ++i) {
        const double ti = 0.9 * static_cast<double>(i + 1) / static_cast<double>(d);
        const double expected = (1.0 + static_cast<double>(i)) / (1.0 - ti * ti);
        CHECK(std::abs(s(i, i) - Complex(expected)) < 1e-10 * expected);
    }
}

TEST_CASE("stein_solve rejects spectral radius at or beyond the margin") {
    CHECK_THROWS_AS(num::stein_solve(Mat::Identity(2, 2), Mat::Identity(2, 2)),
                    fc::SpectralRadiusError);
    CHECK_THROWS_AS(num::stein_solve(mat1(1.0 - 1e-9), mat1(1.0)),
                    fc::SpectralRadiusError);
}

TEST_CASE("apply_hermitian_function reproduces polynomial and square-root calculus") {
    const Mat m = mat2(2.0, 1.0, 1.0, 2.0);

    const Mat squared = num::apply_hermitian_function(m, [](double x) { return Complex(x * x); });
    CHECK(max_diff(squared, m * m) < 1e-12);

    const Mat root =
        num::apply_hermitian_function(m, [](double x) { return Complex(std::sqrt(x)); });
    CHECK(max_diff(root * root, m) < 1e-12);
}

TEST_CASE("apply_hermitian_function rejects non-finite values on the spectrum") {
    const Mat singular = diag2(1.0, 0.0);
    CHECK_THROWS_AS(
        num::apply_hermitian_function(singular, [](double x) { return Complex(1.0 / x); }),
        fc::FunctionDomainError);
}
