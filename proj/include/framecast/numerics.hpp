#pragma once

#include "framecast/types.hpp"

#include <functional>
#include <vector>

namespace framecast::numerics {

/// Hermitian eigendecomposition, eigenvalues ascending, eigenvector phases
/// canonicalized (first significant component real-positive).
struct EigResult {
    RealVec values;
    Mat vectors;  // orthonormal columns, vectors.col(i) pairs with values[i]
};

struct SvdResult {
    Mat left;
    RealVec singulars;  // descending, >= 0
    Mat right;          // M = left * diag(singulars) * right.adjoint()
};

EigResult herm_eig(const Mat& m, const Tolerances& tol = Tolerances::active());

SvdResult svd(const Mat& m);

/// Moore-Penrose pseudoinverse. rank_tol < 0 selects the shared default
/// cutoff rank_tol_factor * sigma_max.
Mat pinv(const Mat& m, double rank_tol = -1.0, const Tolerances& tol = Tolerances::active());

/// Largest singular value.
double operator_norm(const Mat& m);

/// Max |eigenvalue| of a square matrix (Schur-based; eigenvectors are not
/// exposed, non-normal eigenbases are too ill-conditioned to report).
double spectral_radius(const Mat& m);

/// Eigenvalues of a general square matrix, sorted by (re, im) ascending.
std::vector<Complex> eigenvalues(const Mat& m);

/// Numerical rank under the shared cutoff.
Index rank(const Mat& m, const Tolerances& tol = Tolerances::active());

/// Orthonormal basis of the kernel (columns); empty matrix when trivial.
Mat kernel_basis(const Mat& m, const Tolerances& tol = Tolerances::active());

/// Solves the Stein (discrete Lyapunov) equation S - T S T* = W for the
/// unique Hermitian PSD solution S = sum_k T^k W (T*)^k. Requires
/// spectral_radius(T) < 1 - radius_margin, else SpectralRadiusError.
/// Direct d^2 x d^2 Kronecker solve for d <= 32, doubling accumulation above.
Mat stein_solve(const Mat& t, const Mat& w, const Tolerances& tol = Tolerances::active());

/// Functional calculus f(T) = Q f(Lambda) Q* for Hermitian T.
/// FunctionDomainError when f is non-finite at an eigenvalue.
Mat apply_hermitian_function(const Mat& t, const std::function<Complex(double)>& f,
                             const Tolerances& tol = Tolerances::active());

}  // namespace framecast::numerics
