#include "framecast/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace framecast::numerics {

namespace {

// Rotate each column so its first significant entry is real-positive; keeps
// reports byte-reproducible across runs.
void canonicalize_phases(Mat& q) {
    for (Index c = 0; c < q.cols(); ++c) {
        double peak = q.col(c).cwiseAbs().maxCoeff();
        if (peak <= 0.0) continue;
        for (Index r = 0; r < q.rows(); ++r) {
            double a = std::abs(q(r, c));
            if (a > 1e-12 * peak) {
                q.col(c) *= std::conj(q(r, c)) / a;
                break;
            }
        }
    }
}

}  // namespace

EigResult herm_eig(const Mat& m, const Tolerances& tol) {
    require_square(m, "herm_eig");
    require_finite(m, "herm_eig");
    const double scale = m.cwiseAbs().maxCoeff();
    const Mat sym = 0.5 * (m + m.adjoint());
    if (scale > 0.0 && operator_norm(m - sym) > tol.tol_identity * operator_norm(m) + 1e-300)
        throw NotHermitianError("herm_eig: matrix is not Hermitian within tolerance");

    Eigen::SelfAdjointEigenSolver<Mat> solver(sym);
    if (solver.info() != Eigen::Success)
        throw Error(StatusCode::internal, "herm_eig: eigensolver failed to converge");

    EigResult out;
    out.values = solver.eigenvalues();  // ascending
    out.vectors = solver.eigenvectors();
    canonicalize_phases(out.vectors);
    return out;
}

SvdResult svd(const Mat& m) {
    require_finite(m, "svd");
    Eigen::JacobiSVD<Mat> solver(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SvdResult out;
    out.left = solver.matrixU();
    out.singulars = solver.singularValues();
    out.right = solver.matrixV();
    return out;
}

Mat pinv(const Mat& m, double rank_tol, const Tolerances& tol) {
    require_finite(m, "pinv");
    if (m.size() == 0) return Mat::Zero(m.cols(), m.rows());
    SvdResult d = svd(m);
    const double sigma_max = d.singulars.size() > 0 ? d.singulars(0) : 0.0;
    const double cutoff = rank_tol >= 0.0 ? rank_tol : tol.rank_cutoff(sigma_max);

    Mat out = Mat::Zero(m.cols(), m.rows());
    for (Index i = 0; i < d.singulars.size(); ++i) {
        if (d.singulars(i) > cutoff && d.singulars(i) > 0.0)
            out += (1.0 / d.singulars(i)) * d.right.col(i) * d.left.col(i).adjoint();
    }
    return out;
}

double operator_norm(const Mat& m) {
    require_finite(m, "operator_norm");
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Mat> solver(m);
    return solver.singularValues()(0);
}

double spectral_radius(const Mat& m) {
    require_square(m, "spectral_radius");
    require_finite(m, "spectral_radius");
    if (m.rows() == 0) return 0.0;
    Eigen::ComplexEigenSolver<Mat> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw Error(StatusCode::internal, "spectral_radius: Schur iteration failed");
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

std::vector<Complex> eigenvalues(const Mat& m) {
    require_square(m, "eigenvalues");
    require_finite(m, "eigenvalues");
    Eigen::ComplexEigenSolver<Mat> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw Error(StatusCode::internal, "eigenvalues: Schur iteration failed");
    std::vector<Complex> vals(solver.eigenvalues().data(),
                              solver.eigenvalues().data() + solver.eigenvalues().size());
    std::sort(vals.begin(), vals.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return vals;
}

Index rank(const Mat& m, const Tolerances& tol) {
    if (m.size() == 0) return 0;
    RealVec s = svd(m).singulars;
    const double cutoff = tol.rank_cutoff(s.size() > 0 ? s(0) : 0.0);
    Index r = 0;
    for (Index i = 0; i < s.size(); ++i)
        if (s(i) > cutoff && s(i) > 0.0) ++r;
    return r;
}

Mat kernel_basis(const Mat& m, const Tolerances& tol) {
    if (m.cols() == 0) return Mat::Zero(0, 0);
    Eigen::JacobiSVD<Mat> solver(m, Eigen::ComputeFullV);
    RealVec s = solver.singularValues();
    const double cutoff = tol.rank_cutoff(s.size() > 0 ? s(0) : 0.0);
    Index r = 0;
    for (Index i = 0; i < s.size(); ++i)
        if (s(i) > cutoff && s(i) > 0.0) ++r;
    return solver.matrixV().rightCols(m.cols() - r);
}

namespace {

// (I - conj(T) (x) T) vec(S) = vec(W), column-major vec convention.
Mat stein_direct(const Mat& t, const Mat& w) {
    const Index d = t.rows();
    const Index n = d * d;
    Mat system = Mat::Identity(n, n);
    for (Index j = 0; j < d; ++j)
        for (Index i = 0; i < d; ++i)
            system.block(i * d, j * d, d, d) -= std::conj(t(i, j)) * t;
    Vec rhs = Eigen::Map<const Vec>(w.data(), n);
    Vec sol = system.partialPivLu().solve(rhs);
    return Eigen::Map<const Mat>(sol.data(), d, d);
}

// Doubling accumulation: S_{2n} = S_n + T^n S_n (T^n)*.
Mat stein_series(const Mat& t, const Mat& w) {
    Mat s = w;
    Mat p = t;
    const double w_scale = std::max(operator_norm(w), 1e-300);
    for (int step = 0; step < 128; ++step) {
        const double pn = operator_norm(p);
        if (pn * pn * operator_norm(s) <= 1e-18 * w_scale) break;
        s = s + p * s * p.adjoint();
        p = p * p;
    }
    return s;
}

}  // namespace

Mat stein_solve(const Mat& t, const Mat& w, const Tolerances& tol) {
    require_square(t, "stein_solve");
    require_square(w, "stein_solve");
    if (t.rows() != w.rows()) throw DimensionError("stein_solve: T and W sizes differ");
    require_finite(t, "stein_solve");
    require_finite(w, "stein_solve");

    const double rho = spectral_radius(t);
    if (rho >= 1.0 - tol.radius_margin)
        throw SpectralRadiusError("stein_solve: spectral radius " + std::to_string(rho) +
                                  " admits no convergent series");

    Mat s = t.rows() <= 32 ? stein_direct(t, w) : stein_series(t, w);
    return 0.5 * (s + s.adjoint());
}

Mat apply_hermitian_function(const Mat& t, const std::function<Complex(double)>& f,
                             const Tolerances& tol) {
    EigResult eig = herm_eig(t, tol);
    Vec fv(eig.values.size());
    for (Index i = 0; i < eig.values.size(); ++i) {
        Complex y = f(eig.values(i));
        if (!std::isfinite(y.real()) || !std::isfinite(y.imag()))
            throw FunctionDomainError("apply_hermitian_function: f undefined at eigenvalue " +
                                      std::to_string(eig.values(i)));
        fv(i) = y;
    }
    return eig.vectors * fv.asDiagonal() * eig.vectors.adjoint();
}

}  // namespace framecast::numerics
