#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace framecast {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RealVec = Eigen::VectorXd;
using Index = Eigen::Index;

/// Status taxonomy shared by exceptions, the C API and the CLI exit codes.
enum class StatusCode : int {
    ok = 0,
    malformed = 1,
    dimension_mismatch = 2,
    frame_sequence_only = 3,
    degenerate_system = 4,
    spectral_radius = 5,
    not_cyclic = 6,
    admissibility = 7,
    domain = 8,
    internal = 9,
};

class Error : public std::runtime_error {
public:
    Error(StatusCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    StatusCode code() const noexcept { return code_; }

private:
    StatusCode code_;
};

#define FRAMECAST_ERROR(NAME, CODE)                                                     \
    class NAME : public Error {                                                         \
    public:                                                                             \
        explicit NAME(const std::string& what) : Error(StatusCode::CODE, what) {}       \
    }

FRAMECAST_ERROR(MalformedInputError, malformed);
FRAMECAST_ERROR(NonFiniteError, malformed);
FRAMECAST_ERROR(ParamRangeError, malformed);
FRAMECAST_ERROR(DimensionError, dimension_mismatch);
FRAMECAST_ERROR(DegenerateSystemError, degenerate_system);
FRAMECAST_ERROR(SpectralRadiusError, spectral_radius);
FRAMECAST_ERROR(NotCyclicError, not_cyclic);
FRAMECAST_ERROR(AdmissibilityError, admissibility);
FRAMECAST_ERROR(ZeroVectorError, domain);
FRAMECAST_ERROR(NotAFrameError, domain);
FRAMECAST_ERROR(NotHermitianError, domain);
FRAMECAST_ERROR(NonUnitVectorError, domain);
FRAMECAST_ERROR(SingularOperatorError, domain);
FRAMECAST_ERROR(FunctionDomainError, domain);

#undef FRAMECAST_ERROR

/// Numerical thresholds used across the toolkit.
///
/// `tol_identity` gates every "equals within tolerance" decision (defects,
/// residuals, tightness). `rank_tol_factor` is the single shared rank cutoff:
/// singular values below rank_tol_factor * sigma_max count as zero everywhere
/// (rank, kernels, pseudoinverse). `radius_margin` keeps the geometric-series
/// solver away from spectral radius 1. `node_merge_factor` merges numerically
/// split eigenvalue nodes relative to the spectral spread.
struct Tolerances {
    double tol_identity = 1e-9;
    double rank_tol_factor = 1e-10;
    double radius_margin = 1e-8;
    double node_merge_factor = 1e-8;

    /// Defaults with the FRAMECAST_TOL_IDENTITY environment override applied.
    static Tolerances active() {
        Tolerances t;
        if (const char* env = std::getenv("FRAMECAST_TOL_IDENTITY")) {
            char* end = nullptr;
            double v = std::strtod(env, &end);
            if (end != env && v > 0.0) t.tol_identity = v;
        }
        return t;
    }

    double rank_cutoff(double sigma_max) const { return rank_tol_factor * sigma_max; }
};

/// Inner product, conjugate-linear in the second slot: <f, g> = sum_i f_i conj(g_i).
inline Complex inner(const Vec& f, const Vec& g) {
    if (f.size() != g.size()) throw DimensionError("inner: vector sizes differ");
    return g.dot(f);
}

inline bool all_finite(const Mat& m) { return m.allFinite(); }

inline void require_finite(const Mat& m, const char* where) {
    if (!m.allFinite()) throw NonFiniteError(std::string(where) + ": non-finite entries");
}

inline void require_square(const Mat& m, const char* where) {
    if (m.rows() != m.cols()) throw DimensionError(std::string(where) + ": matrix is not square");
}

}  // namespace framecast
