#pragma once

#include "framecast/frames.hpp"
#include "framecast/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace framecast::dynamics {

using frames::FrameSystem;

/// Orbit system {T^k phi}; horizon = nullopt means the infinite system,
/// admissible only while the restricted spectral radius stays below 1.
struct IteratedSystem {
    Mat op;
    Vec generator;
    std::optional<Index> horizon;
};

struct PowerDecayReport {
    bool decays = false;
    double spectral_radius = 0.0;
};

struct BesselReport {
    bool bessel = false;
    double trace_bound = 0.0;       // sum_k ||T^k phi||^2 when bessel
    double restricted_radius = 0.0; // spectral radius on the cyclic subspace
    bool degenerate = false;        // phi = 0
};

struct RecoveryResult {
    Mat recovered;           // T_hat = F2 * pinv(F1)
    double residual = 0.0;   // max_k ||T_hat f_k - f_{k+1}|| / max_k ||f_k||
    bool consistent = false;
    bool kernel_shift_invariant = false;
    double norm_of_recovered = 0.0;
};

struct LinearIndependenceReport {
    bool independent = false;
    Index rank = 0;
};

struct RangePoint {
    Complex lambda;
    Index rank_defect = 0;
    double smallest_singular = 0.0;
};

struct RangeDiagnostics {
    std::vector<RangePoint> points;
    bool closed_range = true;  // finite dimension: always
    Index rank = 0;            // rank of T itself
};

struct RepresentationReport {
    bool condition_i = false;       // (T*)^n -> 0
    std::optional<Mat> frame_op;    // Stein solution S when condition_i holds
    bool invertible = false;        // lambda_min(S) above the rank cutoff
    double stein_residual = 0.0;    // ||T S T* - S + f1 f1*||
    bool is_frame = false;
    double lower_bound = 0.0;       // lambda_min(S)
    double upper_bound = 0.0;       // lambda_max(S)
};

/// Diagonalization of Hermitian T relative to the scalar spectral measure
/// of phi: nodes = sigma(T), weights w_i = ||P_i phi||^2, and the transform
/// matrix V with V(f(T) phi) = (f(lambda_i))_i, unitary for the weighted
/// inner product <u,v>_mu = sum_i u_i conj(v_i) w_i.
struct SpectralRep {
    std::vector<double> nodes;    // distinct eigenvalues, ascending
    std::vector<double> weights;  // spectral measure of each node
    Mat transform;                // m x d matrix of V in node-indicator coordinates
    double total_mass = 0.0;      // sum of weights = ||phi||^2
    double unitarity_defect = 0.0;
    double multiplication_defect = 0.0;
};

struct ZTightUnitaryReport {
    bool tight = false;  // tight as a frame for the whole space
    double tightness_defect = 0.0;
    double isometry_defect = 0.0;  // max(||T*T - I||, ||T T* - I||)
    bool unitary = false;
    bool spans_space = false;
    bool periodic = false;  // T^N = I detected for some N <= 2K+1
    Index period = 0;
    double frame_bound_lower = 0.0;
    double frame_bound_upper = 0.0;
    bool implication_ok = true;  // exact tight periodic orbit forces unitary
};

struct DualOperatorReport {
    double reconstruction_defect = 0.0;  // ||sum_k (T^k f0)(U^k g0)* - I||
    double tu_star_defect = 0.0;         // ||T U* - I||
    bool operators_equal = false;        // ||U - T|| within tolerance
    bool periodic = false;
    Index period = 0;
};

struct ConjectureBlock {
    Mat basis;          // orthonormal columns spanning the invariant block
    Complex eigenvalue; // cluster location
    Index dim = 0;
    double restricted_radius = 0.0;
    double invariance_defect = 0.0;
    bool certified = false;
    Vec generator;              // ambient coordinates, set when certified
    double lower_bound = 0.0;   // block frame bounds when certified
    double upper_bound = 0.0;
    std::string reason;         // empty when certified; "Bessel fails" etc.
};

struct ConjectureCertificate {
    std::vector<ConjectureBlock> blocks;
    bool covers_space = false;  // every block certified and dimensions sum to d
    double invariance_defect = 0.0;
};

/// Orbit (phi, T phi, ..., T^{K-1} phi) with index origin 0.
FrameSystem iterate(const Mat& t, const Vec& phi, Index steps);

/// Theorem-level decay test: (T*)^n -> 0 iff spectral_radius(T) < 1.
/// Radii within radius_margin of 1 count as non-decaying.
PowerDecayReport power_decay_test(const Mat& t, const Tolerances& tol = Tolerances::active());

/// Orthonormal basis of the cyclic subspace span{phi, T phi, T^2 phi, ...};
/// zero columns for phi = 0.
Mat cyclic_basis(const Mat& t, const Vec& phi, const Tolerances& tol = Tolerances::active());

/// Square-summability of the orbit: spectral radius of T restricted to the
/// cyclic subspace of phi below 1; trace_bound = trace of the Stein solution.
BesselReport bessel_test(const Mat& t, const Vec& phi,
                         const Tolerances& tol = Tolerances::active());

/// Least-squares transition operator F2 * pinv(F1), with the consistency
/// criterion (kernel of F1 maps into the kernel of F2) and the truncated
/// right-shift invariance of the synthesis kernel.
RecoveryResult recover_operator(const FrameSystem& f, const Tolerances& tol = Tolerances::active());

LinearIndependenceReport linear_independence_test(const FrameSystem& f,
                                                  const Tolerances& tol = Tolerances::active());

/// Rank defect and sigma_min of T - lambda I over the eigenvalues of T plus
/// caller-supplied probe points.
RangeDiagnostics range_diagnostics(const Mat& t, const std::vector<Complex>& extra = {},
                                   const Tolerances& tol = Tolerances::active());

/// Rank-one response f -> <f, g> e for a unit vector e.
Vec operator_response(const Vec& g, const Vec& e, const Vec& f,
                      const Tolerances& tol = Tolerances::active());

/// Matrix of the response map (= e g*), norm ||g||.
Mat operator_response_matrix(const Vec& g, const Vec& e,
                             const Tolerances& tol = Tolerances::active());

/// Two-condition frame characterization of {T^k f1}: power decay plus an
/// invertible S with T S T* = S - f1 f1* (solved via stein_solve).
RepresentationReport representation_check(const Mat& t, const Vec& f1,
                                          const Tolerances& tol = Tolerances::active());

/// Multiplication-operator representation of a Hermitian T with cyclic phi.
/// NotCyclicError on repeated eigenvalues (after node merging) or a vanishing
/// spectral weight.
SpectralRep multiplication_rep(const Mat& t, const Vec& phi,
                               const Tolerances& tol = Tolerances::active());

/// Z-indexed truncation {T^k f0}_{k=-K..K}; exact-period orbits (T^N = I)
/// are upgraded to the finite group orbit before the tightness test.
ZTightUnitaryReport z_tight_unitary_check(const Mat& t, const Vec& f0, Index k,
                                          const Tolerances& tol = Tolerances::active());

/// Dual-pair diagnostics: reconstruction sum against the identity, the
/// T U* = I identity, and whether U = T.
DualOperatorReport dual_operator_check(const Mat& t, const Vec& f0, const Mat& u, const Vec& g0,
                                       Index k, const Tolerances& tol = Tolerances::active());

/// Generalized-eigenspace decomposition with a seeded per-block generator
/// search; blocks with restricted spectral radius >= 1 are reported
/// uncertified ("Bessel fails"), never guessed.
ConjectureCertificate conjecture_explore(const Mat& t, Index trials, std::uint64_t seed,
                                         const Tolerances& tol = Tolerances::active());

}  // namespace framecast::dynamics
