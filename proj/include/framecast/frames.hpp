#pragma once

#include "framecast/types.hpp"

#include <vector>

namespace framecast::frames {

/// Ordered finite system of vectors in C^dim. Columns of `mat` are the
/// vectors; `index_origin` records the index of the first one (0 for one-sided
/// orbits, -K for symmetric Z-truncations).
struct FrameSystem {
    Index dim = 0;
    Mat mat;  // dim x K
    long index_origin = 0;

    FrameSystem() = default;
    FrameSystem(Mat columns, long origin = 0);
    static FrameSystem from_vectors(const std::vector<Vec>& vectors, long origin = 0);

    Index size() const { return mat.cols(); }
    Vec vector(Index k) const { return mat.col(k); }
};

struct FrameReport {
    double lower_bound = 0.0;  // optimal A on span(F)
    double upper_bound = 0.0;  // optimal B
    Index rank = 0;
    bool spans_space = false;  // A is a frame bound for the whole space only if set
    bool tight = false;
    double tightness_defect = 0.0;  // (B - A) / B
    double synthesis_norm_sq = 0.0; // ||U||^2 = B
};

struct FrameSequenceReport {
    std::vector<double> restricted_spectrum;  // nonzero eigenvalues of U*U, ascending
    bool contained = false;                   // restricted spectrum within ]0, ||U||^2]
    bool full_spectrum_bound = false;         // sigma(U*U) within [0, ||U||^2]
};

struct ScalarFrameReport {
    double sum = 0.0;  // sum_k |<f, f_k>|^2
    bool lower_ok = false;
    bool upper_ok = false;
};

/// dim x K matrix whose k-th column is the k-th vector.
Mat synthesis_matrix(const FrameSystem& f);

/// Analysis coefficients (<f, f_k>)_k, conjugate-linear in the system vectors.
Vec analysis_coefficients(const FrameSystem& f, const Vec& v);

/// Frame operator S = U U* = sum_k f_k f_k* (Hermitian PSD).
Mat frame_operator(const FrameSystem& f);

/// Optimal bounds: B = sigma_max(U)^2, A = smallest nonzero sigma^2
/// (the lower frame bound on span(F) when the system does not span).
FrameReport frame_bounds(const FrameSystem& f, const Tolerances& tol = Tolerances::active());

/// Spectrum test of U*U restricted to N(U)^perp against ]0, ||U||^2].
FrameSequenceReport frame_sequence_test(const FrameSystem& f,
                                        const Tolerances& tol = Tolerances::active());

/// Checks that the coefficient sequence (<f, f_k>)_k is a frame for C with
/// bounds A||f||^2, B||f||^2. ZeroVectorError for f = 0.
ScalarFrameReport scalar_frame_check(const FrameSystem& f, const Vec& v,
                                     const Tolerances& tol = Tolerances::active());

/// Canonical dual {S^-1 f_k}; NotAFrameError when F does not span.
FrameSystem canonical_dual(const FrameSystem& f, const Tolerances& tol = Tolerances::active());

/// || U_F U_G* - I ||; zero iff G is a dual of F.
double duality_defect(const FrameSystem& f, const FrameSystem& g);

}  // namespace framecast::frames
