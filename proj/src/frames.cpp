#include "framecast/frames.hpp"

#include "framecast/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace framecast::frames {

FrameSystem::FrameSystem(Mat columns, long origin) : dim(columns.rows()), mat(std::move(columns)),
                                                     index_origin(origin) {
    require_finite(mat, "FrameSystem");
}

FrameSystem FrameSystem::from_vectors(const std::vector<Vec>& vectors, long origin) {
    if (vectors.empty()) {
        FrameSystem f;
        f.index_origin = origin;
        return f;
    }
    const Index dim = vectors.front().size();
    Mat m(dim, static_cast<Index>(vectors.size()));
    for (std::size_t k = 0; k < vectors.size(); ++k) {
        if (vectors[k].size() != dim)
            throw DimensionError("FrameSystem: vectors do not share a dimension");
        m.col(static_cast<Index>(k)) = vectors[k];
    }
    return FrameSystem(std::move(m), origin);
}

Mat synthesis_matrix(const FrameSystem& f) { return f.mat; }

Vec analysis_coefficients(const FrameSystem& f, const Vec& v) {
    if (v.size() != f.dim) throw DimensionError("analysis_coefficients: vector dimension mismatch");
    // entry k = <v, f_k> = f_k^H v
    return f.mat.adjoint() * v;
}

Mat frame_operator(const FrameSystem& f) {
    if (f.size() == 0) return Mat::Zero(f.dim, f.dim);
    Mat s = f.mat * f.mat.adjoint();
    return 0.5 * (s + s.adjoint());
}

namespace {

void require_nondegenerate(const FrameSystem& f, double sigma_max) {
    if (f.size() == 0 || f.dim == 0)
        throw DegenerateSystemError("system holds no vectors");
    if (sigma_max <= 0.0)
        throw DegenerateSystemError("all vectors are zero");
}

}  // namespace

FrameReport frame_bounds(const FrameSystem& f, const Tolerances& tol) {
    const RealVec s = f.size() > 0 ? numerics::svd(f.mat).singulars : RealVec();
    const double sigma_max = s.size() > 0 ? s(0) : 0.0;
    require_nondegenerate(f, sigma_max);

    const double cutoff = tol.rank_cutoff(sigma_max);
    Index rank = 0;
    double sigma_min_nonzero = sigma_max;
    for (Index i = 0; i < s.size(); ++i) {
        if (s(i) > cutoff) {
            ++rank;
            sigma_min_nonzero = s(i);  // descending, last survivor is smallest
        }
    }

    FrameReport r;
    r.rank = rank;
    r.spans_space = (rank == f.dim);
    r.upper_bound = sigma_max * sigma_max;
    r.lower_bound = sigma_min_nonzero * sigma_min_nonzero;
    r.synthesis_norm_sq = r.upper_bound;
    r.tightness_defect = (r.upper_bound - r.lower_bound) / r.upper_bound;
    r.tight = r.tightness_defect <= tol.tol_identity;
    return r;
}

FrameSequenceReport frame_sequence_test(const FrameSystem& f, const Tolerances& tol) {
    const RealVec s = f.size() > 0 ? numerics::svd(f.mat).singulars : RealVec();
    const double sigma_max = s.size() > 0 ? s(0) : 0.0;
    require_nondegenerate(f, sigma_max);

    const double cutoff = tol.rank_cutoff(sigma_max);
    const double norm_sq = sigma_max * sigma_max;

    FrameSequenceReport r;
    for (Index i = s.size() - 1; i >= 0; --i)
        if (s(i) > cutoff) r.restricted_spectrum.push_back(s(i) * s(i));
    r.contained = !r.restricted_spectrum.empty() &&
                  r.restricted_spectrum.front() > 0.0 &&
                  r.restricted_spectrum.back() <= norm_sq + tol.tol_identity * norm_sq;

    // full Gram spectrum, zeros included
    r.full_spectrum_bound = true;
    for (Index i = 0; i < s.size(); ++i) {
        const double lam = s(i) * s(i);
        if (lam < -tol.tol_identity * norm_sq || lam > norm_sq + tol.tol_identity * norm_sq)
            r.full_spectrum_bound = false;
    }
    return r;
}

ScalarFrameReport scalar_frame_check(const FrameSystem& f, const Vec& v, const Tolerances& tol) {
    if (v.size() != f.dim) throw DimensionError("scalar_frame_check: vector dimension mismatch");
    if (v.norm() == 0.0) throw ZeroVectorError("scalar_frame_check: f = 0 is excluded");

    const FrameReport bounds = frame_bounds(f, tol);
    const double norm_sq = v.squaredNorm();

    ScalarFrameReport r;
    r.sum = analysis_coefficients(f, v).squaredNorm();
    const double slack = tol.tol_identity * std::max(1.0, bounds.upper_bound * norm_sq);
    r.lower_ok = r.sum >= bounds.lower_bound * norm_sq - slack;
    r.upper_ok = r.sum <= bounds.upper_bound * norm_sq + slack;
    return r;
}

FrameSystem canonical_dual(const FrameSystem& f, const Tolerances& tol) {
    const FrameReport bounds = frame_bounds(f, tol);
    if (!bounds.spans_space)
        throw NotAFrameError("canonical_dual: system spans a proper subspace");
    Mat s = frame_operator(f);
    Mat dual = s.ldlt().solve(f.mat);
    return FrameSystem(std::move(dual), f.index_origin);
}

double duality_defect(const FrameSystem& f, const FrameSystem& g) {
    if (f.dim != g.dim || f.size() != g.size())
        throw DimensionError("duality_defect: systems differ in shape");
    Mat m = f.mat * g.mat.adjoint();
    return numerics::operator_norm(m - Mat::Identity(f.dim, f.dim));
}

}  // namespace framecast::frames
