#include "framecast/dynamics.hpp"

#include "framecast/numerics.hpp"
#include "framecast/random.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>

namespace framecast::dynamics {

namespace num = framecast::numerics;

FrameSystem iterate(const Mat& t, const Vec& phi, Index steps) {
    require_square(t, "iterate");
    if (phi.size() != t.rows()) throw DimensionError("iterate: generator dimension mismatch");
    if (steps < 1) throw ParamRangeError("iterate: K must be >= 1");
    require_finite(t, "iterate");

    Mat cols(t.rows(), steps);
    Vec x = phi;
    for (Index k = 0; k < steps; ++k) {
        cols.col(k) = x;
        if (k + 1 < steps) x = t * x;
    }
    return FrameSystem(std::move(cols), 0);
}

PowerDecayReport power_decay_test(const Mat& t, const Tolerances& tol) {
    PowerDecayReport r;
    r.spectral_radius = num::spectral_radius(t);
    // Margin keeps numerically-unitary inputs (Schur radius 1 +- ulps) on the
    // non-decaying side, in agreement with the iterative criterion.
    r.decays = r.spectral_radius < 1.0 - tol.radius_margin;
    return r;
}

// Gram-Schmidt over the first d Krylov vectors, reorthogonalized once; new
// directions below the shared rank cutoff are dropped.
Mat cyclic_basis(const Mat& t, const Vec& phi, const Tolerances& tol) {
    const Index d = t.rows();
    const double scale = phi.norm();
    if (scale == 0.0) return Mat(d, 0);

    Mat basis(d, d);
    Index count = 0;
    Vec x = phi;
    for (Index k = 0; k < d; ++k) {
        Vec y = x;
        for (Index j = 0; j < count; ++j) y -= basis.col(j) * (basis.col(j).dot(y));
        for (Index j = 0; j < count; ++j) y -= basis.col(j) * (basis.col(j).dot(y));
        if (y.norm() > tol.rank_cutoff(scale) && y.norm() > 1e-14 * x.norm()) {
            basis.col(count++) = y / y.norm();
        }
        x = t * x;
        if (count == d) break;
    }
    return basis.leftCols(count);
}

BesselReport bessel_test(const Mat& t, const Vec& phi, const Tolerances& tol) {
    require_square(t, "bessel_test");
    if (phi.size() != t.rows()) throw DimensionError("bessel_test: generator dimension mismatch");

    BesselReport r;
    if (phi.norm() == 0.0) {
        r.bessel = true;
        r.degenerate = true;
        return r;
    }

    const Mat basis = cyclic_basis(t, phi, tol);
    const Mat restricted = basis.adjoint() * t * basis;
    r.restricted_radius = num::spectral_radius(restricted);
    r.bessel = r.restricted_radius < 1.0 - tol.radius_margin;
    if (r.bessel) {
        const Vec phi_c = basis.adjoint() * phi;
        const Mat s = num::stein_solve(restricted, phi_c * phi_c.adjoint(), tol);
        r.trace_bound = s.trace().real();
    }
    return r;
}

RecoveryResult recover_operator(const FrameSystem& f, const Tolerances& tol) {
    const Index k = f.size();
    if (k < 2) throw ParamRangeError("recover_operator: need at least 2 vectors");

    const Mat first = f.mat.leftCols(k - 1);
    const Mat second = f.mat.rightCols(k - 1);

    RecoveryResult r;
    r.recovered = second * num::pinv(first, -1.0, tol);
    r.norm_of_recovered = num::operator_norm(r.recovered);

    double max_norm = 0.0;
    for (Index j = 0; j < k; ++j) max_norm = std::max(max_norm, f.mat.col(j).norm());
    double max_defect = 0.0;
    for (Index j = 0; j + 1 < k; ++j)
        max_defect = std::max(max_defect, (r.recovered * f.mat.col(j) - f.mat.col(j + 1)).norm());
    r.residual = max_norm > 0.0 ? max_defect / max_norm : 0.0;
    r.consistent = r.residual <= tol.tol_identity;

    // Truncated right-shift invariance of the synthesis kernel: a kernel
    // coefficient vector with last entry zero must stay in the kernel after
    // shifting, i.e. F2 annihilates ker(F1).
    const Mat null_first = num::kernel_basis(first, tol);
    if (null_first.cols() == 0) {
        r.kernel_shift_invariant = true;
    } else {
        const double scale = std::max(1.0, num::operator_norm(second));
        r.kernel_shift_invariant =
            num::operator_norm(second * null_first) <= tol.tol_identity * scale;
    }
    return r;
}

LinearIndependenceReport linear_independence_test(const FrameSystem& f, const Tolerances& tol) {
    LinearIndependenceReport r;
    r.rank = f.size() > 0 ? num::rank(f.mat, tol) : 0;
    r.independent = (r.rank == f.size());
    return r;
}

RangeDiagnostics range_diagnostics(const Mat& t, const std::vector<Complex>& extra,
                                   const Tolerances& tol) {
    require_square(t, "range_diagnostics");
    const Index d = t.rows();

    std::vector<Complex> grid = num::eigenvalues(t);
    grid.insert(grid.end(), extra.begin(), extra.end());

    RangeDiagnostics r;
    r.rank = num::rank(t, tol);
    r.closed_range = true;  // every subspace of C^d is closed
    for (const Complex& lambda : grid) {
        const Mat shifted = t - lambda * Mat::Identity(d, d);
        const RealVec s = num::svd(shifted).singulars;
        RangePoint p;
        p.lambda = lambda;
        p.smallest_singular = s.size() > 0 ? s(s.size() - 1) : 0.0;
        p.rank_defect = d - num::rank(shifted, tol);
        r.points.push_back(p);
    }
    return r;
}

Mat operator_response_matrix(const Vec& g, const Vec& e, const Tolerances& tol) {
    if (g.size() != e.size()) throw DimensionError("operator_response: dimension mismatch");
    if (std::abs(e.norm() - 1.0) > tol.tol_identity)
        throw NonUnitVectorError("operator_response: e must be a unit vector");
    return e * g.adjoint();
}

Vec operator_response(const Vec& g, const Vec& e, const Vec& f, const Tolerances& tol) {
    if (f.size() != g.size()) throw DimensionError("operator_response: dimension mismatch");
    return operator_response_matrix(g, e, tol) * f;
}

RepresentationReport representation_check(const Mat& t, const Vec& f1, const Tolerances& tol) {
    require_square(t, "representation_check");
    if (f1.size() != t.rows())
        throw DimensionError("representation_check: generator dimension mismatch");

    RepresentationReport r;
    const PowerDecayReport decay = power_decay_test(t, tol);
    r.condition_i = decay.decays;
    if (!decay.decays) return r;

    const Mat w = f1 * f1.adjoint();
    Mat s = num::stein_solve(t, w, tol);
    r.stein_residual = num::operator_norm(t * s * t.adjoint() - s + w);

    const num::EigResult eig = num::herm_eig(s, tol);
    const double lo = eig.values(0);
    const double hi = eig.values(eig.values.size() - 1);
    r.lower_bound = lo;
    r.upper_bound = hi;
    r.invertible = lo > tol.rank_cutoff(hi);
    r.is_frame = r.condition_i && r.invertible;
    r.frame_op = std::move(s);
    return r;
}

SpectralRep multiplication_rep(const Mat& t, const Vec& phi, const Tolerances& tol) {
    require_square(t, "multiplication_rep");
    if (phi.size() != t.rows())
        throw DimensionError("multiplication_rep: generator dimension mismatch");
    const double herm_defect = num::operator_norm(t - t.adjoint());
    if (herm_defect > tol.tol_identity * std::max(1.0, num::operator_norm(t)))
        throw NotHermitianError("multiplication_rep: operator is not self-adjoint");

    const num::EigResult eig = num::herm_eig(t, tol);
    const Index d = t.rows();

    // Merge numerically split nodes before deciding cyclicity.
    const double spread = eig.values(d - 1) - eig.values(0);
    const double merge_tol = tol.node_merge_factor * spread;
    for (Index i = 0; i + 1 < d; ++i)
        if (eig.values(i + 1) - eig.values(i) <= merge_tol)
            throw NotCyclicError("multiplication_rep: repeated eigenvalue at " +
                                 std::to_string(eig.values(i)));

    const double phi_norm = phi.norm();
    SpectralRep rep;
    rep.transform = Mat(d, d);
    for (Index i = 0; i < d; ++i) {
        const Complex coeff = eig.vectors.col(i).dot(phi);  // <q_i, phi> conj-linear first
        const double weight = std::norm(coeff);
        if (std::sqrt(weight) <= tol.rank_cutoff(phi_norm))
            throw NotCyclicError("multiplication_rep: spectral weight vanishes at node " +
                                 std::to_string(eig.values(i)));
        rep.nodes.push_back(eig.values(i));
        rep.weights.push_back(weight);
        rep.total_mass += weight;
        // row i of V: f(T)phi -> f(lambda_i), i.e. V = diag(1/<q_i,phi>) Q*
        rep.transform.row(i) = eig.vectors.col(i).adjoint() / coeff;
    }

    // Defects: V* (mu-adjoint) = V^H diag(w); unitarity measured on H,
    // multiplication measured in the mu-weighted operator norm.
    const Index m = d;
    Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(rep.weights.data(), m);
    const Mat v_star = rep.transform.adjoint() * w.asDiagonal();
    rep.unitarity_defect = num::operator_norm(v_star * rep.transform - Mat::Identity(d, d));

    const Mat mult = rep.transform * t * v_star;
    Mat diff = mult;
    for (Index i = 0; i < m; ++i) diff(i, i) -= rep.nodes[static_cast<std::size_t>(i)];
    const Eigen::VectorXd w_half = w.cwiseSqrt();
    const Mat weighted = w_half.asDiagonal() * diff * w_half.cwiseInverse().asDiagonal();
    rep.multiplication_defect = num::operator_norm(weighted);
    return rep;
}

namespace {

// Smallest N <= limit with ||T^N - I|| <= tol_identity, or 0 when none.
Index detect_period(const Mat& t, Index limit, const Tolerances& tol) {
    const Index d = t.rows();
    Mat p = Mat::Identity(d, d);
    for (Index n = 1; n <= limit; ++n) {
        p = p * t;
        if (!p.allFinite()) return 0;
        if (num::operator_norm(p - Mat::Identity(d, d)) <= tol.tol_identity) return n;
    }
    return 0;
}

FrameSystem two_sided_orbit(const Mat& t, const Vec& f0, Index k) {
    const Index d = t.rows();
    Eigen::PartialPivLU<Mat> lu(t);
    Mat cols(d, 2 * k + 1);
    cols.col(k) = f0;
    for (Index j = 1; j <= k; ++j) {
        cols.col(k + j) = t * cols.col(k + j - 1);
        cols.col(k - j) = lu.solve(cols.col(k - j + 1));
    }
    return FrameSystem(std::move(cols), -static_cast<long>(k));
}

}  // namespace

ZTightUnitaryReport z_tight_unitary_check(const Mat& t, const Vec& f0, Index k,
                                          const Tolerances& tol) {
    require_square(t, "z_tight_unitary_check");
    if (f0.size() != t.rows())
        throw DimensionError("z_tight_unitary_check: generator dimension mismatch");
    if (k < 1) throw ParamRangeError("z_tight_unitary_check: K must be >= 1");

    const RealVec s = num::svd(t).singulars;
    if (s(s.size() - 1) <= tol.rank_cutoff(s(0)))
        throw SingularOperatorError("z_tight_unitary_check: operator is not invertible");

    ZTightUnitaryReport r;
    const Index d = t.rows();
    r.isometry_defect = std::max(
        num::operator_norm(t.adjoint() * t - Mat::Identity(d, d)),
        num::operator_norm(t * t.adjoint() - Mat::Identity(d, d)));
    r.unitary = r.isometry_defect <= tol.tol_identity;

    r.period = detect_period(t, 2 * k + 1, tol);
    r.periodic = r.period > 0;

    // Periodic case: the Z-orbit is the exact finite group orbit; otherwise
    // fall back to the symmetric truncation.
    const FrameSystem orbit =
        r.periodic ? iterate(t, f0, r.period) : two_sided_orbit(t, f0, k);
    const frames::FrameReport bounds = frames::frame_bounds(orbit, tol);
    r.spans_space = bounds.spans_space;
    r.tightness_defect = bounds.tightness_defect;
    r.frame_bound_lower = bounds.lower_bound;
    r.frame_bound_upper = bounds.upper_bound;
    r.tight = bounds.spans_space && bounds.tight;

    // Decidable direction of the proposition: an exact periodic tight orbit
    // must come from a unitary.
    r.implication_ok = !(r.periodic && r.tight) || r.unitary;
    return r;
}

DualOperatorReport dual_operator_check(const Mat& t, const Vec& f0, const Mat& u, const Vec& g0,
                                       Index k, const Tolerances& tol) {
    require_square(t, "dual_operator_check");
    require_square(u, "dual_operator_check");
    if (t.rows() != u.rows() || f0.size() != t.rows() || g0.size() != t.rows())
        throw DimensionError("dual_operator_check: dimension mismatch");
    if (k < 0) throw ParamRangeError("dual_operator_check: K must be >= 0");

    const Index d = t.rows();
    DualOperatorReport r;
    r.tu_star_defect = num::operator_norm(t * u.adjoint() - Mat::Identity(d, d));
    const double scale = std::max(1.0, num::operator_norm(t));
    r.operators_equal = num::operator_norm(u - t) <= tol.tol_identity * scale;

    const Index period_t = detect_period(t, 2 * k + 1, tol);
    const Index period_u = detect_period(u, 2 * k + 1, tol);
    if (period_t > 0 && period_t == period_u) {
        r.periodic = true;
        r.period = period_t;
        Mat sum = Mat::Zero(d, d);
        Vec x = f0, y = g0;
        for (Index j = 0; j < r.period; ++j) {
            sum += x * y.adjoint();
            x = t * x;
            y = u * y;
        }
        r.reconstruction_defect = num::operator_norm(sum - Mat::Identity(d, d));
        return r;
    }

    Mat sum = f0 * g0.adjoint();
    if (k > 0) {
        const RealVec st = num::svd(t).singulars;
        const RealVec su = num::svd(u).singulars;
        if (st(st.size() - 1) <= tol.rank_cutoff(st(0)) ||
            su(su.size() - 1) <= tol.rank_cutoff(su(0)))
            throw SingularOperatorError("dual_operator_check: negative powers need invertibility");

        Eigen::PartialPivLU<Mat> lu_t(t), lu_u(u);
        Vec x = f0, y = g0;
        for (Index j = 1; j <= k; ++j) {
            x = t * x;
            y = u * y;
            sum += x * y.adjoint();
        }
        x = f0;
        y = g0;
        for (Index j = 1; j <= k; ++j) {
            x = lu_t.solve(x);
            y = lu_u.solve(y);
            sum += x * y.adjoint();
        }
    }
    r.reconstruction_defect = num::operator_norm(sum - Mat::Identity(d, d));
    return r;
}

namespace {

struct Cluster {
    Complex center;
    Index multiplicity = 0;
};

std::vector<Cluster> cluster_eigenvalues(const std::vector<Complex>& vals, double merge_tol) {
    std::vector<Cluster> clusters;
    for (const Complex& v : vals) {
        bool placed = false;
        for (Cluster& c : clusters) {
            if (std::abs(v - c.center) <= merge_tol) {
                c.center = (c.center * static_cast<double>(c.multiplicity) + v) /
                           static_cast<double>(c.multiplicity + 1);
                ++c.multiplicity;
                placed = true;
                break;
            }
        }
        if (!placed) clusters.push_back({v, 1});
    }
    std::sort(clusters.begin(), clusters.end(), [](const Cluster& a, const Cluster& b) {
        if (a.center.real() != b.center.real()) return a.center.real() < b.center.real();
        return a.center.imag() < b.center.imag();
    });
    return clusters;
}

}  // namespace

ConjectureCertificate conjecture_explore(const Mat& t, Index trials, std::uint64_t seed,
                                         const Tolerances& tol) {
    require_square(t, "conjecture_explore");
    require_finite(t, "conjecture_explore");
    const Index d = t.rows();

    const std::vector<Complex> vals = num::eigenvalues(t);
    // Defective eigenvalues split like sqrt(eps) under rounding; cluster on
    // that scale so a perturbed Jordan block stays one block.
    const double merge_tol = 32.0 * std::max(1.0, num::operator_norm(t)) *
                             std::sqrt(std::numeric_limits<double>::epsilon());

    ConjectureCertificate cert;
    Index dim_sum = 0;
    bool all_certified = true;

    const std::vector<Cluster> clusters = cluster_eigenvalues(vals, merge_tol);
    for (std::size_t ci = 0; ci < clusters.size(); ++ci) {
        const Cluster& cluster = clusters[ci];
        ConjectureBlock block;
        block.eigenvalue = cluster.center;

        // Generalized eigenspace: kernel of (T - lambda I)^multiplicity.
        Mat shifted = t - cluster.center * Mat::Identity(d, d);
        Mat power = Mat::Identity(d, d);
        for (Index j = 0; j < cluster.multiplicity; ++j) power = power * shifted;
        block.basis = num::kernel_basis(power, tol);
        block.dim = block.basis.cols();
        dim_sum += block.dim;

        if (block.dim != cluster.multiplicity || block.dim == 0) {
            block.reason = "block extraction failed";
            all_certified = false;
            cert.blocks.push_back(std::move(block));
            continue;
        }

        const Mat projector_out =
            Mat::Identity(d, d) - block.basis * block.basis.adjoint();
        block.invariance_defect =
            num::operator_norm(projector_out * (t * block.basis)) /
            std::max(1.0, num::operator_norm(t));
        cert.invariance_defect = std::max(cert.invariance_defect, block.invariance_defect);

        const Mat restricted = block.basis.adjoint() * t * block.basis;
        block.restricted_radius = num::spectral_radius(restricted);
        if (block.restricted_radius >= 1.0 - tol.radius_margin) {
            block.reason = "Bessel fails";
            all_certified = false;
            cert.blocks.push_back(std::move(block));
            continue;
        }

        // Candidate generators in block coordinates: standard basis, the
        // all-ones vector, then seeded random draws.
        std::vector<Vec> candidates;
        for (Index j = 0; j < block.dim; ++j) {
            Vec e = Vec::Zero(block.dim);
            e(j) = 1.0;
            candidates.push_back(e);
        }
        if (block.dim > 1) candidates.push_back(Vec::Ones(block.dim));
        for (Index trial = 0; trial < trials; ++trial) {
            Rng rng(derive_seed(seed, static_cast<std::uint64_t>(ci),
                                static_cast<std::uint64_t>(trial)));
            candidates.push_back(rng.gaussian_vector(block.dim));
        }

        for (const Vec& candidate : candidates) {
            const RepresentationReport rep = representation_check(restricted, candidate, tol);
            if (rep.is_frame) {
                block.certified = true;
                block.generator = block.basis * candidate;
                block.lower_bound = rep.lower_bound;
                block.upper_bound = rep.upper_bound;
                break;
            }
        }
        if (!block.certified) {
            block.reason = "no generator certified";
            all_certified = false;
        }
        cert.blocks.push_back(std::move(block));
    }

    cert.covers_space = all_certified && dim_sum == d;
    return cert;
}

}  // namespace framecast::dynamics
