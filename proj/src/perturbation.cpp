#include "framecast/perturbation.hpp"

#include "framecast/numerics.hpp"
#include "framecast/random.hpp"

#include <cmath>

namespace framecast::perturbation {

namespace num = framecast::numerics;

bool PerturbationParams::admissible(double a) const {
    if (a <= 0.0) return false;
    return std::max(lambda1 + mu / std::sqrt(a), lambda2) < 1.0;
}

std::pair<double, double> casazza_bounds(double a, double b, const PerturbationParams& p) {
    if (a <= 0.0 || b <= 0.0)
        throw AdmissibilityError("casazza_bounds: reference bounds must be positive");
    if (p.lambda1 < 0.0 || p.lambda2 < 0.0 || p.mu < 0.0)
        throw AdmissibilityError("casazza_bounds: perturbation parameters must be nonnegative");
    if (!p.admissible(a))
        throw AdmissibilityError("casazza_bounds: max(l1 + mu/sqrt(A), l2) must stay below 1");

    const double lower_shrink = (p.lambda1 + p.lambda2 + p.mu / std::sqrt(a)) / (1.0 + p.lambda2);
    const double upper_grow = (p.lambda1 + p.lambda2 + p.mu / std::sqrt(b)) / (1.0 - p.lambda2);
    const double a_new = a * (1.0 - lower_shrink) * (1.0 - lower_shrink);
    const double b_new = b * (1.0 + upper_grow) * (1.0 + upper_grow);
    return {a_new, b_new};
}

PerturbationParams perturbation_fit(const FrameSystem& f, const FrameSystem& g) {
    if (f.dim != g.dim || f.size() != g.size())
        throw DimensionError("perturbation_fit: systems must share shape");
    PerturbationParams p;
    p.mu = num::operator_norm(f.mat - g.mat);
    return p;
}

PerturbationReport prop28_check(const FrameSystem& f, const FrameSystem& g, double lambda1,
                                double lambda2, Index trials, std::uint64_t seed,
                                const Tolerances& tol) {
    if (f.dim != g.dim || f.size() != g.size())
        throw DimensionError("prop28_check: systems must share shape");
    if (!(lambda1 > 0.0 && lambda1 < 1.0 && lambda2 > 0.0 && lambda2 < 1.0))
        throw ParamRangeError("prop28_check: lambda1, lambda2 must lie in (0,1)");
    if (trials < 1) throw ParamRangeError("prop28_check: trials must be >= 1");

    const frames::FrameReport f_report = frames::frame_bounds(f, tol);
    if (!f_report.spans_space)
        throw NotAFrameError("prop28_check: reference system must be a frame");

    PerturbationReport r;
    r.params.lambda1 = lambda1;
    r.params.lambda2 = lambda2;

    // Sampled falsification of
    //   |sum c_k <f_k - g_k, x>| <= l1 |sum c_k <f_k, x>| + l2 |sum c_k <g_k, x>|
    // over unit (x, c); each trial's ratio is (lhs - rhs) / (lhs + rhs).
    const Mat diff = f.mat - g.mat;
    double worst = -1.0;
    for (Index trial = 0; trial < trials; ++trial) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(trial), 0));
        const Vec x = rng.unit_vector(f.dim);
        const Vec c = rng.unit_vector(f.size());
        // sum_k c_k <f_k, x> is x^H (F c): one synthesis apply per side.
        const Complex f_side = x.dot(f.mat * c);
        const Complex g_side = x.dot(g.mat * c);
        const Complex d_side = x.dot(diff * c);
        const double lhs = std::abs(d_side);
        const double rhs = lambda1 * std::abs(f_side) + lambda2 * std::abs(g_side);
        const double denom = lhs + rhs;
        const double ratio = denom > 0.0 ? (lhs - rhs) / denom : 0.0;
        worst = std::max(worst, ratio);
    }
    r.max_violation_ratio = worst;
    r.hypothesis_holds = worst <= tol.tol_identity;
    if (!r.hypothesis_holds) return r;

    const auto predicted = casazza_bounds(f_report.lower_bound, f_report.upper_bound, r.params);
    r.predicted_lower = predicted.first;
    r.predicted_upper = predicted.second;
    const frames::FrameReport g_report = frames::frame_bounds(g, tol);
    r.actual_lower = g_report.lower_bound;
    r.actual_upper = g_report.upper_bound;
    r.sandwich_ok = r.predicted_lower <= r.actual_lower + tol.tol_identity &&
                    r.actual_upper <= r.predicted_upper + tol.tol_identity;
    r.representation = dynamics::recover_operator(g, tol);
    return r;
}

PerturbationReport sandwich_verify(const FrameSystem& f, const FrameSystem& g,
                                   const Tolerances& tol) {
    PerturbationReport r;
    r.params = perturbation_fit(f, g);

    const frames::FrameReport f_report = frames::frame_bounds(f, tol);
    const auto predicted = casazza_bounds(f_report.lower_bound, f_report.upper_bound, r.params);
    r.predicted_lower = predicted.first;
    r.predicted_upper = predicted.second;

    const frames::FrameReport g_report = frames::frame_bounds(g, tol);
    r.actual_lower = g_report.lower_bound;
    r.actual_upper = g_report.upper_bound;
    r.sandwich_ok = r.predicted_lower <= r.actual_lower + tol.tol_identity &&
                    r.actual_upper <= r.predicted_upper + tol.tol_identity;
    return r;
}

}  // namespace framecast::perturbation
