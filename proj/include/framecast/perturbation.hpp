#pragma once

#include "framecast/dynamics.hpp"
#include "framecast/frames.hpp"
#include "framecast/types.hpp"

#include <cstdint>
#include <optional>

namespace framecast::perturbation {

using dynamics::RecoveryResult;
using frames::FrameSystem;

struct PerturbationParams {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double mu = 0.0;

    /// max(lambda1 + mu/sqrt(A), lambda2) < 1 for the reference lower bound A.
    bool admissible(double a) const;
};

struct PerturbationReport {
    PerturbationParams params;
    double predicted_lower = 0.0;  // A'
    double predicted_upper = 0.0;  // B'
    double actual_lower = 0.0;     // A_g
    double actual_upper = 0.0;     // B_g
    bool sandwich_ok = false;      // A' <= A_g and B_g <= B'
    double max_violation_ratio = 0.0;  // sampled falsification bound (prop28 path)
    bool hypothesis_holds = false;     // sampled, prop28 path
    std::optional<RecoveryResult> representation;
};

/// The explicit perturbed-frame bounds
///   A' = A (1 - (l1 + l2 + mu/sqrt(A)) / (1 + l2))^2
///   B' = B (1 + (l1 + l2 + mu/sqrt(B)) / (1 - l2))^2.
/// AdmissibilityError when max(l1 + mu/sqrt(A), l2) >= 1.
std::pair<double, double> casazza_bounds(double a, double b, const PerturbationParams& p);

/// Canonical certified triple (0, 0, ||U_F - U_G||); satisfies the
/// perturbation hypothesis for every coefficient sequence.
PerturbationParams perturbation_fit(const FrameSystem& f, const FrameSystem& g);

/// Sampled check of the scalar-coefficient hypothesis
///   |sum_k c_k <f_k - g_k, f>| <= l1 |sum_k c_k <f_k, f>| + l2 |sum_k c_k <g_k, f>|
/// over seeded random unit (f, c) pairs; on success reports the mu = 0
/// predicted bounds and the recovered operator representation of G.
PerturbationReport prop28_check(const FrameSystem& f, const FrameSystem& g, double lambda1,
                                double lambda2, Index trials, std::uint64_t seed,
                                const Tolerances& tol = Tolerances::active());

/// End-to-end bound sandwich using the certified (0, 0, mu) triple.
PerturbationReport sandwich_verify(const FrameSystem& f, const FrameSystem& g,
                                   const Tolerances& tol = Tolerances::active());

}  // namespace framecast::perturbation
