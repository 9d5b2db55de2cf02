#include "framecast/perturbation.hpp"

#include "framecast/dynamics.hpp"
#include "framecast/numerics.hpp"
#include "framecast/random.hpp"

#include <doctest.h>

#include "helpers.hpp"

#include <cmath>
#include <utility>

namespace dyn = fc::dynamics;
namespace frames = fc::frames;
namespace num = fc::numerics;
namespace pert = fc::perturbation;
using fc::Index;
using fc::Mat;
using fc::Vec;
using frames::FrameSystem;
using pert::PerturbationParams;

namespace {

FrameSystem onb2() { return system_of({basis_vec(2, 0), basis_vec(2, 1)}); }

FrameSystem scaled_first(double factor) {
    return system_of({factor * basis_vec(2, 0), basis_vec(2, 1)});
}

PerturbationParams params(double l1, double l2, double mu) {
    PerturbationParams p;
    p.lambda1 = l1;
    p.lambda2 = l2;
    p.mu = mu;
    return p;
}

}  // namespace

TEST_CASE("casazza_bounds evaluates the closed formulas") {
    const auto [a1, b1] = pert::casazza_bounds(1.0, 1.0, params(0.0, 0.0, 0.1));
    CHECK(std::abs(a1 - 0.81) < 1e-15);
    CHECK(std::abs(b1 - 1.21) < 1e-15);

    const auto [a2, b2] = pert::casazza_bounds(2.5, 7.0, params(0.0, 0.0, 0.0));
    CHECK(a2 == 2.5);
    CHECK(b2 == 7.0);

    const auto [a3, b3] = pert::casazza_bounds(1.0, 1.0, params(0.0, 0.5, 0.0));
    CHECK(std::abs(a3 - 4.0 / 9.0) < 1e-15);
    CHECK(std::abs(b3 - 4.0) < 1e-14);
}

TEST_CASE("casazza_bounds rejects inadmissible parameters") {
    CHECK_THROWS_AS(pert::casazza_bounds(1.0, 1.0, params(0.0, 0.0, 1.0)),
                    fc::AdmissibilityError);
    CHECK_THROWS_AS(pert::casazza_bounds(1.0, 1.0, params(0.0, 1.0, 0.0)),
                    fc::AdmissibilityError);
    CHECK_THROWS_AS(pert::casazza_bounds(0.0, 1.0, params(0.0, 0.0, 0.0)),
                    fc::AdmissibilityError);
    CHECK_THROWS_AS(pert::casazza_bounds(1.0, 1.0, params(-0.1, 0.0, 0.0)),
                    fc::AdmissibilityError);
}

TEST_CASE("casazza_bounds shrinks A and grows B monotonically") {
    const double grid[4] = {0.0, 0.05, 0.2, 0.4};
    double prev_a = 1e300, prev_b = -1.0;
    for (double l1 : grid) {
        const auto [a, b] = pert::casazza_bounds(1.0, 2.0, params(l1, 0.1, 0.1));
        CHECK(a <= prev_a + 1e-15);
        CHECK(b >= prev_b - 1e-15);
        prev_a = a;
        prev_b = b;
    }
    prev_a = 1e300;
    prev_b = -1.0;
    for (double mu : grid) {
        const auto [a, b] = pert::casazza_bounds(1.0, 2.0, params(0.1, 0.1, mu));
        CHECK(a <= prev_a + 1e-15);
        CHECK(b >= prev_b - 1e-15);
        prev_a = a;
        prev_b = b;
    }
    prev_a = 1e300;
    prev_b = -1.0;
    for (double l2 : grid) {
        const auto [a, b] = pert::casazza_bounds(1.0, 2.0, params(0.1, l2, 0.1));
        CHECK(a <= prev_a + 1e-15);
        CHECK(b >= prev_b - 1e-15);
        prev_a = a;
        prev_b = b;
    }
}

TEST_CASE("perturbation_fit certifies the synthesis-difference norm") {
    const PerturbationParams same = pert::perturbation_fit(onb2(), onb2());
    CHECK(same.lambda1 == 0.0);
    CHECK(same.lambda2 == 0.0);
    CHECK(same.mu == 0.0);
    CHECK(same.admissible(1.0));

    const PerturbationParams near = pert::perturbation_fit(onb2(), scaled_first(1.1));
    CHECK(near.mu == doctest::Approx(0.1).epsilon(1e-12));

    // swapping both vectors makes the difference rank one: (e1-e2)(e1-e2)*, norm 2
    const FrameSystem swapped = system_of({basis_vec(2, 1), basis_vec(2, 0)});
    const PerturbationParams far = pert::perturbation_fit(onb2(), swapped);
    CHECK(far.mu == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_FALSE(far.admissible(1.0));

    // a quarter turn spreads the difference evenly: both singular values sqrt(2)
    const FrameSystem rotated = system_of({basis_vec(2, 1), -basis_vec(2, 0)});
    const PerturbationParams turn = pert::perturbation_fit(onb2(), rotated);
    CHECK(turn.mu == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK_FALSE(turn.admissible(1.0));

    CHECK_THROWS_AS(pert::perturbation_fit(onb2(), system_of({basis_vec(2, 0)})),
                    fc::DimensionError);
}

TEST_CASE("sandwich_verify brackets the perturbed bounds") {
    const pert::PerturbationReport grow = pert::sandwich_verify(onb2(), scaled_first(1.1));
    CHECK(grow.sandwich_ok);
    CHECK(std::abs(grow.predicted_lower - 0.81) < 1e-12);
    CHECK(std::abs(grow.predicted_upper - 1.21) < 1e-12);
    CHECK(grow.actual_lower == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(grow.actual_upper == doctest::Approx(1.21).epsilon(1e-12));

    const pert::PerturbationReport same = pert::sandwich_verify(onb2(), onb2());
    CHECK(same.sandwich_ok);
    CHECK(same.predicted_lower == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(same.actual_upper == doctest::Approx(1.0).epsilon(1e-12));

    const pert::PerturbationReport shrink = pert::sandwich_verify(onb2(), scaled_first(0.5));
    CHECK(shrink.sandwich_ok);
    CHECK(std::abs(shrink.predicted_lower - 0.25) < 1e-12);
    CHECK(std::abs(shrink.predicted_upper - 2.25) < 1e-12);
    CHECK(shrink.actual_lower == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(shrink.actual_upper == doctest::Approx(1.0).epsilon(1e-12));

    const FrameSystem swapped = system_of({basis_vec(2, 1), basis_vec(2, 0)});
    CHECK_THROWS_AS(pert::sandwich_verify(onb2(), swapped), fc::AdmissibilityError);
}

TEST_CASE("sandwich_verify holds across random admissible perturbations") {
    fc::Rng rng(97);
    for (int trial = 0; trial < 50; ++trial) {
        const Index dim = 2 + trial % 3;
        const Index count = dim + 2;
        const Mat base = rng.gaussian_matrix(dim, count);
        const FrameSystem f(base);
        const double a = frames::frame_bounds(f).lower_bound;

        Mat noise = rng.gaussian_matrix(dim, count);
        noise *= 0.4 * std::sqrt(a) / num::operator_norm(noise);
        const FrameSystem g(base + noise);

        const pert::PerturbationReport r = pert::sandwich_verify(f, g);
        CHECK(r.sandwich_ok);
    }
}

TEST_CASE("prop28_check accepts the identical and the uniformly scaled system") {
    const FrameSystem f = dyn::iterate(diag2(0.5, 1.0 / 3.0), vec2(1.0, 1.0), 6);
    const pert::PerturbationReport same = pert::prop28_check(f, f, 0.3, 0.3, 200, 1);
    CHECK(same.hypothesis_holds);
    CHECK(same.max_violation_ratio <= 0.0);
    REQUIRE(same.representation.has_value());
    CHECK(same.representation->consistent);

    Mat scaled_mat = f.mat * 1.01;
    const FrameSystem g(std::move(scaled_mat));
    const pert::PerturbationReport r = pert::prop28_check(f, g, 0.5, 0.5, 500, 2);
    CHECK(r.hypothesis_holds);
    CHECK(r.sandwich_ok);
    REQUIRE(r.representation.has_value());
    CHECK(r.representation->consistent);

    // end to end: the recovered operator regenerates the perturbed orbit
    const Mat t_hat = r.representation->recovered;
    const FrameSystem regen = dyn::iterate(t_hat, g.vector(0), g.size());
    CHECK(max_diff(regen.mat, g.mat) <= 1e-8);
}

TEST_CASE("prop28_check rejects the sign-flipped system") {
    const FrameSystem f = dyn::iterate(diag2(0.5, 1.0 / 3.0), vec2(1.0, 1.0), 6);
    Mat flipped = -f.mat;
    const FrameSystem g(std::move(flipped));
    const pert::PerturbationReport r = pert::prop28_check(f, g, 0.4, 0.4, 200, 3);
    CHECK_FALSE(r.hypothesis_holds);
    // every witness yields (2s - 0.8s) / (2s + 0.8s) = 3/7
    CHECK(r.max_violation_ratio == doctest::Approx(3.0 / 7.0).epsilon(1e-9));
    CHECK_FALSE(r.representation.has_value());
}

TEST_CASE("prop28_check holds with zero violation for identical systems on any seed") {
    const FrameSystem f = system_of({vec2(1.0, 0.5), vec2(-0.25, 1.0), vec2(0.5, 0.5)});
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        for (double lambda : {0.1, 0.5, 0.9}) {
            const pert::PerturbationReport r = pert::prop28_check(f, f, lambda, lambda, 50, seed);
            CHECK(r.max_violation_ratio <= 0.0);
            CHECK(r.hypothesis_holds);
        }
    }
}

TEST_CASE("prop28_check validates its parameters") {
    const FrameSystem f = onb2();
    CHECK_THROWS_AS(pert::prop28_check(f, f, 0.0, 0.5, 10, 0), fc::ParamRangeError);
    CHECK_THROWS_AS(pert::prop28_check(f, f, 0.5, 1.0, 10, 0), fc::ParamRangeError);
    CHECK_THROWS_AS(pert::prop28_check(f, f, 0.5, 0.5, 0, 0), fc::ParamRangeError);
    CHECK_THROWS_AS(pert::prop28_check(f, system_of({basis_vec(2, 0)}), 0.5, 0.5, 10, 0),
                    fc::DimensionError);

    const FrameSystem line = system_of({basis_vec(2, 0), 2.0 * basis_vec(2, 0)});
    CHECK_THROWS_AS(pert::prop28_check(line, line, 0.5, 0.5, 10, 0), fc::NotAFrameError);
}

TEST_CASE("prop28_check is deterministic in the seed") {
    const FrameSystem f = onb2();
    const FrameSystem g = scaled_first(1.05);
    const pert::PerturbationReport a = pert::prop28_check(f, g, 0.3, 0.3, 100, 7);
    const pert::PerturbationReport b = pert::prop28_check(f, g, 0.3, 0.3, 100, 7);
    CHECK(a.max_violation_ratio == b.max_violation_ratio);
    CHECK(a.hypothesis_holds == b.hypothesis_holds);
}
