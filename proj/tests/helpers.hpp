#pragma once

#include "framecast/frames.hpp"
#include "framecast/types.hpp"

namespace fc = framecast;

inline fc::Vec vec1(fc::Complex a) {
    fc::Vec v(1);
    v << a;
    return v;
}

inline fc::Vec vec2(fc::Complex a, fc::Complex b) {
    fc::Vec v(2);
    v << a, b;
    return v;
}

inline fc::Vec vec3(fc::Complex a, fc::Complex b, fc::Complex c) {
    fc::Vec v(3);
    v << a, b, c;
    return v;
}

inline fc::Mat mat1(fc::Complex a) {
    fc::Mat m(1, 1);
    m << a;
    return m;
}

inline fc::Mat mat2(fc::Complex a, fc::Complex b, fc::Complex c, fc::Complex d) {
    fc::Mat m(2, 2);
    m << a, b, c, d;
    return m;
}

inline fc::Mat diag2(fc::Complex a, fc::Complex b) { return mat2(a, 0.0, 0.0, b); }

inline fc::Vec basis_vec(fc::Index dim, fc::Index i) {
    fc::Vec v = fc::Vec::Zero(dim);
    v(i) = 1.0;
    return v;
}

/// Max elementwise distance; enough for exact-value comparisons in tests.
inline double max_diff(const fc::Mat& a, const fc::Mat& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

inline fc::frames::FrameSystem system_of(const std::vector<fc::Vec>& vs, long origin = 0) {
    return fc::frames::FrameSystem::from_vectors(vs, origin);
}
