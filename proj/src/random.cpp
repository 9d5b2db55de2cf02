#include "framecast/random.hpp"

#include <Eigen/QR>

#include <cmath>

namespace framecast {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t step) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1) + 0xbf58476d1ce4e5b9ULL * step;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
}

Complex Rng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return Complex(re * M_SQRT1_2, im * M_SQRT1_2);
}

Vec Rng::gaussian_vector(Index n) {
    Vec v(n);
    for (Index i = 0; i < n; ++i) v(i) = complex_normal();
    return v;
}

Vec Rng::unit_vector(Index n) {
    Vec v = gaussian_vector(n);
    double norm = v.norm();
    while (norm < 1e-12) {
        v = gaussian_vector(n);
        norm = v.norm();
    }
    return v / norm;
}

Mat Rng::gaussian_matrix(Index rows, Index cols) {
    Mat m(rows, cols);
    for (Index c = 0; c < cols; ++c)
        for (Index r = 0; r < rows; ++r) m(r, c) = complex_normal();
    return m;
}

Mat Rng::unitary(Index n) {
    Eigen::HouseholderQR<Mat> qr(gaussian_matrix(n, n));
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phase ambiguity of QR so the sample is a deterministic function
    // of the Gaussian draw.
    for (Index i = 0; i < n; ++i) {
        const Complex d = r(i, i);
        const double a = std::abs(d);
        if (a > 0.0) q.col(i) *= d / a;
    }
    return q;
}

}  // namespace framecast
