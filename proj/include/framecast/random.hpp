#pragma once

#include "framecast/types.hpp"

#include <cstdint>
#include <random>

namespace framecast {

/// Mixes a base seed with stream indices so parallel trials stay independent
/// yet reproducible (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream = 0, std::uint64_t step = 0);

/// Seeded generator producing the same byte stream on every platform:
/// raw mt19937_64 output mapped to uniforms, Box-Muller for normals.
/// std::normal_distribution is implementation-defined and is avoided here.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform();                  // [0, 1)
    double normal();                   // standard normal
    Complex complex_normal();          // E|z|^2 = 1
    std::uint64_t integer() { return engine_(); }

    Vec gaussian_vector(Index n);
    Vec unit_vector(Index n);          // complex Gaussian, normalized
    Mat gaussian_matrix(Index rows, Index cols);
    Mat unitary(Index n);              // QR of a Gaussian sample, phase-fixed

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace framecast
