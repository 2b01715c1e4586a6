#pragma once

#include <cstdint>
#include <random>

namespace veritas {

/// Reproducible random stream identified by (seed, stream index).
///
/// The engine is std::mt19937_64 seeded through std::seed_seq with the words
/// {seed low 32, seed high 32, stream low 32, stream high 32}; both are fully specified
/// by the C++ standard. Uniforms take the top 53 bits of one engine output, normals
/// use the Marsaglia polar method. Nothing depends on the standard library's
/// distribution classes, whose output is implementation-defined.
class StreamRng {
public:
    StreamRng(std::uint64_t seed, std::uint64_t stream);

    /// Uniform on [0, 1).
    double uniform();
    /// Standard normal deviate.
    double normal();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace veritas
