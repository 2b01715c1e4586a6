#pragma once
// Monte Carlo propagation of uncertain inputs through
//   z = y sin(pi^4 + x^2) / sqrt(x^3 + y^2)
// with x ~ Uniform(9, 11) and y ~ Triangular(15, mode 20, 30).

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace veritas {

double propagation_z(double x, double y);

/// Inverse CDF of the triangular distribution on [lo, hi] with the given mode; u in [0,1].
double triangular_quantile(double u, double lo, double mode, double hi);

struct Histogram {
    std::vector<double> edges;   // bins + 1 edges
    std::vector<double> masses;  // fraction of samples per bin, summing to 1
};

struct ModalInterval {
    double center;
    double width;
    double mass;
};

struct PropagationStats {
    std::size_t n_samples;
    double mean;
    double sd;
    double median;
    ModalInterval modal_interval;
    Histogram histogram;
};

inline constexpr std::size_t kPropagationBins = 10000;
inline constexpr std::size_t kPropagationBlock = 1u << 16;

/// Samples are drawn in blocks of kPropagationBlock, block b from StreamRng(seed, b), so
/// the result does not depend on the thread count. The modal interval is the window of
/// round(width / bin width) consecutive bins holding the largest mass, on a histogram of
/// `bins` bins spanning the sample range. Throws DomainError for n_samples < 10^4.
PropagationStats propagate_z(std::size_t n_samples, std::uint64_t seed, double interval_width = 0.02,
                             std::size_t bins = kPropagationBins, unsigned threads = 0);

/// Raw samples (for tests and export).
std::vector<double> sample_z(std::size_t n_samples, std::uint64_t seed, unsigned threads = 0);

/// CSV with header bin_lo,bin_hi,mass.
void write_histogram_csv(const Histogram& histogram, std::ostream& out);

}  // namespace veritas
