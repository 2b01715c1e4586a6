#include "veritas/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <ostream>
#include <thread>

#include "veritas/error.hpp"
#include "veritas/rng.hpp"

namespace veritas {

double propagation_z(double x, double y) {
    static const double pi4 = std::pow(std::numbers::pi, 4);
    return y * std::sin(pi4 + x * x) / std::sqrt(x * x * x + y * y);
}

double triangular_quantile(double u, double lo, double mode, double hi) {
    if (!(lo <= mode && mode <= hi && lo < hi)) throw DomainError("triangular needs lo <= mode <= hi, lo < hi");
    const double split = (mode - lo) / (hi - lo);
    if (u < split) return lo + std::sqrt(u * (hi - lo) * (mode - lo));
    return hi - std::sqrt((1.0 - u) * (hi - lo) * (hi - mode));
}

std::vector<double> sample_z(std::size_t n_samples, std::uint64_t seed, unsigned threads) {
    std::vector<double> z(n_samples);
    const std::size_t blocks = (n_samples + kPropagationBlock - 1) / kPropagationBlock;
    auto run_block = [&](std::size_t b) {
        StreamRng rng(seed, b);
        const std::size_t end = std::min(n_samples, (b + 1) * kPropagationBlock);
        for (std::size_t i = b * kPropagationBlock; i < end; ++i) {
            const double x = 9.0 + 2.0 * rng.uniform();
            const double y = triangular_quantile(rng.uniform(), 15.0, 20.0, 30.0);
            z[i] = propagation_z(x, y);
        }
    };
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(blocks, 1)));
    if (threads <= 1) {
        for (std::size_t b = 0; b < blocks; ++b) run_block(b);
        return z;
    }
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t b = t; b < blocks; b += threads) run_block(b);
        });
    }
    pool.clear();
    return z;
}

PropagationStats propagate_z(std::size_t n_samples, std::uint64_t seed, double interval_width, std::size_t bins,
                             unsigned threads) {
    if (n_samples < 10000) throw DomainError("propagation needs at least 10^4 samples");
    if (!(interval_width > 0.0)) throw DomainError("interval width must be positive");
    if (bins < 1) throw DomainError("need at least one histogram bin");

    std::vector<double> z = sample_z(n_samples, seed, threads);
    PropagationStats stats{};
    stats.n_samples = n_samples;

    // Summation in sample order keeps the result independent of the thread count.
    const double n = static_cast<double>(n_samples);
    stats.mean = std::accumulate(z.begin(), z.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : z) ss += (v - stats.mean) * (v - stats.mean);
    stats.sd = std::sqrt(ss / (n - 1.0));

    const auto [min_it, max_it] = std::minmax_element(z.begin(), z.end());
    const double lo = *min_it;
    const double hi = *max_it;
    const double bin_width = (hi - lo) / static_cast<double>(bins);
    stats.histogram.edges.resize(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i) stats.histogram.edges[i] = lo + bin_width * static_cast<double>(i);
    stats.histogram.edges[bins] = hi;
    std::vector<std::size_t> counts(bins, 0);
    for (double v : z) {
        auto k = static_cast<std::size_t>((v - lo) / bin_width);
        if (k >= bins) k = bins - 1;
        ++counts[k];
    }
    stats.histogram.masses.resize(bins);
    for (std::size_t i = 0; i < bins; ++i) stats.histogram.masses[i] = static_cast<double>(counts[i]) / n;

    const std::size_t window =
        std::clamp<std::size_t>(static_cast<std::size_t>(std::llround(interval_width / bin_width)), 1, bins);
    std::size_t running = std::accumulate(counts.begin(), counts.begin() + static_cast<std::ptrdiff_t>(window),
                                          std::size_t{0});
    std::size_t best = running;
    std::size_t best_start = 0;
    for (std::size_t start = 1; start + window <= bins; ++start) {
        running += counts[start + window - 1];
        running -= counts[start - 1];
        if (running > best) {
            best = running;
            best_start = start;
        }
    }
    stats.modal_interval = {lo + bin_width * (static_cast<double>(best_start) + 0.5 * static_cast<double>(window)),
                            interval_width, static_cast<double>(best) / n};

    const std::size_t mid = z.size() / 2;
    std::nth_element(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(mid), z.end());
    if (z.size() % 2 == 1) {
        stats.median = z[mid];
    } else {
        const double upper = z[mid];
        const double lower = *std::max_element(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(mid));
        stats.median = 0.5 * (lower + upper);
    }
    return stats;
}

void write_histogram_csv(const Histogram& histogram, std::ostream& out) {
    out << "bin_lo,bin_hi,mass\n";
    char buf[128];
    for (std::size_t i = 0; i < histogram.masses.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", histogram.edges[i], histogram.edges[i + 1],
                      histogram.masses[i]);
        out << buf;
    }
}

}  // namespace veritas
