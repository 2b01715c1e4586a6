#pragma once
// Which of two Gaussian generators produced a sequence of numbers: per-draw weight
// of evidence, its moments, and simulated random walks of the accumulated leaning.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace veritas {

struct GaussianPair {
    double mu1 = 0.0;
    double sigma1 = 1.0;
    double mu2 = 0.4;
    double sigma2 = 2.0;

    /// Throws DomainError unless both sigmas are positive and all values finite.
    void validate() const;
};

enum class Generator { H1, H2 };

const char* to_string(Generator g) noexcept;
/// Accepts "H1"/"h1"/"1" and "H2"/"h2"/"2"; throws DomainError otherwise.
Generator generator_from_string(const std::string& text);

double gaussian_density(double x, double mu, double sigma);

/// log10 f(x|H1)/f(x|H2); the rounding width of x cancels in the ratio.
double gaussian_delta_jl(double x, const GaussianPair& g);

/// Points where the two densities are equal, ascending (zero, one or two of them).
std::vector<double> crossing_points(const GaussianPair& g);

struct Extremum {
    double x;
    double delta_jl;
};

/// Stationary point of the (quadratic) weight of evidence, when it exists.
std::optional<Extremum> delta_jl_extremum(const GaussianPair& g);

struct EvidenceRow {
    int x;
    double bayes_factor;
    double delta_jl;
    std::string bayes_factor_display;
    std::string delta_jl_display;
};

std::vector<EvidenceRow> integer_evidence_table(const GaussianPair& g, int lo = -6, int hi = 6);

struct DrawMoments {
    double mean;
    double sd;

    double relative_uncertainty() const;
    /// Moments of the sum of n independent draws.
    DrawMoments scaled(std::size_t n) const;
};

/// Mean and standard deviation of the per-draw weight of evidence when `truth` generates
/// the data, by adaptive Gauss-Kronrod quadrature over mu +/- 12 sigma. Throws NumericError
/// when the error estimate exceeds 1e-6.
DrawMoments draw_moments(const GaussianPair& g, Generator truth);

struct WalkResult {
    GaussianPair pair;
    Generator truth;
    std::uint64_t seed;
    std::size_t n_draws;
    /// One row per trajectory, n_draws + 1 values starting at 0.
    std::vector<std::vector<double>> trajectories;
};

/// Trajectory k draws from StreamRng(seed, k), so the result is identical for any
/// thread count. threads = 0 picks the hardware concurrency.
WalkResult simulate_walks(const GaussianPair& g, Generator truth, std::size_t n_draws, std::size_t n_traj,
                          std::uint64_t seed, unsigned threads = 0);

struct BandPoint {
    std::size_t step;
    double mean;
    double sd;
};

/// Across-trajectory mean and sd at each step (for 1 and 2 sigma bands).
std::vector<BandPoint> walk_bands(const WalkResult& walks);

/// CSV with header traj_id,step,jl.
void write_trajectories_csv(const WalkResult& walks, std::ostream& out);

}  // namespace veritas
