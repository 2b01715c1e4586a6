#include "veritas/generators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <thread>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "veritas/display.hpp"
#include "veritas/error.hpp"
#include "veritas/rng.hpp"

namespace veritas {

void GaussianPair::validate() const {
    if (!std::isfinite(mu1) || !std::isfinite(mu2) || !std::isfinite(sigma1) || !std::isfinite(sigma2)) {
        throw DomainError("generator parameters must be finite");
    }
    if (!(sigma1 > 0.0) || !(sigma2 > 0.0)) throw DomainError("generator standard deviations must be positive");
}

const char* to_string(Generator g) noexcept { return g == Generator::H1 ? "H1" : "H2"; }

Generator generator_from_string(const std::string& text) {
    if (text == "H1" || text == "h1" || text == "1") return Generator::H1;
    if (text == "H2" || text == "h2" || text == "2") return Generator::H2;
    throw DomainError("generator must be H1 or H2, got '" + text + "'");
}

double gaussian_density(double x, double mu, double sigma) {
    const double z = (x - mu) / sigma;
    return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

double gaussian_delta_jl(double x, const GaussianPair& g) {
    const double z1 = (x - g.mu1) / g.sigma1;
    const double z2 = (x - g.mu2) / g.sigma2;
    const double ln_ratio = -0.5 * z1 * z1 + 0.5 * z2 * z2 + std::log(g.sigma2 / g.sigma1);
    return ln_ratio / std::numbers::ln10;
}

namespace {

// delta_jl * ln10 = a x^2 + b x + c
struct Quadratic {
    double a, b, c;
};

Quadratic coefficients(const GaussianPair& g) {
    const double v1 = g.sigma1 * g.sigma1;
    const double v2 = g.sigma2 * g.sigma2;
    return {-0.5 / v1 + 0.5 / v2, g.mu1 / v1 - g.mu2 / v2,
            -0.5 * g.mu1 * g.mu1 / v1 + 0.5 * g.mu2 * g.mu2 / v2 + std::log(g.sigma2 / g.sigma1)};
}

}  // namespace

std::vector<double> crossing_points(const GaussianPair& g) {
    g.validate();
    const auto [a, b, c] = coefficients(g);
    if (a == 0.0) {
        if (b == 0.0) return {};
        return {-c / b};
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return {};
    // Numerically stable roots.
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    std::vector<double> roots;
    if (q != 0.0) roots = {q / a, c / q};
    else roots = {0.0, 0.0};
    std::sort(roots.begin(), roots.end());
    if (disc == 0.0) roots.pop_back();
    return roots;
}

std::optional<Extremum> delta_jl_extremum(const GaussianPair& g) {
    g.validate();
    const auto [a, b, c] = coefficients(g);
    if (a == 0.0) return std::nullopt;
    const double x = -b / (2.0 * a);
    return Extremum{x, gaussian_delta_jl(x, g)};
}

std::vector<EvidenceRow> integer_evidence_table(const GaussianPair& g, int lo, int hi) {
    g.validate();
    std::vector<EvidenceRow> rows;
    for (int x = lo; x <= hi; ++x) {
        const double djl = gaussian_delta_jl(x, g);
        const double bf = std::pow(10.0, djl);
        rows.push_back({x, bf, djl, bf < 0.1 ? format_scientific(bf, 2) : format_significant(bf, 2),
                        format_fixed(djl, 1)});
    }
    return rows;
}

double DrawMoments::relative_uncertainty() const { return sd / std::fabs(mean); }

DrawMoments DrawMoments::scaled(std::size_t n) const {
    const double dn = static_cast<double>(n);
    return {dn * mean, std::sqrt(dn) * sd};
}

DrawMoments draw_moments(const GaussianPair& g, Generator truth) {
    g.validate();
    const double mu = truth == Generator::H1 ? g.mu1 : g.mu2;
    const double sigma = truth == Generator::H1 ? g.sigma1 : g.sigma2;
    const double lo = mu - 12.0 * sigma;
    const double hi = mu + 12.0 * sigma;
    using Quad = boost::math::quadrature::gauss_kronrod<double, 15>;
    constexpr double kAbsTolerance = 1e-6;

    auto integrate = [&](auto&& f) {
        double error = 0.0;
        const double value = Quad::integrate(f, lo, hi, 20, 1e-12, &error);
        if (!std::isfinite(value) || error > kAbsTolerance) {
            throw NumericError("quadrature of the weight-of-evidence moments did not converge");
        }
        return value;
    };
    const double mean = integrate([&](double x) { return gaussian_delta_jl(x, g) * gaussian_density(x, mu, sigma); });
    const double variance = integrate([&](double x) {
        const double d = gaussian_delta_jl(x, g) - mean;
        return d * d * gaussian_density(x, mu, sigma);
    });
    return {mean, std::sqrt(variance)};
}

WalkResult simulate_walks(const GaussianPair& g, Generator truth, std::size_t n_draws, std::size_t n_traj,
                          std::uint64_t seed, unsigned threads) {
    g.validate();
    WalkResult result{g, truth, seed, n_draws, std::vector<std::vector<double>>(n_traj)};
    const double mu = truth == Generator::H1 ? g.mu1 : g.mu2;
    const double sigma = truth == Generator::H1 ? g.sigma1 : g.sigma2;

    auto run = [&](std::size_t k) {
        StreamRng rng(seed, k);
        auto& traj = result.trajectories[k];
        traj.resize(n_draws + 1);
        traj[0] = 0.0;
        for (std::size_t i = 1; i <= n_draws; ++i) {
            traj[i] = traj[i - 1] + gaussian_delta_jl(mu + sigma * rng.normal(), g);
        }
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n_traj, 1)));
    if (threads <= 1) {
        for (std::size_t k = 0; k < n_traj; ++k) run(k);
        return result;
    }
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t k = t; k < n_traj; k += threads) run(k);
        });
    }
    pool.clear();
    return result;
}

std::vector<BandPoint> walk_bands(const WalkResult& walks) {
    std::vector<BandPoint> out;
    const std::size_t n = walks.trajectories.size();
    if (n == 0) return out;
    for (std::size_t step = 0; step <= walks.n_draws; ++step) {
        double sum = 0.0;
        for (const auto& t : walks.trajectories) sum += t[step];
        const double mean = sum / static_cast<double>(n);
        double ss = 0.0;
        for (const auto& t : walks.trajectories) ss += (t[step] - mean) * (t[step] - mean);
        out.push_back({step, mean, n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0});
    }
    return out;
}

void write_trajectories_csv(const WalkResult& walks, std::ostream& out) {
    out << "traj_id,step,jl\n";
    char buf[64];
    for (std::size_t k = 0; k < walks.trajectories.size(); ++k) {
        const auto& t = walks.trajectories[k];
        for (std::size_t s = 0; s < t.size(); ++s) {
            std::snprintf(buf, sizeof buf, "%.17g", t[s]);
            out << k << ',' << s << ',' << buf << '\n';
        }
    }
}

}  // namespace veritas
