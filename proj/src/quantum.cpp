#include "oam/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace oam {

void SpdcSource::validate() const
{
    if (lambda_nl < 0.0 || lambda_nl >= 1.0)
        throw std::invalid_argument("SpdcSource: lambda must lie in [0, 1)");
}

double PhotonDistribution::mean() const
{
    double acc = 0.0;
    for (std::size_t n = 1; n < p.size(); ++n)
        acc += static_cast<double>(n) * p[n];
    return acc;
}

double PhotonDistribution::variance() const
{
    const double m = mean();
    double acc = 0.0;
    for (std::size_t n = 0; n < p.size(); ++n) {
        const double d = static_cast<double>(n) - m;
        acc += d * d * p[n];
    }
    return acc;
}

double PhotonDistribution::g2() const
{
    const double m = mean();
    if (m <= 0.0)
        return 0.0;
    double fact = 0.0;
    for (std::size_t n = 2; n < p.size(); ++n)
        fact += static_cast<double>(n) * (static_cast<double>(n) - 1.0) * p[n];
    return fact / (m * m);
}

int default_n_max(double lambda_nl)
{
    if (lambda_nl <= 0.0)
        return 1;
    // tail sum_{n > n_max} (1-q) q^n = q^{n_max+1}, q = lambda^2
    const double q = lambda_nl * lambda_nl;
    const int n = static_cast<int>(std::ceil(std::log(1e-10) / std::log(q)));
    return std::max(n, 8);
}

PhotonDistribution unheralded_distribution(const SpdcSource& source, int n_max)
{
    source.validate();
    const double q = source.lambda_nl * source.lambda_nl;
    if (n_max < 0)
        n_max = default_n_max(source.lambda_nl);
    PhotonDistribution dist;
    dist.p.resize(static_cast<std::size_t>(n_max) + 1);
    double total = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        dist.p[n] = (1.0 - q) * std::pow(q, n);
        total += dist.p[n];
    }
    for (double& v : dist.p)
        v /= total;
    return dist;
}

PhotonDistribution heralded_distribution(const SpdcSource& source, double eta, int n_max)
{
    source.validate();
    if (eta <= 0.0 || eta > 1.0)
        throw std::invalid_argument("heralded_distribution: eta must lie in (0, 1]");
    const double q = source.lambda_nl * source.lambda_nl;
    if (n_max < 0)
        n_max = default_n_max(source.lambda_nl);
    PhotonDistribution dist;
    dist.p.resize(static_cast<std::size_t>(n_max) + 1);
    double total = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        // joint photon-number weight times the click probability of a
        // non-number-resolving detector on arm B
        const double joint = (1.0 - q) * std::pow(q, n);
        const double click = 1.0 - std::pow(1.0 - eta, n);
        dist.p[n] = joint * click;
        total += dist.p[n];
    }
    if (total <= 0.0) {
        dist.p.assign(dist.p.size(), 0.0);
        dist.p[0] = 1.0; // lambda = 0: no herald ever fires
        return dist;
    }
    for (double& v : dist.p)
        v /= total;
    return dist;
}

double g2_zero(LightKind kind, const SpdcSource& source)
{
    switch (kind) {
    case LightKind::coherent:
        return 1.0; // Poissonian
    case LightKind::thermal:
        return unheralded_distribution(source).g2();
    case LightKind::heralded:
        return heralded_distribution(source).g2();
    }
    throw std::invalid_argument("g2_zero: unknown kind");
}

namespace {

/// 53-bit uniform double in [0, 1); keeps image generation reproducible
/// across platforms (mt19937_64's sequence is fixed by the standard).
double next_uniform(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t poisson_draw(std::mt19937_64& rng, double mean)
{
    std::uint64_t total = 0;
    // chunk large means so the product-of-uniforms method never underflows
    while (mean > 500.0) {
        double chunk = 500.0;
        const double limit = std::exp(-chunk);
        std::uint64_t k = 0;
        double prod = next_uniform(rng);
        while (prod > limit) {
            ++k;
            prod *= next_uniform(rng);
        }
        total += k;
        mean -= chunk;
    }
    const double limit = std::exp(-mean);
    std::uint64_t k = 0;
    double prod = next_uniform(rng);
    while (prod > limit) {
        ++k;
        prod *= next_uniform(rng);
    }
    return total + k;
}

} // namespace

std::uint64_t CountImage::total() const
{
    std::uint64_t acc = 0;
    for (std::uint32_t c : counts)
        acc += c;
    return acc;
}

CountImage iccd_image(const ComplexField& field, std::uint64_t n_photons, double dark_rate,
                      std::uint64_t seed)
{
    if (dark_rate < 0.0)
        throw std::invalid_argument("iccd_image: dark rate must be >= 0");
    const Grid& g = field.grid();
    const std::size_t n = g.size();

    // cumulative intensity for inverse-CDF sampling
    std::vector<double> cdf(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += std::norm(field.samples()[i]);
        cdf[i] = acc;
    }
    if (acc <= 0.0 && n_photons > 0)
        throw std::invalid_argument("iccd_image: zero-power field with photons requested");

    CountImage image;
    image.grid = g;
    image.counts.assign(n, 0);
    image.n_photons = n_photons;
    image.dark_rate = dark_rate;
    image.seed = seed;

    std::mt19937_64 rng(seed);
    for (std::uint64_t k = 0; k < n_photons; ++k) {
        const double u = next_uniform(rng) * acc;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const std::size_t idx = std::min<std::size_t>(it - cdf.begin(), n - 1);
        ++image.counts[idx];
    }
    if (dark_rate > 0.0) {
        const std::uint64_t dark = poisson_draw(rng, dark_rate * static_cast<double>(n));
        for (std::uint64_t k = 0; k < dark; ++k) {
            const std::size_t idx =
                std::min<std::size_t>(static_cast<std::size_t>(next_uniform(rng) * n), n - 1);
            ++image.counts[idx];
        }
        image.dark_total = dark;
    }
    return image;
}

} // namespace oam
