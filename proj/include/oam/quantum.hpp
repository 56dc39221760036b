#pragma once

#include <cstdint>
#include <vector>

#include "oam/field.hpp"

namespace oam {

/// Two-mode squeezed (SPDC) source with nonlinear coefficient lambda.
struct SpdcSource {
    double lambda_nl = 0.1;

    void validate() const;
};

/// Probability mass over photon number 0..n_max, renormalized after
/// truncation; the truncation tail is below 1e-10 by construction.
struct PhotonDistribution {
    std::vector<double> p;

    int n_max() const { return static_cast<int>(p.size()) - 1; }
    double mean() const;
    double variance() const;
    /// <n(n-1)> / <n>^2
    double g2() const;
};

/// Truncation rule keeping the neglected geometric tail below 1e-10.
int default_n_max(double lambda_nl);

/// Unheralded (traced) arm distribution: the normalized geometric law
/// p(n) = (1 - lambda^2) lambda^(2n).
PhotonDistribution unheralded_distribution(const SpdcSource& source, int n_max = -1);

/// Arm-A distribution conditioned on a click of a non-number-resolving
/// detector of efficiency eta on arm B.
PhotonDistribution heralded_distribution(const SpdcSource& source, double eta = 1.0,
                                         int n_max = -1);

enum class LightKind { thermal, coherent, heralded };

/// Second-order correlation at zero delay. Thermal and heralded values are
/// computed from their photon-number distributions; coherent is exactly 1.
double g2_zero(LightKind kind, const SpdcSource& source);

/// Photon-count image with exposure metadata.
struct CountImage {
    Grid grid;
    std::vector<std::uint32_t> counts;
    std::uint64_t n_photons = 0;
    double dark_rate = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t dark_total = 0;

    std::uint64_t total() const;
};

/// Monte-Carlo ICCD exposure: n_photons signal draws from |E|^2 / power,
/// plus Poisson(dark_rate * pixels) uniform dark counts. Deterministic per
/// seed (std::mt19937_64 with fixed 53-bit uniform doubles).
CountImage iccd_image(const ComplexField& field, std::uint64_t n_photons, double dark_rate,
                      std::uint64_t seed);

} // namespace oam
