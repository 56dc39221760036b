#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "oam/field.hpp"

namespace oam {

/// Power fractions per topological charge over l in [l_min, l_max],
/// normalized by the power enclosed in the sampled disc.
struct OamSpectrum {
    int l_min = 0;
    int l_max = 0;
    std::vector<double> p;

    double at(int ell) const
    {
        if (ell < l_min || ell > l_max)
            throw std::out_of_range("OamSpectrum: charge outside range");
        return p[static_cast<std::size_t>(ell - l_min)];
    }
    double sum() const
    {
        double acc = 0.0;
        for (double v : p)
            acc += v;
        return acc;
    }
    int argmax() const
    {
        std::size_t best = 0;
        for (std::size_t i = 1; i < p.size(); ++i)
            if (p[i] > p[best])
                best = i;
        return l_min + static_cast<int>(best);
    }
};

/// Azimuthal Fourier power decomposition: one sampling radius per grid
/// pixel, 720 bilinear samples per circle.
OamSpectrum oam_spectrum(const ComplexField& field, int l_max);

/// Integer phase winding / 2 pi along the circle of the given radius.
/// Throws when the circle carries too little intensity to trust the phase.
int net_topological_charge(const ComplexField& field, double radius);

/// Interference with a Gaussian reference of spherical curvature; the
/// reference peak amplitude is ref_amplitude times the field's peak.
/// A zero curvature means a flat (collimated) reference.
RealField interfere(const ComplexField& field, double ref_waist, double ref_curvature_mm,
                    double ref_phase, double ref_amplitude);

enum class RingMethod { radial_trapezoid, annulus_integral };

struct RingReport {
    double inner_power = 0.0;
    double outer_power = 0.0;
    double ratio = 0.0; // outer / inner
    RingMethod method = RingMethod::annulus_integral;
    std::array<double, 4> radii{};
};

struct RingAnalysis {
    RingReport radial;  // 1-D radial cut scaled by the circumference ratio
    RingReport annulus; // 2-D integral over the annuli
};

/// Inner ring [r1, r2] vs outer ring [r3, r4]; both estimators.
RingAnalysis ring_power_ratio(const ComplexField& field, const std::array<double, 4>& radii);

} // namespace oam
