#pragma once

#include <vector>

#include "oam/fft.hpp"
#include "oam/field.hpp"

namespace oam {

/// SLM phase mask; values wrap modulo 2 pi.
class PhaseMask {
public:
    PhaseMask() = default;
    explicit PhaseMask(const Grid& grid, double fill = 0.0)
        : grid_(grid), phase_(grid.size(), fill)
    {
    }
    PhaseMask(const Grid& grid, std::vector<double> phase);

    const Grid& grid() const { return grid_; }
    std::span<const double> phase() const { return phase_; }
    std::span<double> phase() { return phase_; }
    double at(int ix, int iy) const { return phase_[grid_.index(ix, iy)]; }
    double& at(int ix, int iy) { return phase_[grid_.index(ix, iy)]; }

private:
    Grid grid_;
    std::vector<double> phase_;
};

/// Forked diffraction grating: phase = mod(ell*phi + 2 pi x / period, 2 pi).
/// The grating period must be resolvable (period >= 4 dx).
PhaseMask fork_hologram(const Grid& grid, int ell, double grating_period);

/// Vortex-only phase mask exp(i ell phi) (period-free special case).
PhaseMask spiral_mask(const Grid& grid, int ell);

/// Pointwise E * exp(i phase); magnitudes and power are preserved.
ComplexField apply_mask(const ComplexField& field, const PhaseMask& mask);

/// Carve out the first diffraction order of a fork hologram's far field:
/// window of radius half the grating frequency around (2 pi / period, 0),
/// recentered to the axis.
ComplexField extract_first_order(const ComplexField& far, double grating_period);

/// Phase-flattening projection: multiply by exp(-i ell phi), transform to
/// the far field and couple against a Gaussian single-mode-fiber mode of
/// angular waist smf_waist (rad/um). Returns the coupled power fraction.
double phase_flatten_project(const ComplexField& field, int ell, double smf_waist);

/// SMF angular waist maximizing the ell-matched projection of a flattened
/// LG_{0,1} of the given beam waist: sqrt(2)/waist.
double matched_smf_waist(double waist);

/// Unwrapped phase accumulated along a circle of given radius (radians).
double phase_winding(const ComplexField& field, double radius, int n_samples = 720);

} // namespace oam
