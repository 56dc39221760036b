#pragma once

#include <cstdint>
#include <vector>

#include "oam/field.hpp"

namespace oam {

/// z-invariant transverse refractive-index map.
class IndexProfile {
public:
    IndexProfile() = default;
    IndexProfile(const Grid& grid, std::vector<double> n, double n0, double delta_n);

    const Grid& grid() const { return grid_; }
    std::span<const double> n() const { return n_; }
    double at(int ix, int iy) const { return n_[grid_.index(ix, iy)]; }
    double n0() const { return n0_; }
    double delta_n() const { return delta_n_; }

    static IndexProfile uniform(const Grid& grid, double n0);

private:
    Grid grid_;
    std::vector<double> n_;
    double n0_ = 1.0;
    double delta_n_ = 0.0;
};

/// Annular arrangement of overlapped laser-written cores.
struct DoughnutGeometry {
    double ring_diameter = 8.0; // um, circle through core centers
    int n_cores = 12;
    double core_diameter = 2.5; // um, FWHM of a single track
    bool include_center = false;
    double delta_n = 2.0e-3;
    enum class CoreShape { gaussian, supergaussian };
    CoreShape core_shape = CoreShape::gaussian;
    /// Vertical/horizontal elongation of each written track (FWHM_y/FWHM_x,
    /// shared lab orientation). 1.0 = circular cores.
    double core_aspect = 1.0;
    double n0 = 1.5100;

    void validate() const;
    std::vector<std::pair<double, double>> core_centers() const;
};

IndexProfile doughnut_profile(const Grid& grid, const DoughnutGeometry& geom);

/// Circular step-index oracle profile; boundary cells are area-averaged.
IndexProfile step_fiber_profile(const Grid& grid, double core_radius, double delta_n,
                                double n0 = 1.5100);

/// Normalized frequency V = k0 a sqrt(n_core^2 - n0^2) of a step profile.
double step_fiber_v_number(double core_radius, double delta_n, double wavelength,
                           double n0 = 1.5100);

struct GuidedMode {
    ComplexField field; // unit power
    double n_eff = 0.0;
};

struct SolveOptions {
    int k_modes = 6;
    std::uint64_t seed = 0x6f616d736f6c7665ull;
    int max_iterations = 60;
    double eigenvalue_tol = 1e-10; // relative
};

/// Guided modes of the scalar eigenproblem (Lap + k0^2 n^2) psi = beta^2 psi
/// on the 5-point stencil with Dirichlet edges, sorted by descending n_eff.
/// Only modes with n_eff > n0 are returned; the list is empty when the
/// profile guides nothing. Throws on non-convergence.
std::vector<GuidedMode> solve_modes(const IndexProfile& profile, int k_modes);
std::vector<GuidedMode> solve_modes(const IndexProfile& profile, const SolveOptions& options);

/// Relative residual ||A psi - beta^2 psi|| / ||beta^2 psi|| of a mode.
double mode_residual(const IndexProfile& profile, const GuidedMode& mode);

/// Circular recombination (m1 +/- i m2)/sqrt(2) of a degenerate real pair.
ComplexField circular_recombination(const GuidedMode& m1, const GuidedMode& m2, int sign);

} // namespace oam
