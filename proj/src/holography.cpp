#include "oam/holography.hpp"

#include <cmath>
#include <stdexcept>

namespace oam {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_two_pi(double phase)
{
    double v = std::fmod(phase, kTwoPi);
    if (v < 0.0)
        v += kTwoPi;
    return v;
}
} // namespace

PhaseMask::PhaseMask(const Grid& grid, std::vector<double> phase)
    : grid_(grid), phase_(std::move(phase))
{
    if (phase_.size() != grid_.size())
        throw std::invalid_argument("PhaseMask: sample count does not match grid");
}

PhaseMask fork_hologram(const Grid& grid, int ell, double grating_period)
{
    if (grating_period < 4.0 * grid.dx)
        throw std::invalid_argument("fork_hologram: grating period below 4 dx is unresolvable");
    PhaseMask mask(grid);
    for (int j = 0; j < grid.ny; ++j) {
        const double y = grid.y(j);
        for (int i = 0; i < grid.nx; ++i) {
            const double x = grid.x(i);
            mask.at(i, j) = wrap_two_pi(ell * std::atan2(y, x) + kTwoPi * x / grating_period);
        }
    }
    return mask;
}

PhaseMask spiral_mask(const Grid& grid, int ell)
{
    PhaseMask mask(grid);
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i)
            mask.at(i, j) = wrap_two_pi(ell * std::atan2(grid.y(j), grid.x(i)));
    return mask;
}

ComplexField apply_mask(const ComplexField& field, const PhaseMask& mask)
{
    require_same_grid(field.grid(), mask.grid(), "apply_mask");
    ComplexField out = field;
    auto s = out.samples();
    const auto ph = mask.phase();
    for (std::size_t k = 0; k < s.size(); ++k)
        s[k] *= std::polar(1.0, ph[k]);
    return out;
}

ComplexField extract_first_order(const ComplexField& far, double grating_period)
{
    const Grid& g = far.grid();
    const double k_grating = kTwoPi / grating_period;
    const int shift = static_cast<int>(std::lround(k_grating / g.dx));
    const double window_radius = k_grating / 2.0;
    ComplexField out(g);
    for (int j = 0; j < g.ny; ++j) {
        const double ky = g.y(j);
        for (int i = 0; i < g.nx; ++i) {
            const int si = i + shift;
            if (si >= g.nx)
                continue;
            const double kx = g.x(si) - k_grating;
            if (kx * kx + ky * ky <= window_radius * window_radius)
                out.at(i, j) = far.at(si, j);
        }
    }
    return out;
}

double matched_smf_waist(double waist)
{
    if (waist <= 0.0)
        throw std::invalid_argument("matched_smf_waist: waist must be positive");
    return std::sqrt(2.0) / waist;
}

double phase_flatten_project(const ComplexField& field, int ell, double smf_waist)
{
    if (smf_waist <= 0.0)
        throw std::invalid_argument("phase_flatten_project: smf waist must be positive");
    const double total = power(field);
    if (total <= 0.0)
        return 0.0;
    ComplexField flattened = apply_mask(field, spiral_mask(field.grid(), -ell));
    ComplexField far = far_field(flattened);
    const Grid& fg = far.grid();
    // Unit-power SMF mode in the far-field plane.
    ComplexField smf(fg);
    for (int j = 0; j < fg.ny; ++j) {
        const double ky = fg.y(j);
        for (int i = 0; i < fg.nx; ++i) {
            const double kx = fg.x(i);
            smf.at(i, j) = std::exp(-(kx * kx + ky * ky) / (smf_waist * smf_waist));
        }
    }
    smf = normalized(smf);
    return std::norm(overlap(smf, far)) / total;
}

double phase_winding(const ComplexField& field, double radius, int n_samples)
{
    if (n_samples < 8)
        throw std::invalid_argument("phase_winding: too few samples");
    const Grid& g = field.grid();
    if (radius <= 0.0 || 2.0 * radius >= g.window() - 2.0 * std::max(g.dx, g.dy))
        throw std::invalid_argument("phase_winding: circle not inside grid");
    double acc = 0.0;
    cdouble prev = field.sample_bilinear(radius, 0.0);
    for (int m = 1; m <= n_samples; ++m) {
        const double phi = kTwoPi * m / n_samples;
        const cdouble cur = field.sample_bilinear(radius * std::cos(phi), radius * std::sin(phi));
        acc += std::arg(cur * std::conj(prev));
        prev = cur;
    }
    return acc;
}

} // namespace oam
