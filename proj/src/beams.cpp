#include "oam/beams.hpp"

#include <cmath>
#include <stdexcept>

namespace oam {

void BeamSpec::validate() const
{
    if (waist <= 0.0)
        throw std::invalid_argument("BeamSpec: waist must be positive");
    if (p < 0)
        throw std::invalid_argument("BeamSpec: radial index p must be >= 0");
    if (kind == Kind::gauss && (ell != 0 || p != 0))
        throw std::invalid_argument("BeamSpec: gauss kind requires ell = p = 0");
}

void ObjectiveSpec::validate() const
{
    if (focal_length_mm <= 0.0)
        throw std::invalid_argument("ObjectiveSpec: focal length must be positive");
    if (numerical_aperture <= 0.0 || numerical_aperture >= 1.0)
        throw std::invalid_argument("ObjectiveSpec: numerical aperture must be in (0, 1)");
}

namespace {

// Generalized Laguerre polynomial L_p^a by the stable three-term recurrence.
double assoc_laguerre(int p, int a, double x)
{
    if (p == 0)
        return 1.0;
    double lm1 = 1.0;
    double l = 1.0 + a - x;
    for (int k = 2; k <= p; ++k) {
        const double next = ((2.0 * k - 1.0 + a - x) * l - (k - 1.0 + a) * lm1) / k;
        lm1 = l;
        l = next;
    }
    return l;
}

} // namespace

ComplexField lg_mode(const Grid& grid, const BeamSpec& spec)
{
    spec.validate();
    if (grid.window() < 6.0 * spec.waist)
        throw std::invalid_argument("lg_mode: grid window smaller than 6x waist");

    const int ell = spec.kind == BeamSpec::Kind::gauss ? 0 : spec.ell;
    const int p = spec.kind == BeamSpec::Kind::gauss ? 0 : spec.p;
    const int la = std::abs(ell);
    const double w = spec.waist;

    ComplexField out(grid);
    for (int j = 0; j < grid.ny; ++j) {
        const double y = grid.y(j) - spec.center_y;
        for (int i = 0; i < grid.nx; ++i) {
            const double x = grid.x(i) - spec.center_x;
            const double r2 = x * x + y * y;
            const double rho = 2.0 * r2 / (w * w);
            double amp = std::exp(-r2 / (w * w)) * assoc_laguerre(p, la, rho);
            if (la > 0)
                amp *= std::pow(std::sqrt(rho), la);
            const double phase = ell == 0 ? 0.0 : ell * std::atan2(y, x);
            out.at(i, j) = std::polar(amp, phase);
        }
    }
    out = normalized(out);
    if (spec.weight != cdouble{1.0, 0.0})
        out = scaled(out, spec.weight);
    out.check_finite("lg_mode");
    return out;
}

ComplexField gaussian(const Grid& grid, double waist, double center_x, double center_y)
{
    BeamSpec spec;
    spec.kind = BeamSpec::Kind::gauss;
    spec.waist = waist;
    spec.center_x = center_x;
    spec.center_y = center_y;
    return lg_mode(grid, spec);
}

ComplexField superpose(const std::vector<std::pair<cdouble, ComplexField>>& terms, bool normalize)
{
    if (terms.empty())
        throw std::invalid_argument("superpose: empty term list");
    const Grid& g = terms.front().second.grid();
    ComplexField out(g);
    for (const auto& [coeff, field] : terms) {
        require_same_grid(g, field.grid(), "superpose");
        const auto s = field.samples();
        auto o = out.samples();
        for (std::size_t k = 0; k < s.size(); ++k)
            o[k] += coeff * s[k];
    }
    return normalize ? normalized(out) : out;
}

ComplexField bloch_state(double theta, double phi, int ell, const Grid& grid, double waist)
{
    if (ell <= 0)
        throw std::invalid_argument("bloch_state: ell must be positive");
    if (theta < 0.0 || theta > std::numbers::pi)
        throw std::invalid_argument("bloch_state: theta must lie in [0, pi]");
    BeamSpec plus;
    plus.ell = ell;
    plus.waist = waist;
    BeamSpec minus = plus;
    minus.ell = -ell;
    const cdouble a{std::cos(theta / 2.0), 0.0};
    const cdouble b = std::polar(std::sin(theta / 2.0), phi);
    return superpose({{a, lg_mode(grid, plus)}, {b, lg_mode(grid, minus)}}, true);
}

double focused_waist(const ObjectiveSpec& objective, double input_waist_mm, double wavelength_um)
{
    objective.validate();
    if (input_waist_mm <= 0.0 || wavelength_um <= 0.0)
        throw std::invalid_argument("focused_waist: inputs must be positive");
    return wavelength_um * objective.focal_length_mm / (std::numbers::pi * input_waist_mm);
}

double ring_radius(int ell, double waist)
{
    return waist * std::sqrt(std::abs(ell) / 2.0);
}

} // namespace oam
