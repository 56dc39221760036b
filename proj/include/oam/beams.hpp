#pragma once

#include <string>
#include <vector>

#include "oam/field.hpp"

namespace oam {

/// Description of a synthesized input beam at its waist plane.
struct BeamSpec {
    enum class Kind { lg, gauss };
    Kind kind = Kind::lg;
    int ell = 0;        // topological charge
    int p = 0;          // radial index, >= 0
    double waist = 5.0; // um
    double center_x = 0.0;
    double center_y = 0.0;
    cdouble weight = {1.0, 0.0}; // amplitude & phase

    void validate() const;
};

/// Coupling objective, Table-style focal length (mm) and numerical aperture.
struct ObjectiveSpec {
    std::string label;
    double focal_length_mm = 0.0;
    double numerical_aperture = 0.0;

    void validate() const;
};

/// Laguerre-Gaussian mode LG_{p,ell} at the waist plane, discretely
/// normalized to unit power on the grid. The grid window must span at
/// least 6x the waist.
ComplexField lg_mode(const Grid& grid, const BeamSpec& spec);

/// Convenience: fundamental Gaussian of the given waist.
ComplexField gaussian(const Grid& grid, double waist, double center_x = 0.0, double center_y = 0.0);

/// Pointwise linear combination of fields; optionally renormalized to
/// unit power. All terms must share a grid.
ComplexField superpose(const std::vector<std::pair<cdouble, ComplexField>>& terms, bool normalize);

/// cos(theta/2) LG_{0,+ell} + e^{i phi} sin(theta/2) LG_{0,-ell}, unit power.
ComplexField bloch_state(double theta, double phi, int ell, const Grid& grid, double waist);

/// Gaussian focal waist w = lambda f / (pi w_in); inputs f in mm via the
/// objective, input waist in mm, wavelength in um; result in um.
double focused_waist(const ObjectiveSpec& objective, double input_waist_mm, double wavelength_um);

/// Radius of peak intensity of LG_{0,ell}: w sqrt(|ell|/2).
double ring_radius(int ell, double waist);

} // namespace oam
