#pragma once

#include "oam/field.hpp"

namespace oam {

/// Unnormalized in-place 2-D DFT on the field buffer (FFTW layout,
/// sign -1 forward / +1 inverse). Plan creation is serialized and uses
/// deterministic (estimate-mode) planning so repeated runs are bit-identical.
void dft2_inplace(const Grid& grid, cdouble* data, int sign);

/// Fraunhofer far field: centered unitary transform of the input,
/// F(kx,ky) = dx dy / (2 pi) * sum E exp(-i k.x), sampled on the centered
/// angular-frequency grid with pitch 2 pi / (n d). Power is preserved.
ComplexField far_field(const ComplexField& field);

/// Grid of the far-field plane for a given input grid (pitch in rad/um).
Grid far_field_grid(const Grid& grid);

} // namespace oam
