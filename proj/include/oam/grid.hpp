#pragma once

#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>

namespace oam {

/// Uniform centered sampling grid shared by fields and index profiles.
/// Sample (ix, iy) sits at ((ix - nx/2)*dx, (iy - ny/2)*dy) in micrometers.
struct Grid {
    int nx = 0;
    int ny = 0;
    double dx = 0.0;         // sample pitch, um
    double dy = 0.0;         // sample pitch, um
    double wavelength = 0.0; // vacuum wavelength, um

    static Grid make(int nx, int ny, double dx, double dy, double wavelength)
    {
        if (nx < 16 || ny < 16 || nx % 2 != 0 || ny % 2 != 0)
            throw std::invalid_argument("Grid: nx, ny must be even and >= 16");
        if (dx <= 0.0 || dy <= 0.0)
            throw std::invalid_argument("Grid: dx, dy must be positive");
        if (wavelength <= 0.0)
            throw std::invalid_argument("Grid: wavelength must be positive");
        return Grid{nx, ny, dx, dy, wavelength};
    }

    static Grid square(int n, double pitch, double wavelength)
    {
        return make(n, n, pitch, pitch, wavelength);
    }

    double x(int ix) const { return (ix - nx / 2) * dx; }
    double y(int iy) const { return (iy - ny / 2) * dy; }

    std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
    std::size_t index(int ix, int iy) const { return static_cast<std::size_t>(iy) * nx + ix; }

    double window_x() const { return nx * dx; }
    double window_y() const { return ny * dy; }
    double window() const { return window_x() < window_y() ? window_x() : window_y(); }

    double cell_area() const { return dx * dy; }
    double k0() const { return 2.0 * std::numbers::pi / wavelength; }

    bool operator==(const Grid&) const = default;
};

inline void require_same_grid(const Grid& a, const Grid& b, const std::string& what)
{
    if (!(a == b))
        throw std::invalid_argument(what + ": grid mismatch");
}

} // namespace oam
