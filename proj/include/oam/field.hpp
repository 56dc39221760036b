#pragma once

#include <complex>
#include <span>
#include <vector>

#include "oam/grid.hpp"

namespace oam {

using cdouble = std::complex<double>;

/// 2-D complex optical field sampled on a Grid. Samples are stored
/// row-major with x fastest; intensity is |E|^2 and power integrates
/// it over the window (amplitude^2 * um^2).
class ComplexField {
public:
    ComplexField() = default;
    explicit ComplexField(const Grid& grid, cdouble fill = {0.0, 0.0})
        : grid_(grid), samples_(grid.size(), fill)
    {
    }
    ComplexField(const Grid& grid, std::vector<cdouble> samples);

    const Grid& grid() const { return grid_; }
    std::span<const cdouble> samples() const { return samples_; }
    std::span<cdouble> samples() { return samples_; }

    cdouble at(int ix, int iy) const { return samples_[grid_.index(ix, iy)]; }
    cdouble& at(int ix, int iy) { return samples_[grid_.index(ix, iy)]; }

    /// Bilinear interpolation at (x, y) um; zero outside the window.
    cdouble sample_bilinear(double x, double y) const;

    void check_finite(const char* where) const;

private:
    Grid grid_;
    std::vector<cdouble> samples_;
};

/// 2-D real map on a Grid (intensity images, masks, count rates).
class RealField {
public:
    RealField() = default;
    explicit RealField(const Grid& grid, double fill = 0.0)
        : grid_(grid), samples_(grid.size(), fill)
    {
    }
    RealField(const Grid& grid, std::vector<double> samples);

    const Grid& grid() const { return grid_; }
    std::span<const double> samples() const { return samples_; }
    std::span<double> samples() { return samples_; }

    double at(int ix, int iy) const { return samples_[grid_.index(ix, iy)]; }
    double& at(int ix, int iy) { return samples_[grid_.index(ix, iy)]; }

private:
    Grid grid_;
    std::vector<double> samples_;
};

double power(const ComplexField& field);
cdouble overlap(const ComplexField& a, const ComplexField& b);

/// |<a|b>|^2 / (power(a) * power(b)); 0 when either field is empty.
double coupling_fraction(const ComplexField& a, const ComplexField& b);

ComplexField scaled(const ComplexField& field, cdouble factor);
ComplexField normalized(const ComplexField& field);
ComplexField conjugated(const ComplexField& field);
RealField intensity(const ComplexField& field);

/// Exact 90-degree-multiple rotation by index permutation (quarter_turns in
/// {0,1,2,3}); indices wrap modulo the grid so fields must be negligible at
/// the window edge for physical use.
ComplexField rotated_quarter(const ComplexField& field, int quarter_turns);

/// General rotation by alpha radians about the grid center, bilinear resample.
ComplexField rotated(const ComplexField& field, double alpha);

double power_within_radius(const ComplexField& field, double radius);

} // namespace oam
