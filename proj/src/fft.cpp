#include "oam/fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace oam {

namespace {

std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

} // namespace

void dft2_inplace(const Grid& grid, cdouble* data, int sign)
{
    fftw_plan plan;
    {
        // FFTW's planner is not thread-safe; execution of a ready plan is.
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_2d(grid.ny, grid.nx, reinterpret_cast<fftw_complex*>(data),
                                reinterpret_cast<fftw_complex*>(data),
                                sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
}

Grid far_field_grid(const Grid& grid)
{
    const double two_pi = 2.0 * std::numbers::pi;
    Grid out = grid;
    out.dx = two_pi / (grid.nx * grid.dx);
    out.dy = two_pi / (grid.ny * grid.dy);
    return out;
}

ComplexField far_field(const ComplexField& field)
{
    const Grid& g = field.grid();
    ComplexField out(far_field_grid(g), std::vector<cdouble>(field.samples().begin(), field.samples().end()));
    auto s = out.samples();
    // Centered transform: pre/post multiply by (-1)^(i+j) instead of shifts.
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if ((i + j) & 1)
                s[g.index(i, j)] = -s[g.index(i, j)];
    dft2_inplace(g, s.data(), -1);
    // The index-shift identity leaves a constant (-1)^(nx/2 + ny/2).
    const double parity = ((g.nx / 2 + g.ny / 2) % 2) ? -1.0 : 1.0;
    const double scale = parity * g.dx * g.dy / (2.0 * std::numbers::pi);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double sgn = ((i + j) & 1) ? -scale : scale;
            s[g.index(i, j)] *= sgn;
        }
    return out;
}

} // namespace oam
