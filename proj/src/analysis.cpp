#include "oam/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace oam {

namespace {
constexpr int kAzimuthalSamples = 720;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
} // namespace

OamSpectrum oam_spectrum(const ComplexField& field, int l_max)
{
    if (l_max < 1)
        throw std::invalid_argument("oam_spectrum: l_max must be >= 1");
    const Grid& g = field.grid();
    const double dr = std::min(g.dx, g.dy);
    const double r_max = g.window() / 2.0 - 2.0 * dr;
    const int n_radii = static_cast<int>(r_max / dr);
    const int n_l = 2 * l_max + 1;

    // Precompute the azimuthal phase table once.
    std::vector<double> cos_t(kAzimuthalSamples), sin_t(kAzimuthalSamples);
    for (int m = 0; m < kAzimuthalSamples; ++m) {
        const double phi = kTwoPi * m / kAzimuthalSamples;
        cos_t[m] = std::cos(phi);
        sin_t[m] = std::sin(phi);
    }

    OamSpectrum spec;
    spec.l_min = -l_max;
    spec.l_max = l_max;
    spec.p.assign(n_l, 0.0);
    double disc_power = 0.0;
    std::vector<cdouble> ring(kAzimuthalSamples);
    for (int ri = 0; ri < n_radii; ++ri) {
        const double r = (ri + 0.5) * dr;
        double mean_sq = 0.0;
        for (int m = 0; m < kAzimuthalSamples; ++m) {
            ring[m] = field.sample_bilinear(r * cos_t[m], r * sin_t[m]);
            mean_sq += std::norm(ring[m]);
        }
        mean_sq /= kAzimuthalSamples;
        const double weight = kTwoPi * r * dr;
        disc_power += mean_sq * weight;
        for (int li = 0; li < n_l; ++li) {
            const int ell = spec.l_min + li;
            cdouble acc{0.0, 0.0};
            for (int m = 0; m < kAzimuthalSamples; ++m) {
                // e^{-i ell phi_m}; phi_m wraps uniformly so reuse the table
                const long idx = (static_cast<long>(ell) * m) % kAzimuthalSamples;
                const int k = idx < 0 ? static_cast<int>(idx + kAzimuthalSamples)
                                      : static_cast<int>(idx);
                acc += ring[m] * cdouble{cos_t[k], -sin_t[k]};
            }
            acc /= static_cast<double>(kAzimuthalSamples);
            spec.p[li] += std::norm(acc) * weight;
        }
    }
    if (disc_power > 0.0)
        for (double& v : spec.p)
            v /= disc_power;
    return spec;
}

int net_topological_charge(const ComplexField& field, double radius)
{
    const Grid& g = field.grid();
    if (radius <= 0.0 || 2.0 * radius >= g.window() - 4.0 * std::max(g.dx, g.dy))
        throw std::invalid_argument("net_topological_charge: circle not inside grid");

    double peak = 0.0;
    for (const cdouble& v : field.samples())
        peak = std::max(peak, std::norm(v));
    if (peak <= 0.0)
        throw std::invalid_argument("net_topological_charge: empty field");

    double acc = 0.0;
    double min_intensity = std::numeric_limits<double>::max();
    cdouble prev = field.sample_bilinear(radius, 0.0);
    min_intensity = std::min(min_intensity, std::norm(prev));
    for (int m = 1; m <= kAzimuthalSamples; ++m) {
        const double phi = kTwoPi * m / kAzimuthalSamples;
        const cdouble cur = field.sample_bilinear(radius * std::cos(phi), radius * std::sin(phi));
        min_intensity = std::min(min_intensity, std::norm(cur));
        acc += std::arg(cur * std::conj(prev));
        prev = cur;
    }
    if (min_intensity < 1e-12 * peak)
        throw std::runtime_error("net_topological_charge: insufficient intensity on circle");
    return static_cast<int>(std::lround(acc / kTwoPi));
}

RealField interfere(const ComplexField& field, double ref_waist, double ref_curvature_mm,
                    double ref_phase, double ref_amplitude)
{
    if (ref_waist <= 0.0)
        throw std::invalid_argument("interfere: reference waist must be positive");
    const Grid& g = field.grid();
    double peak = 0.0;
    for (const cdouble& v : field.samples())
        peak = std::max(peak, std::abs(v));
    const double amp = ref_amplitude * (peak > 0.0 ? peak : 1.0);
    const double k0 = g.k0();
    const double curvature_um = ref_curvature_mm * 1e3;

    RealField out(g);
    for (int j = 0; j < g.ny; ++j) {
        const double y = g.y(j);
        for (int i = 0; i < g.nx; ++i) {
            const double x = g.x(i);
            const double r2 = x * x + y * y;
            double phase = ref_phase;
            if (curvature_um != 0.0)
                phase += k0 * r2 / (2.0 * curvature_um);
            const cdouble ref = std::polar(amp * std::exp(-r2 / (ref_waist * ref_waist)), phase);
            out.at(i, j) = std::norm(field.at(i, j) + ref);
        }
    }
    return out;
}

namespace {

double annulus_power(const ComplexField& field, double r_lo, double r_hi)
{
    const Grid& g = field.grid();
    double acc = 0.0;
    for (int j = 0; j < g.ny; ++j) {
        const double y = g.y(j);
        for (int i = 0; i < g.nx; ++i) {
            const double x = g.x(i);
            const double r2 = x * x + y * y;
            if (r2 >= r_lo * r_lo && r2 <= r_hi * r_hi)
                acc += std::norm(field.at(i, j));
        }
    }
    return acc * g.cell_area();
}

double radial_cut_integral(const ComplexField& field, double r_lo, double r_hi, double angle)
{
    const Grid& g = field.grid();
    const double dr = std::min(g.dx, g.dy) / 2.0;
    const int n = std::max(2, static_cast<int>((r_hi - r_lo) / dr) + 1);
    const double step = (r_hi - r_lo) / (n - 1);
    const double cs = std::cos(angle);
    const double sn = std::sin(angle);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r = r_lo + i * step;
        const double v = std::norm(field.sample_bilinear(r * cs, r * sn));
        acc += (i == 0 || i == n - 1) ? 0.5 * v : v;
    }
    return acc * step;
}

} // namespace

RingAnalysis ring_power_ratio(const ComplexField& field, const std::array<double, 4>& radii)
{
    const auto [r1, r2, r3, r4] = radii;
    if (!(0.0 < r1 && r1 < r2 && r2 < r3 && r3 < r4))
        throw std::invalid_argument("ring_power_ratio: radii must satisfy 0 < r1 < r2 < r3 < r4");
    if (2.0 * r4 >= field.grid().window())
        throw std::invalid_argument("ring_power_ratio: outer radius outside the window");

    RingAnalysis out;
    out.annulus.method = RingMethod::annulus_integral;
    out.annulus.radii = radii;
    out.annulus.inner_power = annulus_power(field, r1, r2);
    out.annulus.outer_power = annulus_power(field, r3, r4);
    out.annulus.ratio =
        out.annulus.inner_power > 0.0 ? out.annulus.outer_power / out.annulus.inner_power : 0.0;

    // 1-D trapezoid along a radial cut, scaled by the circumference ratio
    // of the ring centers.
    out.radial.method = RingMethod::radial_trapezoid;
    out.radial.radii = radii;
    const double cut_inner = radial_cut_integral(field, r1, r2, 0.0);
    const double cut_outer = radial_cut_integral(field, r3, r4, 0.0);
    const double circumference_ratio = (r3 + r4) / (r1 + r2);
    out.radial.inner_power = cut_inner;
    out.radial.outer_power = cut_outer * circumference_ratio;
    out.radial.ratio = cut_inner > 0.0 ? out.radial.outer_power / cut_inner : 0.0;
    return out;
}

} // namespace oam
