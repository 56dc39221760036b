#include "oam/propagation.hpp"

#include "oam/analysis.hpp"
#include "oam/fft.hpp"

#include <atomic>
#include <cmath>
#include <future>
#include <stdexcept>
#include <thread>

namespace oam {

void BpmParams::validate(const Grid& grid) const
{
    if (dz <= 0.0 || dz > 5.0)
        throw std::invalid_argument("BpmParams: dz must lie in (0, 5] um");
    if (length <= 0.0)
        throw std::invalid_argument("BpmParams: length must be positive");
    if (absorber_enabled && absorber_width >= grid.window() / 4.0)
        throw std::invalid_argument("BpmParams: absorber wider than a quarter window");
    if (record_every < 0)
        throw std::invalid_argument("BpmParams: record_every must be >= 0");
}

namespace {

std::vector<double> absorber_mask(const Grid& g, const BpmParams& p)
{
    std::vector<double> mask(g.size(), 1.0);
    if (!p.absorber_enabled || p.absorber_width <= 0.0)
        return mask;
    const double x_lo = g.x(0);
    const double x_hi = g.x(g.nx - 1);
    const double y_lo = g.y(0);
    const double y_hi = g.y(g.ny - 1);
    auto rim = [&](double coord, double lo, double hi) {
        const double dist = std::min(coord - lo, hi - coord);
        if (dist >= p.absorber_width)
            return 1.0;
        const double pen = (p.absorber_width - dist) / p.absorber_width;
        return std::exp(-std::pow(pen, p.absorber_exponent));
    };
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            mask[g.index(i, j)] = rim(g.x(i), x_lo, x_hi) * rim(g.y(j), y_lo, y_hi);
    return mask;
}

} // namespace

PropagationResult propagate(const ComplexField& input, const IndexProfile& profile,
                            const BpmParams& params)
{
    const Grid& g = input.grid();
    require_same_grid(g, profile.grid(), "propagate");
    params.validate(g);

    const double n_ref = params.n_ref > 0.0 ? params.n_ref : profile.n0();
    const double k0 = g.k0();
    const int steps = std::max(1, static_cast<int>(std::llround(params.length / params.dz)));
    const double dz = params.length / steps;

    // k-space phase factors of the paraxial diffraction kernel; the inverse
    // transform's 1/N is folded in.
    const std::size_t n = g.size();
    const double inv_n = 1.0 / static_cast<double>(n);
    std::vector<cdouble> diff_half(n), diff_full(n);
    for (int j = 0; j < g.ny; ++j) {
        const int fy = j <= g.ny / 2 ? j : j - g.ny;
        const double ky = 2.0 * std::numbers::pi * fy / (g.ny * g.dy);
        for (int i = 0; i < g.nx; ++i) {
            const int fx = i <= g.nx / 2 ? i : i - g.nx;
            const double kx = 2.0 * std::numbers::pi * fx / (g.nx * g.dx);
            const double k2 = kx * kx + ky * ky;
            const double phase = -k2 * dz / (2.0 * k0 * n_ref);
            diff_half[g.index(i, j)] = std::polar(inv_n, phase / 2.0);
            diff_full[g.index(i, j)] = std::polar(inv_n, phase);
        }
    }

    // real-space screen: refraction phase times the absorber amplitude
    const auto mask = absorber_mask(g, params);
    std::vector<cdouble> screen(n);
    {
        const auto nn = profile.n();
        for (std::size_t k = 0; k < n; ++k)
            screen[k] = std::polar(mask[k], k0 * (nn[k] - n_ref) * dz);
    }

    const double p_in = power(input);
    PropagationResult result;
    result.output = input;
    auto field = result.output.samples();
    std::vector<cdouble> tap(n);

    auto record = [&](double z, bool from_k_space) {
        if (p_in <= 0.0) {
            result.power_trace.emplace_back(z, 0.0);
            return;
        }
        double acc = 0.0;
        if (from_k_space) {
            std::copy(field.begin(), field.end(), tap.begin());
            for (std::size_t k = 0; k < n; ++k)
                tap[k] *= diff_half[k];
            dft2_inplace(g, tap.data(), +1);
            for (const cdouble& v : tap)
                acc += std::norm(v);
        } else {
            for (const cdouble& v : field)
                acc += std::norm(v);
        }
        result.power_trace.emplace_back(z, acc * g.cell_area() / p_in);
    };

    record(0.0, false);
    // Strang splitting: half diffraction, then [screen, full diffraction]
    // repeated, closing with screen and half diffraction. The field stays in
    // k-space between steps.
    dft2_inplace(g, field.data(), -1);
    for (std::size_t k = 0; k < n; ++k)
        field[k] *= diff_half[k];
    dft2_inplace(g, field.data(), +1);
    for (int step = 1; step <= steps; ++step) {
        for (std::size_t k = 0; k < n; ++k)
            field[k] *= screen[k];
        if (step < steps) {
            dft2_inplace(g, field.data(), -1);
            if (params.record_every > 0 && step % params.record_every == 0)
                record(step * dz, true);
            for (std::size_t k = 0; k < n; ++k)
                field[k] *= diff_full[k];
            dft2_inplace(g, field.data(), +1);
        } else {
            dft2_inplace(g, field.data(), -1);
            for (std::size_t k = 0; k < n; ++k)
                field[k] *= diff_half[k];
            dft2_inplace(g, field.data(), +1);
        }
    }
    record(params.length, false);
    result.output.check_finite("propagate");
    return result;
}

double transmission(const PropagationResult& result, const ComplexField& input,
                    double aperture_radius)
{
    const Grid& g = result.output.grid();
    const double interior = g.window() / 2.0;
    if (aperture_radius <= 0.0 || aperture_radius > interior)
        throw std::invalid_argument("transmission: aperture outside the window");
    const double p_in = power(input);
    if (p_in <= 0.0)
        return 0.0;
    return power_within_radius(result.output, aperture_radius) / p_in;
}

std::vector<SweepRow> coupling_sweep(const std::vector<BeamSpec>& beams,
                                     const std::vector<ObjectiveSpec>& objectives,
                                     double input_waist_mm, const IndexProfile& profile,
                                     const BpmParams& params, double aperture_radius, int threads)
{
    if (beams.empty() || objectives.empty())
        throw std::invalid_argument("coupling_sweep: empty beam or objective list");
    const Grid& g = profile.grid();

    struct Job {
        BeamSpec beam;
        ObjectiveSpec objective;
        double waist;
    };
    std::vector<Job> jobs;
    for (const BeamSpec& b : beams)
        for (const ObjectiveSpec& o : objectives) {
            Job j{b, o, focused_waist(o, input_waist_mm, g.wavelength)};
            jobs.push_back(j);
        }

    auto run = [&](const Job& job) {
        BeamSpec spec = job.beam;
        spec.waist = job.waist;
        const ComplexField in = lg_mode(g, spec);
        const PropagationResult res = propagate(in, profile, params);
        SweepRow row;
        row.beam = spec;
        row.objective = job.objective;
        row.focused_waist_um = job.waist;
        row.efficiency = transmission(res, in, aperture_radius);
        const OamSpectrum spectrum = oam_spectrum(res.output, 8);
        row.spectrum_argmax = spectrum.argmax();
        return row;
    };

    unsigned n_threads = threads > 0 ? static_cast<unsigned>(threads)
                                     : std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<unsigned>(n_threads, jobs.size());

    std::vector<SweepRow> rows(jobs.size());
    if (n_threads <= 1) {
        for (std::size_t i = 0; i < jobs.size(); ++i)
            rows[i] = run(jobs[i]);
        return rows;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t)
        pool.emplace_back([&]() {
            for (std::size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1))
                rows[i] = run(jobs[i]);
        });
    for (std::thread& t : pool)
        t.join();
    return rows;
}

} // namespace oam
