#include "oam/waveguide.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <stdexcept>

namespace oam {

IndexProfile::IndexProfile(const Grid& grid, std::vector<double> n, double n0, double delta_n)
    : grid_(grid), n_(std::move(n)), n0_(n0), delta_n_(delta_n)
{
    if (n_.size() != grid_.size())
        throw std::invalid_argument("IndexProfile: sample count does not match grid");
    for (double v : n_)
        if (v < n0_ - 1e-12 || v > n0_ + delta_n_ + 1e-12)
            throw std::invalid_argument("IndexProfile: index outside [n0, n0 + delta_n]");
}

IndexProfile IndexProfile::uniform(const Grid& grid, double n0)
{
    return IndexProfile(grid, std::vector<double>(grid.size(), n0), n0, 0.0);
}

void DoughnutGeometry::validate() const
{
    if (n_cores < 3)
        throw std::invalid_argument("DoughnutGeometry: need at least 3 cores");
    if (ring_diameter <= core_diameter)
        throw std::invalid_argument("DoughnutGeometry: ring diameter must exceed core diameter");
    if (core_diameter <= 0.0 || delta_n < 0.0 || core_aspect <= 0.0 || n0 <= 0.0)
        throw std::invalid_argument("DoughnutGeometry: invalid parameter");
}

std::vector<std::pair<double, double>> DoughnutGeometry::core_centers() const
{
    validate();
    std::vector<std::pair<double, double>> centers;
    const double radius = ring_diameter / 2.0;
    for (int k = 0; k < n_cores; ++k) {
        const double angle = 2.0 * std::numbers::pi * k / n_cores;
        centers.emplace_back(radius * std::cos(angle), radius * std::sin(angle));
    }
    if (include_center)
        centers.emplace_back(0.0, 0.0);
    return centers;
}

IndexProfile doughnut_profile(const Grid& grid, const DoughnutGeometry& geom)
{
    geom.validate();
    const double extent = geom.ring_diameter / 2.0 + geom.core_diameter * std::max(1.0, geom.core_aspect);
    if (2.0 * extent > grid.window())
        throw std::invalid_argument("doughnut_profile: geometry exceeds grid window");

    const auto centers = geom.core_centers();
    const double ln2 = std::numbers::ln2;
    const double wx = geom.core_diameter;
    const double wy = geom.core_diameter * geom.core_aspect;
    std::vector<double> n(grid.size(), 0.0);
    for (int j = 0; j < grid.ny; ++j) {
        const double y = grid.y(j);
        for (int i = 0; i < grid.nx; ++i) {
            const double x = grid.x(i);
            double best = 0.0;
            for (const auto& [cx, cy] : centers) {
                const double u = (x - cx) / wx;
                const double v = (y - cy) / wy;
                // rho measures (distance/FWHM)^2 so exp(-4 ln2 rho) has the
                // requested full width at half maximum
                const double rho = u * u + v * v;
                double g;
                if (geom.core_shape == DoughnutGeometry::CoreShape::gaussian)
                    g = std::exp(-4.0 * ln2 * rho);
                else
                    g = std::exp(-ln2 * (4.0 * rho) * (4.0 * rho));
                best = std::max(best, g); // re-exposure does not add contrast
            }
            n[grid.index(i, j)] = geom.n0 + geom.delta_n * best;
        }
    }
    return IndexProfile(grid, std::move(n), geom.n0, geom.delta_n);
}

IndexProfile step_fiber_profile(const Grid& grid, double core_radius, double delta_n, double n0)
{
    if (core_radius <= 0.0 || delta_n < 0.0)
        throw std::invalid_argument("step_fiber_profile: invalid parameter");
    if (2.0 * core_radius >= grid.window())
        throw std::invalid_argument("step_fiber_profile: core exceeds grid window");
    const double r2 = core_radius * core_radius;
    const int ss = 16; // subsamples per axis for boundary cells
    std::vector<double> n(grid.size());
    for (int j = 0; j < grid.ny; ++j) {
        const double y = grid.y(j);
        for (int i = 0; i < grid.nx; ++i) {
            const double x = grid.x(i);
            const double r = std::hypot(x, y);
            double frac;
            if (r < core_radius - 0.75 * std::max(grid.dx, grid.dy)) {
                frac = 1.0;
            } else if (r > core_radius + 0.75 * std::max(grid.dx, grid.dy)) {
                frac = 0.0;
            } else {
                int inside = 0;
                for (int b = 0; b < ss; ++b) {
                    const double yy = y + ((b + 0.5) / ss - 0.5) * grid.dy;
                    for (int a = 0; a < ss; ++a) {
                        const double xx = x + ((a + 0.5) / ss - 0.5) * grid.dx;
                        if (xx * xx + yy * yy <= r2)
                            ++inside;
                    }
                }
                frac = static_cast<double>(inside) / (ss * ss);
            }
            n[grid.index(i, j)] = n0 + delta_n * frac;
        }
    }
    return IndexProfile(grid, std::move(n), n0, delta_n);
}

double step_fiber_v_number(double core_radius, double delta_n, double wavelength, double n0)
{
    const double nco = n0 + delta_n;
    return 2.0 * std::numbers::pi / wavelength * core_radius * std::sqrt(nco * nco - n0 * n0);
}

namespace {

/// 5-point scalar Helmholtz operator with Dirichlet edges.
class HelmholtzOperator {
public:
    HelmholtzOperator(const IndexProfile& profile)
        : nx_(profile.grid().nx), ny_(profile.grid().ny),
          inv_dx2_(1.0 / (profile.grid().dx * profile.grid().dx)),
          inv_dy2_(1.0 / (profile.grid().dy * profile.grid().dy)), diag_(profile.grid().size())
    {
        const double k0 = profile.grid().k0();
        const auto n = profile.n();
        for (std::size_t i = 0; i < diag_.size(); ++i)
            diag_[i] = k0 * k0 * n[i] * n[i] - 2.0 * (inv_dx2_ + inv_dy2_);
    }

    void apply(const double* x, double* y) const
    {
        const int nx = nx_;
        const double ix2 = inv_dx2_;
        const double iy2 = inv_dy2_;
        for (int j = 0; j < ny_; ++j) {
            const double* row = x + static_cast<std::size_t>(j) * nx;
            double* out = y + static_cast<std::size_t>(j) * nx;
            const double* dg = diag_.data() + static_cast<std::size_t>(j) * nx;
            out[0] = dg[0] * row[0] + ix2 * row[1];
            for (int i = 1; i < nx - 1; ++i)
                out[i] = dg[i] * row[i] + ix2 * (row[i - 1] + row[i + 1]);
            out[nx - 1] = dg[nx - 1] * row[nx - 1] + ix2 * row[nx - 2];
            if (j > 0) {
                const double* dn = row - nx;
                for (int i = 0; i < nx; ++i)
                    out[i] += iy2 * dn[i];
            }
            if (j + 1 < ny_) {
                const double* up = row + nx;
                for (int i = 0; i < nx; ++i)
                    out[i] += iy2 * up[i];
            }
        }
    }

    std::size_t size() const { return diag_.size(); }

    double lower_bound() const
    {
        double dmin = diag_[0];
        for (double v : diag_)
            dmin = std::min(dmin, v);
        return dmin - 2.0 * (inv_dx2_ + inv_dy2_);
    }

private:
    int nx_, ny_;
    double inv_dx2_, inv_dy2_;
    std::vector<double> diag_;
};

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

void orthonormalize(Matrix& x, const Matrix& locked, std::mt19937_64& rng)
{
    // two-pass modified Gram-Schmidt against the locked set and internally
    for (int pass = 0; pass < 2; ++pass) {
        for (int c = 0; c < x.cols(); ++c) {
            auto col = x.col(c);
            for (int l = 0; l < locked.cols(); ++l)
                col -= locked.col(l).dot(col) * locked.col(l);
            for (int p = 0; p < c; ++p)
                col -= x.col(p).dot(col) * x.col(p);
            const double nrm = col.norm();
            if (nrm < 1e-14) {
                std::uniform_real_distribution<double> dist(-1.0, 1.0);
                for (Eigen::Index r = 0; r < col.size(); ++r)
                    col[r] = dist(rng);
                col /= col.norm();
                pass = 0; // restart passes after injecting a fresh direction
            } else {
                col /= nrm;
            }
        }
    }
}

/// Scaled Chebyshev filter amplifying the spectrum above [lo, hi];
/// normalization anchored at lambda_ref to avoid overflow.
void chebyshev_filter(const HelmholtzOperator& op, Matrix& x, int degree, double lo, double hi,
                      double lambda_ref)
{
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    double sigma = h / (lambda_ref - c);
    const double tau = 2.0 / sigma;
    const std::size_t n = op.size();
    Matrix y(x.rows(), x.cols());
    Matrix tmp(x.rows(), x.cols());
    for (int col = 0; col < x.cols(); ++col) {
        op.apply(x.col(col).data(), y.col(col).data());
        y.col(col) = (y.col(col) - c * x.col(col)) * (sigma / h);
    }
    for (int k = 2; k <= degree; ++k) {
        const double sigma_new = 1.0 / (tau - sigma);
        for (int col = 0; col < x.cols(); ++col) {
            op.apply(y.col(col).data(), tmp.col(col).data());
            tmp.col(col) = (tmp.col(col) - c * y.col(col)) * (2.0 * sigma_new / h) -
                           (sigma * sigma_new) * x.col(col);
        }
        x.swap(y);
        y.swap(tmp);
        sigma = sigma_new;
    }
    x.swap(y);
    (void)n;
}

} // namespace

std::vector<GuidedMode> solve_modes(const IndexProfile& profile, int k_modes)
{
    SolveOptions options;
    options.k_modes = k_modes;
    return solve_modes(profile, options);
}

std::vector<GuidedMode> solve_modes(const IndexProfile& profile, const SolveOptions& options)
{
    if (options.k_modes < 1)
        throw std::invalid_argument("solve_modes: k_modes must be >= 1");
    const Grid& grid = profile.grid();
    const double k0 = grid.k0();
    const double cladding_line = k0 * k0 * profile.n0() * profile.n0();
    const double band = std::max(
        k0 * k0 * std::pow(profile.n0() + std::max(profile.delta_n(), 1e-9), 2) - cladding_line,
        1e-12);

    HelmholtzOperator op(profile);
    const double lo = op.lower_bound();
    const double width = cladding_line - lo;
    const std::size_t n = op.size();

    const int block = std::clamp(options.k_modes + 2, 4, 12);
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Matrix x(n, block);
    for (int c = 0; c < block; ++c)
        for (std::size_t r = 0; r < n; ++r)
            x(r, c) = dist(rng);

    Matrix locked(n, 0);
    std::vector<double> locked_theta;
    Matrix w(n, block);
    std::vector<double> prev_theta;
    int below_edge_streak = 0;
    bool converged = false;

    for (int iter = 0; iter < options.max_iterations; ++iter) {
        // degree rises as the wanted margin above the cladding line shrinks
        double margin = band * 0.02;
        if (!prev_theta.empty()) {
            for (double t : prev_theta)
                if (t > cladding_line)
                    margin = std::min(margin, t - cladding_line);
        }
        margin = std::max(margin, band * 1e-3);
        const int degree =
            std::clamp(static_cast<int>(8.0 / std::sqrt(2.0 * margin / width)), 60, 3000);
        const double lambda_ref = cladding_line + 1.25 * band;

        chebyshev_filter(op, x, degree, lo, cladding_line, lambda_ref);
        orthonormalize(x, locked, rng);

        for (int c = 0; c < block; ++c)
            op.apply(x.col(c).data(), w.col(c).data());
        Matrix h = x.transpose() * w;
        h = 0.5 * (h + h.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
        // descending
        Eigen::VectorXi order(block);
        for (int c = 0; c < block; ++c)
            order[c] = block - 1 - c;
        Matrix xr(n, block), wr(n, block);
        std::vector<double> theta(block);
        for (int c = 0; c < block; ++c) {
            xr.col(c) = x * eig.eigenvectors().col(order[c]);
            wr.col(c) = w * eig.eigenvectors().col(order[c]);
            theta[c] = eig.eigenvalues()[order[c]];
        }
        x.swap(xr);
        w.swap(wr);

        if (std::getenv("OAM_SOLVER_DEBUG")) {
            std::fprintf(stderr, "it %d deg %d:", iter, degree);
            for (int c = 0; c < std::min(block, 4); ++c) {
                const double res = (w.col(c) - theta[c] * x.col(c)).norm() / std::abs(theta[c]);
                std::fprintf(stderr, " [%.6e %.1e]", theta[c] - cladding_line, res);
            }
            std::fprintf(stderr, " locked=%zu\n", locked_theta.size());
        }
        // lock converged leading Ritz pairs above the cladding line
        int n_lock = 0;
        while (n_lock < block && static_cast<int>(locked_theta.size()) + n_lock < options.k_modes &&
               theta[n_lock] > cladding_line) {
            const double res =
                (w.col(n_lock) - theta[n_lock] * x.col(n_lock)).norm() / std::abs(theta[n_lock]);
            if (res >= options.eigenvalue_tol)
                break;
            ++n_lock;
        }
        if (n_lock > 0) {
            for (int s = 0; s < n_lock; ++s) {
                locked.conservativeResize(Eigen::NoChange, locked.cols() + 1);
                locked.col(locked.cols() - 1) = x.col(s);
                locked_theta.push_back(theta[s]);
            }
            Matrix xs = x;
            for (int s = n_lock; s < block; ++s)
                x.col(s - n_lock) = xs.col(s);
            for (int s = block - n_lock; s < block; ++s)
                for (std::size_t r = 0; r < n; ++r)
                    x(r, s) = dist(rng);
            theta.erase(theta.begin(), theta.begin() + n_lock);
        }

        if (static_cast<int>(locked_theta.size()) >= options.k_modes) {
            converged = true;
            break;
        }

        // conclude "nothing else guided" only once the leading active Ritz
        // value sits stably below the cladding line; an emerging guided mode
        // keeps climbing by far more than the stability margin per pass
        if (!theta.empty() && theta.front() <= cladding_line) {
            const bool stable = !prev_theta.empty() &&
                                std::abs(theta.front() - prev_theta.front()) < 1e-4 * band;
            if (stable)
                ++below_edge_streak;
            else
                below_edge_streak = 0;
            if (below_edge_streak >= 4 && iter >= 8) {
                converged = true;
                break;
            }
        } else {
            below_edge_streak = 0;
        }
        prev_theta = theta;
    }

    if (!converged && locked_theta.empty())
        throw std::runtime_error("solve_modes: eigensolver did not converge");
    if (locked_theta.empty())
        return {};

    std::vector<GuidedMode> modes;
    const double cell = grid.cell_area();
    for (std::size_t m = 0; m < locked_theta.size(); ++m) {
        const double n_eff = std::sqrt(locked_theta[m]) / k0;
        if (n_eff <= profile.n0())
            continue;
        ComplexField field(grid);
        auto s = field.samples();
        // unit L2 column -> unit power on the grid
        const double scale = 1.0 / std::sqrt(cell);
        // deterministic sign: largest-magnitude sample positive
        Eigen::Index peak = 0;
        locked.col(m).cwiseAbs().maxCoeff(&peak);
        const double sign = locked.col(m)[peak] < 0.0 ? -1.0 : 1.0;
        for (std::size_t r = 0; r < n; ++r)
            s[r] = cdouble{sign * scale * locked.col(m)[r], 0.0};
        modes.push_back(GuidedMode{std::move(field), n_eff});
    }
    std::sort(modes.begin(), modes.end(),
              [](const GuidedMode& a, const GuidedMode& b) { return a.n_eff > b.n_eff; });
    for (const GuidedMode& mode : modes) {
        if (mode.n_eff >= profile.n0() + profile.delta_n() + 1e-9)
            throw std::runtime_error("solve_modes: effective index above core bracket");
        if (mode_residual(profile, mode) > 1e-8)
            throw std::runtime_error("solve_modes: failed to converge to residual tolerance");
    }
    return modes;
}

double mode_residual(const IndexProfile& profile, const GuidedMode& mode)
{
    HelmholtzOperator op(profile);
    const std::size_t n = op.size();
    std::vector<double> x(n), y(n);
    const auto s = mode.field.samples();
    for (std::size_t i = 0; i < n; ++i)
        x[i] = s[i].real();
    op.apply(x.data(), y.data());
    const double k0 = profile.grid().k0();
    const double beta2 = mode.n_eff * mode.n_eff * k0 * k0;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - beta2 * x[i];
        num += r * r;
        den += beta2 * beta2 * x[i] * x[i];
    }
    return std::sqrt(num / den);
}

ComplexField circular_recombination(const GuidedMode& m1, const GuidedMode& m2, int sign)
{
    require_same_grid(m1.field.grid(), m2.field.grid(), "circular_recombination");
    const cdouble i_unit{0.0, sign >= 0 ? 1.0 : -1.0};
    ComplexField out = m1.field;
    auto o = out.samples();
    const auto s2 = m2.field.samples();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t k = 0; k < o.size(); ++k)
        o[k] = (o[k] + i_unit * s2[k]) * inv_sqrt2;
    return out;
}

} // namespace oam
