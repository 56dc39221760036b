#include "oam/field.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace oam {

ComplexField::ComplexField(const Grid& grid, std::vector<cdouble> samples)
    : grid_(grid), samples_(std::move(samples))
{
    if (samples_.size() != grid_.size())
        throw std::invalid_argument("ComplexField: sample count does not match grid");
}

RealField::RealField(const Grid& grid, std::vector<double> samples)
    : grid_(grid), samples_(std::move(samples))
{
    if (samples_.size() != grid_.size())
        throw std::invalid_argument("RealField: sample count does not match grid");
}

cdouble ComplexField::sample_bilinear(double x, double y) const
{
    const double gi = x / grid_.dx + grid_.nx / 2;
    const double gj = y / grid_.dy + grid_.ny / 2;
    const int i0 = static_cast<int>(std::floor(gi));
    const int j0 = static_cast<int>(std::floor(gj));
    if (i0 < 0 || j0 < 0 || i0 + 1 >= grid_.nx || j0 + 1 >= grid_.ny)
        return {0.0, 0.0};
    const double fi = gi - i0;
    const double fj = gj - j0;
    return at(i0, j0) * ((1 - fi) * (1 - fj)) + at(i0 + 1, j0) * (fi * (1 - fj)) +
           at(i0, j0 + 1) * ((1 - fi) * fj) + at(i0 + 1, j0 + 1) * (fi * fj);
}

void ComplexField::check_finite(const char* where) const
{
    for (const cdouble& v : samples_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::runtime_error(std::string(where) + ": non-finite sample");
}

double power(const ComplexField& field)
{
    double acc = 0.0;
    for (const cdouble& v : field.samples())
        acc += std::norm(v);
    return acc * field.grid().cell_area();
}

cdouble overlap(const ComplexField& a, const ComplexField& b)
{
    require_same_grid(a.grid(), b.grid(), "overlap");
    cdouble acc{0.0, 0.0};
    const auto sa = a.samples();
    const auto sb = b.samples();
    for (std::size_t i = 0; i < sa.size(); ++i)
        acc += std::conj(sa[i]) * sb[i];
    return acc * a.grid().cell_area();
}

double coupling_fraction(const ComplexField& a, const ComplexField& b)
{
    const double pa = power(a);
    const double pb = power(b);
    if (pa <= 0.0 || pb <= 0.0)
        return 0.0;
    return std::norm(overlap(a, b)) / (pa * pb);
}

ComplexField scaled(const ComplexField& field, cdouble factor)
{
    ComplexField out = field;
    for (cdouble& v : out.samples())
        v *= factor;
    return out;
}

ComplexField normalized(const ComplexField& field)
{
    const double p = power(field);
    if (p <= 0.0)
        throw std::invalid_argument("normalized: zero-power field");
    return scaled(field, cdouble{1.0 / std::sqrt(p), 0.0});
}

ComplexField conjugated(const ComplexField& field)
{
    ComplexField out = field;
    for (cdouble& v : out.samples())
        v = std::conj(v);
    return out;
}

RealField intensity(const ComplexField& field)
{
    RealField out(field.grid());
    const auto s = field.samples();
    auto o = out.samples();
    for (std::size_t i = 0; i < s.size(); ++i)
        o[i] = std::norm(s[i]);
    return out;
}

ComplexField rotated_quarter(const ComplexField& field, int quarter_turns)
{
    const Grid& g = field.grid();
    if (g.nx != g.ny)
        throw std::invalid_argument("rotated_quarter: requires a square grid");
    const int q = ((quarter_turns % 4) + 4) % 4;
    if (q == 0)
        return field;
    const int n = g.nx;
    const int c = n / 2;
    ComplexField out(g);
    // (x, y) -> rotated source coordinates; indices wrap modulo n so the
    // centered index c maps onto itself for 180-degree turns.
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const int u = i - c;
            const int v = j - c;
            int su, sv; // source offsets such that out(u,v) = in(su,sv)
            switch (q) {
            case 1: su = v; sv = -u; break;   // rotate by +90 deg
            case 2: su = -u; sv = -v; break;  // 180
            default: su = -v; sv = u; break;  // 270
            }
            const int si = ((su + c) % n + n) % n;
            const int sj = ((sv + c) % n + n) % n;
            out.at(i, j) = field.at(si, sj);
        }
    }
    return out;
}

ComplexField rotated(const ComplexField& field, double alpha)
{
    const Grid& g = field.grid();
    const double two_pi = 2.0 * std::numbers::pi;
    const double quarter = std::numbers::pi / 2.0;
    const double turns = alpha / quarter;
    const double nearest = std::round(turns);
    if (g.nx == g.ny && std::abs(turns - nearest) < 1e-12)
        return rotated_quarter(field, static_cast<int>(nearest));
    (void)two_pi;
    ComplexField out(g);
    const double ca = std::cos(alpha);
    const double sa = std::sin(alpha);
    for (int j = 0; j < g.ny; ++j) {
        const double y = g.y(j);
        for (int i = 0; i < g.nx; ++i) {
            const double x = g.x(i);
            // sample the source at the inverse-rotated point
            out.at(i, j) = field.sample_bilinear(ca * x + sa * y, -sa * x + ca * y);
        }
    }
    return out;
}

double power_within_radius(const ComplexField& field, double radius)
{
    const Grid& g = field.grid();
    const double r2 = radius * radius;
    double acc = 0.0;
    for (int j = 0; j < g.ny; ++j) {
        const double y = g.y(j);
        for (int i = 0; i < g.nx; ++i) {
            const double x = g.x(i);
            if (x * x + y * y <= r2)
                acc += std::norm(field.at(i, j));
        }
    }
    return acc * g.cell_area();
}

} // namespace oam
