#include "oam/io.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace oam {

namespace {

void put_u32(std::string& out, std::uint32_t v)
{
    for (int b = 0; b < 4; ++b)
        out.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
}

void put_f64(std::string& out, double v)
{
    const std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
    for (int b = 0; b < 8; ++b)
        out.push_back(static_cast<char>((bits >> (8 * b)) & 0xff));
}

std::uint32_t get_u32(const char* p)
{
    std::uint32_t v = 0;
    for (int b = 3; b >= 0; --b)
        v = (v << 8) | static_cast<unsigned char>(p[b]);
    return v;
}

double get_f64(const char* p)
{
    std::uint64_t v = 0;
    for (int b = 7; b >= 0; --b)
        v = (v << 8) | static_cast<unsigned char>(p[b]);
    return std::bit_cast<double>(v);
}

void write_binary_atomic(const std::filesystem::path& path, const std::string& bytes)
{
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open for writing: " + tmp.string());
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out)
            throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string read_all(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string header_bytes(const char* magic, const Grid& g)
{
    std::string out(magic, 8);
    put_u32(out, static_cast<std::uint32_t>(g.nx));
    put_u32(out, static_cast<std::uint32_t>(g.ny));
    put_f64(out, g.dx);
    put_f64(out, g.dy);
    put_f64(out, g.wavelength);
    return out;
}

Grid parse_header(const std::string& bytes, const char* magic, std::size_t& offset)
{
    if (bytes.size() < 40 || std::memcmp(bytes.data(), magic, 8) != 0)
        throw std::runtime_error(std::string("bad magic, expected ") + magic);
    const std::uint32_t nx = get_u32(bytes.data() + 8);
    const std::uint32_t ny = get_u32(bytes.data() + 12);
    const double dx = get_f64(bytes.data() + 16);
    const double dy = get_f64(bytes.data() + 24);
    const double wl = get_f64(bytes.data() + 32);
    offset = 40;
    return Grid::make(static_cast<int>(nx), static_cast<int>(ny), dx, dy, wl);
}

} // namespace

void write_field(const std::filesystem::path& path, const ComplexField& field)
{
    std::string out = header_bytes("OAMFLD01", field.grid());
    out.reserve(out.size() + field.grid().size() * 16);
    for (const cdouble& v : field.samples()) {
        put_f64(out, v.real());
        put_f64(out, v.imag());
    }
    write_binary_atomic(path, out);
}

ComplexField read_field(const std::filesystem::path& path)
{
    const std::string bytes = read_all(path);
    std::size_t off = 0;
    const Grid g = parse_header(bytes, "OAMFLD01", off);
    if (bytes.size() != off + g.size() * 16)
        throw std::runtime_error("OAMFLD01: truncated payload in " + path.string());
    std::vector<cdouble> samples(g.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const char* p = bytes.data() + off + i * 16;
        samples[i] = cdouble{get_f64(p), get_f64(p + 8)};
    }
    return ComplexField(g, std::move(samples));
}

void write_profile(const std::filesystem::path& path, const IndexProfile& profile)
{
    std::string out = header_bytes("OAMIDX01", profile.grid());
    out.reserve(out.size() + profile.grid().size() * 8);
    for (double v : profile.n())
        put_f64(out, v);
    write_binary_atomic(path, out);
}

IndexProfile read_profile(const std::filesystem::path& path)
{
    const std::string bytes = read_all(path);
    std::size_t off = 0;
    const Grid g = parse_header(bytes, "OAMIDX01", off);
    if (bytes.size() != off + g.size() * 8)
        throw std::runtime_error("OAMIDX01: truncated payload in " + path.string());
    std::vector<double> n(g.size());
    for (std::size_t i = 0; i < n.size(); ++i)
        n[i] = get_f64(bytes.data() + off + i * 8);
    const auto [lo, hi] = std::minmax_element(n.begin(), n.end());
    const double n0 = *lo;
    const double dn = *hi - *lo;
    return IndexProfile(g, std::move(n), n0, dn);
}

void write_phase_pgm(const std::filesystem::path& path, const Grid& grid,
                     std::span<const double> phase)
{
    std::ostringstream head;
    head << "P5\n" << grid.nx << " " << grid.ny << "\n255\n";
    std::string out = head.str();
    out.reserve(out.size() + grid.size());
    const double scale = 255.0 / (2.0 * std::numbers::pi);
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            const double v = phase[grid.index(i, j)];
            const int q = std::clamp(static_cast<int>(v * scale), 0, 255);
            out.push_back(static_cast<char>(q));
        }
    write_binary_atomic(path, out);
}

namespace {

void write_pgm16(const std::filesystem::path& path, const Grid& grid,
                 std::span<const double> values, double max_value)
{
    std::ostringstream head;
    head << "P5\n" << grid.nx << " " << grid.ny << "\n65535\n";
    std::string out = head.str();
    out.reserve(out.size() + grid.size() * 2);
    const double scale = max_value > 0.0 ? 65535.0 / max_value : 0.0;
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            const double v = values[grid.index(i, j)] * scale;
            const int q = std::clamp(static_cast<int>(std::lround(v)), 0, 65535);
            // PGM 16-bit samples are big-endian
            out.push_back(static_cast<char>((q >> 8) & 0xff));
            out.push_back(static_cast<char>(q & 0xff));
        }
    write_binary_atomic(path, out);
}

} // namespace

void write_intensity_pgm(const std::filesystem::path& path, const RealField& image)
{
    double peak = 0.0;
    for (double v : image.samples())
        peak = std::max(peak, v);
    write_pgm16(path, image.grid(), image.samples(), peak);
    write_text(path.string() + ".norm.txt", "max_value = " + format_double(peak) + "\n");
}

void write_count_pgm(const std::filesystem::path& path, const CountImage& image)
{
    std::vector<double> values(image.counts.begin(), image.counts.end());
    double peak = 0.0;
    for (double v : values)
        peak = std::max(peak, v);
    write_pgm16(path, image.grid, values, peak);
    std::ostringstream meta;
    meta << "max_count = " << static_cast<std::uint64_t>(peak) << "\n"
         << "n_photons = " << image.n_photons << "\n"
         << "dark_rate = " << format_double(image.dark_rate) << "\n"
         << "dark_total = " << image.dark_total << "\n"
         << "seed = " << image.seed << "\n";
    write_text(path.string() + ".meta.txt", meta.str());
}

void write_text(const std::filesystem::path& path, const std::string& content)
{
    write_binary_atomic(path, content);
}

std::string format_double(double value)
{
    std::ostringstream ss;
    ss.precision(17);
    ss << value;
    return ss.str();
}

} // namespace oam
