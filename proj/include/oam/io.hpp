#pragma once

#include <filesystem>
#include <string>

#include "oam/field.hpp"
#include "oam/quantum.hpp"
#include "oam/waveguide.hpp"

namespace oam {

/// OAMFLD01: "OAMFLD01" magic, LE u32 nx, u32 ny, f64 dx, dy, wavelength,
/// then nx*ny (re, im) f64 pairs, row-major x fastest. Bit-exact round trip.
void write_field(const std::filesystem::path& path, const ComplexField& field);
ComplexField read_field(const std::filesystem::path& path);

/// OAMIDX01: same header followed by nx*ny f64 index samples. On read the
/// background and contrast are recovered from the sample extrema.
void write_profile(const std::filesystem::path& path, const IndexProfile& profile);
IndexProfile read_profile(const std::filesystem::path& path);

/// 8-bit binary PGM (P5, maxval 255); values scaled from [0, 2 pi).
void write_phase_pgm(const std::filesystem::path& path, const Grid& grid,
                     std::span<const double> phase);

/// 16-bit binary PGM (P5, maxval 65535), max-normalized; the normalization
/// constant goes to a ".norm.txt" sidecar.
void write_intensity_pgm(const std::filesystem::path& path, const RealField& image);

/// 16-bit PGM of photon counts plus a sidecar with budget, dark rate, seed.
void write_count_pgm(const std::filesystem::path& path, const CountImage& image);

/// Write text atomically (temp file + rename).
void write_text(const std::filesystem::path& path, const std::string& content);

std::string format_double(double value);

} // namespace oam
