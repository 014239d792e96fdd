#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace topowave {

struct PixelIndex {
    std::size_t row = 0;
    std::size_t col = 0;

    friend bool operator==(const PixelIndex&, const PixelIndex&) = default;
    friend auto operator<=>(const PixelIndex&, const PixelIndex&) = default;
};

/// Row-major grid of real intensities.
///
/// Loaded and synthesized images live in [0,1]. The container itself does not
/// clamp: wavelet bands, gradient fields and finite-difference probes reuse it
/// and legitimately leave the unit interval. Use in_unit_range() to check.
class ImageGrid {
public:
    ImageGrid(std::size_t height, std::size_t width, double fill = 0.0);
    ImageGrid(std::size_t height, std::size_t width, std::vector<double> data);

    std::size_t height() const { return height_; }
    std::size_t width() const { return width_; }
    std::size_t size() const { return data_.size(); }

    double& operator()(std::size_t row, std::size_t col) { return data_[row * width_ + col]; }
    double operator()(std::size_t row, std::size_t col) const { return data_[row * width_ + col]; }
    double& operator[](std::size_t linear) { return data_[linear]; }
    double operator[](std::size_t linear) const { return data_[linear]; }

    std::span<const double> data() const { return data_; }
    std::span<double> data() { return data_; }

    PixelIndex pixel(std::size_t linear) const { return {linear / width_, linear % width_}; }
    std::size_t linear(PixelIndex p) const { return p.row * width_ + p.col; }

    bool same_shape(const ImageGrid& other) const {
        return height_ == other.height_ && width_ == other.width_;
    }
    bool in_unit_range() const;

    friend bool operator==(const ImageGrid&, const ImageGrid&) = default;

private:
    std::size_t height_;
    std::size_t width_;
    std::vector<double> data_;
};

enum class ImageFormat { Pgm, Png };

/// Picks the format from a file extension (.pgm/.pnm or .png); throws
/// MalformedFormat for anything else.
ImageFormat format_from_extension(const std::filesystem::path& path);

ImageGrid load_image(const std::filesystem::path& path, ImageFormat format);
ImageGrid load_image(const std::filesystem::path& path);

/// bit_depth is 8 or 16. PGM output is binary P5 (16-bit big-endian); PNG is
/// 8/16-bit grayscale. The file is written to a sibling temporary and renamed
/// into place, so a failed save never leaves a truncated image behind.
void save_image(const ImageGrid& img, const std::filesystem::path& path, ImageFormat format,
                int bit_depth = 8);
void save_image(const ImageGrid& img, const std::filesystem::path& path, int bit_depth = 8);

/// Parses PGM (P2 or P5) from memory. Exposed for fixtures and tests.
ImageGrid decode_pgm(std::span<const std::uint8_t> bytes);

ImageGrid add_gaussian_noise(const ImageGrid& img, double sigma, std::uint64_t seed);

ImageGrid extract_patch(const ImageGrid& img, PixelIndex top_left, std::size_t size);

/// Deterministic piecewise-constant scene with a textured quadrant, values
/// in [0,1]. Used as the standard denoising fixture.
ImageGrid make_test_pattern(std::size_t size);

/// Seeded i.i.d. uniform image in [0,1).
ImageGrid random_image(std::size_t height, std::size_t width, std::uint64_t seed);

double luma(double r, double g, double b);

}  // namespace topowave
