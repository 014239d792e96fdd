#include "topowave/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include <png.h>

#include "topowave/error.hpp"
#include "topowave/io.hpp"

namespace topowave {

ImageGrid::ImageGrid(std::size_t height, std::size_t width, double fill)
    : ImageGrid(height, width, std::vector<double>(height * width, fill)) {}

ImageGrid::ImageGrid(std::size_t height, std::size_t width, std::vector<double> data)
    : height_(height), width_(width), data_(std::move(data)) {
    if (height_ == 0 || width_ == 0) throw PreconditionViolation("image dimensions must be positive");
    if (data_.size() != height_ * width_) {
        throw DimensionMismatch("pixel buffer holds " + std::to_string(data_.size()) + " values, expected " +
                                std::to_string(height_ * width_));
    }
}

bool ImageGrid::in_unit_range() const {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return v >= 0.0 && v <= 1.0; });
}

double luma(double r, double g, double b) { return 0.299 * r + 0.587 * g + 0.114 * b; }

ImageFormat format_from_extension(const std::filesystem::path& path) {
    auto ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".pgm" || ext == ".pnm" || ext == ".ppm") return ImageFormat::Pgm;
    if (ext == ".png") return ImageFormat::Png;
    throw MalformedFormat("cannot infer image format from extension of " + path.string());
}

namespace {

// Netpbm header tokenizer: whitespace separated, '#' starts a comment.
class PnmReader {
public:
    explicit PnmReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    unsigned long next_uint() {
        skip_space_and_comments();
        if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) throw MalformedFormat("truncated or invalid PNM header");
        unsigned long v = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            v = v * 10 + (bytes_[pos_++] - '0');
            if (v > 0xFFFFFFFFul) throw MalformedFormat("PNM header value overflows");
        }
        return v;
    }

    // Exactly one whitespace byte separates the header from a binary raster.
    void skip_single_space() {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) throw MalformedFormat("truncated PNM header");
        ++pos_;
    }

    std::span<const std::uint8_t> rest() const { return bytes_.subspan(pos_); }

private:
    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 2;
};

ImageGrid decode_pnm(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P') throw MalformedFormat("bad PNM magic");
    const char kind = static_cast<char>(bytes[1]);
    if (kind != '2' && kind != '3' && kind != '5' && kind != '6') throw MalformedFormat("unsupported PNM magic");
    const bool ascii = kind == '2' || kind == '3';
    const std::size_t channels = (kind == '3' || kind == '6') ? 3 : 1;

    PnmReader reader(bytes);
    const auto width = reader.next_uint();
    const auto height = reader.next_uint();
    const auto maxval = reader.next_uint();
    if (width == 0 || height == 0) throw MalformedFormat("PNM with zero dimension");
    if (maxval != 255 && maxval != 65535) {
        throw UnsupportedBitDepth("PNM maxval " + std::to_string(maxval) + " (expected 255 or 65535)");
    }
    const double scale = static_cast<double>(maxval);
    const std::size_t samples = width * height * channels;

    std::vector<double> raw(samples);
    if (ascii) {
        for (auto& s : raw) {
            const auto v = reader.next_uint();
            if (v > maxval) throw MalformedFormat("PNM sample exceeds maxval");
            s = static_cast<double>(v) / scale;
        }
    } else {
        reader.skip_single_space();
        const auto payload = reader.rest();
        const std::size_t bytes_per = maxval == 255 ? 1 : 2;
        if (payload.size() < samples * bytes_per) throw MalformedFormat("truncated PNM raster");
        for (std::size_t i = 0; i < samples; ++i) {
            unsigned v = bytes_per == 1 ? payload[i] : (unsigned(payload[2 * i]) << 8) | payload[2 * i + 1];
            raw[i] = static_cast<double>(v) / scale;
        }
    }

    if (channels == 1) return ImageGrid(height, width, std::move(raw));
    std::vector<double> gray(width * height);
    for (std::size_t i = 0; i < gray.size(); ++i) gray[i] = luma(raw[3 * i], raw[3 * i + 1], raw[3 * i + 2]);
    return ImageGrid(height, width, std::move(gray));
}

ImageGrid decode_png(std::span<const std::uint8_t> bytes) {
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
        throw MalformedFormat(std::string("PNG: ") + image.message);
    }
    if (image.format & PNG_FORMAT_FLAG_LINEAR) {
        png_image_free(&image);
        throw UnsupportedBitDepth("only 8-bit PNG is supported");
    }
    const bool color = image.format & PNG_FORMAT_FLAG_COLOR;
    image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
        std::string msg = image.message;
        png_image_free(&image);
        throw MalformedFormat("PNG: " + msg);
    }
    const std::size_t h = image.height, w = image.width;
    std::vector<double> data(h * w);
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (color) {
            data[i] = luma(buffer[3 * i] / 255.0, buffer[3 * i + 1] / 255.0, buffer[3 * i + 2] / 255.0);
        } else {
            data[i] = buffer[i] / 255.0;
        }
    }
    return ImageGrid(h, w, std::move(data));
}

unsigned quantize(double v, unsigned maxval) {
    const double c = std::clamp(v, 0.0, 1.0);
    return static_cast<unsigned>(std::lround(c * maxval));
}

std::string encode_pgm(const ImageGrid& img, int bit_depth) {
    const unsigned maxval = bit_depth == 8 ? 255u : 65535u;
    std::string out = "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n" +
                      std::to_string(maxval) + "\n";
    out.reserve(out.size() + img.size() * (bit_depth / 8));
    for (double v : img.data()) {
        const unsigned q = quantize(v, maxval);
        if (bit_depth == 16) out.push_back(static_cast<char>(q >> 8));
        out.push_back(static_cast<char>(q & 0xFF));
    }
    return out;
}

std::string encode_png(const ImageGrid& img) {
    std::vector<std::uint8_t> pixels(img.size());
    for (std::size_t i = 0; i < img.size(); ++i) pixels[i] = static_cast<std::uint8_t>(quantize(img[i], 255));

    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(img.width());
    image.height = static_cast<png_uint_32>(img.height());
    image.format = PNG_FORMAT_GRAY;
    png_alloc_size_t size = 0;
    if (!png_image_write_get_memory_size(image, size, 0, pixels.data(), 0, nullptr)) {
        throw IoFailure(std::string("PNG encode: ") + image.message);
    }
    std::string out(size, '\0');
    if (!png_image_write_to_memory(&image, out.data(), &size, 0, pixels.data(), 0, nullptr)) {
        throw IoFailure(std::string("PNG encode: ") + image.message);
    }
    out.resize(size);
    return out;
}

std::span<const std::uint8_t> as_bytes(const std::string& s) {
    return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

}  // namespace

ImageGrid decode_pgm(std::span<const std::uint8_t> bytes) { return decode_pnm(bytes); }

ImageGrid load_image(const std::filesystem::path& path, ImageFormat format) {
    const std::string contents = read_file(path);
    return format == ImageFormat::Pgm ? decode_pnm(as_bytes(contents)) : decode_png(as_bytes(contents));
}

ImageGrid load_image(const std::filesystem::path& path) { return load_image(path, format_from_extension(path)); }

void save_image(const ImageGrid& img, const std::filesystem::path& path, ImageFormat format, int bit_depth) {
    if (bit_depth != 8 && bit_depth != 16) throw UnsupportedBitDepth("bit depth must be 8 or 16");
    if (format == ImageFormat::Png && bit_depth != 8) throw UnsupportedBitDepth("PNG output is 8-bit only");
    write_file_atomic(path, format == ImageFormat::Pgm ? encode_pgm(img, bit_depth) : encode_png(img));
}

void save_image(const ImageGrid& img, const std::filesystem::path& path, int bit_depth) {
    save_image(img, path, format_from_extension(path), bit_depth);
}

ImageGrid add_gaussian_noise(const ImageGrid& img, double sigma, std::uint64_t seed) {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw PreconditionViolation("sigma must be finite and >= 0");
    if (sigma == 0.0) return img;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, sigma);
    ImageGrid out = img;
    for (auto& v : out.data()) v = std::clamp(v + noise(rng), 0.0, 1.0);
    return out;
}

ImageGrid extract_patch(const ImageGrid& img, PixelIndex top_left, std::size_t size) {
    if (size == 0) throw PreconditionViolation("patch size must be positive");
    if (top_left.row + size > img.height() || top_left.col + size > img.width()) {
        throw OutOfBounds("patch of size " + std::to_string(size) + " at (" + std::to_string(top_left.row) + "," +
                          std::to_string(top_left.col) + ") exceeds " + std::to_string(img.height()) + "x" +
                          std::to_string(img.width()));
    }
    ImageGrid out(size, size);
    for (std::size_t r = 0; r < size; ++r) {
        for (std::size_t c = 0; c < size; ++c) out(r, c) = img(top_left.row + r, top_left.col + c);
    }
    return out;
}

ImageGrid make_test_pattern(std::size_t size) {
    if (size < 8) throw ImageTooSmall("test pattern needs size >= 8");
    ImageGrid img(size, size, 0.15);
    const double n = static_cast<double>(size);
    const double cy = 0.72 * n, cx = 0.28 * n, radius = 0.16 * n;
    for (std::size_t r = 0; r < size; ++r) {
        for (std::size_t c = 0; c < size; ++c) {
            const double y = static_cast<double>(r), x = static_cast<double>(c);
            if (r >= size / 8 && r < size / 2 && c >= size / 8 && c < size / 2) img(r, c) = 0.75;
            if ((y - cy) * (y - cy) + (x - cx) * (x - cx) <= radius * radius) img(r, c) = 0.45;
            if (r >= size / 2 && c >= size / 2) {
                img(r, c) = 0.55 + 0.25 * std::sin(2.0 * std::numbers::pi * x / 6.0) *
                                       std::cos(2.0 * std::numbers::pi * y / 8.0);
            }
            if (r < size / 2 && c >= (5 * size) / 8 && c < (3 * size) / 4) img(r, c) = 0.9;
        }
    }
    return img;
}

ImageGrid random_image(std::size_t height, std::size_t width, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    ImageGrid img(height, width);
    for (auto& v : img.data()) v = unit(rng);
    return img;
}

}  // namespace topowave
