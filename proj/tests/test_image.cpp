#include <cmath>
#include <fstream>
#include <numeric>
#include <string>
#include <vector>

#include <png.h>

#include "doctest.h"
#include "test_support.hpp"
#include "topowave/error.hpp"
#include "topowave/image.hpp"
#include "topowave/io.hpp"

using namespace topowave;
using topowave::testing::TempDir;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string& s) { return {s.begin(), s.end()}; }

void write_bytes(const std::filesystem::path& p, const std::string& data) {
    std::ofstream out(p, std::ios::binary);
    out << data;
}

void write_png(const std::filesystem::path& p, std::uint32_t w, std::uint32_t h, std::uint32_t format,
               const void* pixels) {
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    image.width = w;
    image.height = h;
    image.format = format;
    REQUIRE(png_image_write_to_file(&image, p.c_str(), 0, pixels, 0, nullptr));
}

}  // namespace

TEST_CASE("ImageGrid rejects inconsistent buffers") {
    CHECK_THROWS_AS(ImageGrid(2, 2, std::vector<double>(3)), DimensionMismatch);
    CHECK_THROWS_AS(ImageGrid(0, 2), PreconditionViolation);
    ImageGrid img(2, 3, 0.25);
    CHECK(img.pixel(4) == PixelIndex{1, 1});
    CHECK(img.linear({1, 2}) == 5);
    CHECK(img.in_unit_range());
}

TEST_CASE("binary PGM normalizes by maxval") {
    std::string data = "P5\n2 2\n255\n";
    data += std::string{char(0), char(255), char(128), char(64)};
    const auto img = decode_pgm(bytes_of(data));
    REQUIRE(img.height() == 2);
    CHECK(img[0] == 0.0);
    CHECK(img[1] == 1.0);
    CHECK(img[2] == 128.0 / 255.0);
    CHECK(img[3] == 64.0 / 255.0);
}

TEST_CASE("ASCII PGM with comments") {
    const auto img = decode_pgm(bytes_of("P2\n# a comment\n3 1\n# another\n65535\n0 65535\n32768\n"));
    REQUIRE(img.width() == 3);
    CHECK(img[1] == 1.0);
    CHECK(img[2] == 32768.0 / 65535.0);
}

TEST_CASE("16-bit binary PGM is big-endian") {
    std::string data = "P5 1 1 65535\n";
    data += std::string{char(0x12), char(0x34)};
    CHECK(decode_pgm(bytes_of(data))[0] == 0x1234 / 65535.0);
}

TEST_CASE("PPM colour is converted to luma") {
    std::string data = "P6\n1 1\n255\n";
    data += std::string{char(255), char(0), char(0)};
    CHECK(decode_pgm(bytes_of(data))[0] == doctest::Approx(0.299).epsilon(1e-15));
}

TEST_CASE("malformed PGM inputs") {
    CHECK_THROWS_AS(decode_pgm(bytes_of("P5\n2 ")), MalformedFormat);
    CHECK_THROWS_AS(decode_pgm(bytes_of("P5\n2 2\n255\n\x01\x02")), MalformedFormat);
    CHECK_THROWS_AS(decode_pgm(bytes_of("XX\n2 2\n255\n")), MalformedFormat);
    CHECK_THROWS_AS(decode_pgm(bytes_of("P2\n1 1\n255\n300\n")), MalformedFormat);
    CHECK_THROWS_AS(decode_pgm(bytes_of("P5\n1 1\n1023\n\x01\x02")), UnsupportedBitDepth);
}

TEST_CASE("missing file") {
    CHECK_THROWS_AS(load_image("/nonexistent/definitely/missing.pgm"), FileNotFound);
    CHECK_THROWS_AS(format_from_extension("image.tiff"), MalformedFormat);
}

TEST_CASE("PNG RGB red pixel is 0.299") {
    TempDir dir;
    const std::uint8_t rgb[3] = {255, 0, 0};
    write_png(dir / "red.png", 1, 1, PNG_FORMAT_RGB, rgb);
    CHECK(load_image(dir / "red.png")[0] == doctest::Approx(0.299).epsilon(1e-15));
}

TEST_CASE("PNG grayscale and unsupported depth") {
    TempDir dir;
    const std::uint8_t gray[4] = {0, 255, 51, 102};
    write_png(dir / "g.png", 2, 2, PNG_FORMAT_GRAY, gray);
    const auto img = load_image(dir / "g.png");
    CHECK(img[1] == 1.0);
    CHECK(img[2] == 51.0 / 255.0);

    const std::uint16_t deep[1] = {4000};
    write_png(dir / "deep.png", 1, 1, PNG_FORMAT_LINEAR_Y, deep);
    CHECK_THROWS_AS(load_image(dir / "deep.png"), UnsupportedBitDepth);

    write_bytes(dir / "junk.png", "not a png at all");
    CHECK_THROWS_AS(load_image(dir / "junk.png"), MalformedFormat);
}

TEST_CASE("save/load round trip stays within one quantization step") {
    TempDir dir;
    const auto img = random_image(13, 7, 5);
    for (auto [name, depth, step] : {std::tuple{"a.pgm", 8, 1.0 / 255}, std::tuple{"b.pgm", 16, 1.0 / 65535},
                                     std::tuple{"c.png", 8, 1.0 / 255}}) {
        save_image(img, dir / name, depth);
        const auto back = load_image(dir / name);
        REQUIRE(back.same_shape(img));
        double worst = 0.0;
        for (std::size_t i = 0; i < img.size(); ++i) worst = std::max(worst, std::abs(back[i] - img[i]));
        CHECK(worst <= step);
    }
}

TEST_CASE("constant 0.5 stores byte 128") {
    TempDir dir;
    save_image(ImageGrid(3, 4, 0.5), dir / "half.pgm");
    const auto bytes = read_file(dir / "half.pgm");
    const std::string header = "P5\n4 3\n255\n";
    REQUIRE(bytes.size() == header.size() + 12);
    CHECK(bytes.substr(0, header.size()) == header);
    for (std::size_t i = header.size(); i < bytes.size(); ++i) CHECK(static_cast<unsigned char>(bytes[i]) == 128);
}

TEST_CASE("save into a missing directory fails cleanly") {
    CHECK_THROWS_AS(save_image(ImageGrid(2, 2), "/nonexistent-dir-topowave/x.pgm"), IoFailure);
    CHECK_THROWS_AS(save_image(ImageGrid(2, 2), "/tmp/x.png", ImageFormat::Png, 16), UnsupportedBitDepth);
}

TEST_CASE("gaussian noise") {
    const ImageGrid flat(256, 256, 0.5);
    CHECK(add_gaussian_noise(flat, 0.0, 1) == flat);
    CHECK(add_gaussian_noise(flat, 0.1, 7) == add_gaussian_noise(flat, 0.1, 7));
    CHECK_FALSE(add_gaussian_noise(flat, 0.1, 7) == add_gaussian_noise(flat, 0.1, 8));
    CHECK_THROWS_AS(add_gaussian_noise(flat, -0.1, 1), PreconditionViolation);

    const auto noisy = add_gaussian_noise(flat, 0.1, 42);
    CHECK(noisy.in_unit_range());
    const auto d = noisy.data();
    const double mean = std::accumulate(d.begin(), d.end(), 0.0) / d.size();
    double var = 0.0;
    for (double v : d) var += (v - mean) * (v - mean);
    const double sd = std::sqrt(var / (d.size() - 1));
    CHECK(sd >= 0.095);
    CHECK(sd <= 0.105);
}

TEST_CASE("extract_patch") {
    const auto img = random_image(512, 512, 3);
    const auto quad = extract_patch(img, {0, 0}, 256);
    CHECK(quad.height() == 256);
    CHECK(quad(255, 255) == img(255, 255));
    CHECK(quad(17, 200) == img(17, 200));

    const auto small = random_image(5, 5, 4);
    CHECK(extract_patch(small, {0, 0}, 5) == small);
    CHECK_THROWS_AS(extract_patch(small, {0, 1}, 5), OutOfBounds);
    CHECK_THROWS_AS(extract_patch(small, {3, 0}, 3), OutOfBounds);

    const auto rect = random_image(4, 9, 6);
    const auto sq = extract_patch(rect, {0, 0}, 4);
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) CHECK(sq(r, c) == rect(r, c));
    }
}

TEST_CASE("test pattern is in range and not flat") {
    const auto img = make_test_pattern(64);
    CHECK(img.in_unit_range());
    CHECK(img(0, 0) != img(20, 20));
    CHECK_THROWS_AS(make_test_pattern(4), ImageTooSmall);
}
