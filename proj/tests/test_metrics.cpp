#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "topowave/error.hpp"
#include "topowave/metrics.hpp"

using namespace topowave;

namespace {

ImageGrid checkerboard(std::size_t n) {
    ImageGrid img(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) img(r, c) = (r + c) % 2 ? 1.0 : 0.0;
    }
    return img;
}

}  // namespace

TEST_CASE("PSNR") {
    const auto a = random_image(12, 12, 1);
    CHECK(std::isinf(psnr(a, a)));
    CHECK(psnr(a, a) > 0);
    CHECK(psnr_from_mse(0.01, 1.0) == 20.0);
    CHECK(psnr_from_mse(0.0001, 1.0) == doctest::Approx(40.0).epsilon(1e-14));
    CHECK(psnr_from_mse(0.01, 2.0) == doctest::Approx(20.0 + 20.0 * std::log10(2.0)).epsilon(1e-14));

    ImageGrid lo(4, 4, 0.25), hi(4, 4, 0.75);
    CHECK(psnr(lo, hi) == doctest::Approx(10.0 * std::log10(4.0)).epsilon(1e-14));
    CHECK_THROWS_AS(psnr(lo, ImageGrid(4, 5)), DimensionMismatch);
    CHECK_THROWS_AS(psnr_from_mse(0.1, 0.0), PreconditionViolation);
}

TEST_CASE("SSIM basics") {
    const auto a = random_image(24, 20, 2);
    CHECK(ssim(a, a) == 1.0);
    const auto b = random_image(24, 20, 3);
    CHECK(ssim(a, b) == ssim(b, a));
    CHECK(ssim(a, b) < 1.0);
    CHECK(ssim(a, b) >= -1.0);
    CHECK_THROWS_AS(ssim(ImageGrid(10, 20), ImageGrid(10, 20)), ImageTooSmall);
    CHECK_THROWS_AS(ssim(a, ImageGrid(24, 21)), DimensionMismatch);
}

TEST_CASE("SSIM of an inverted checkerboard is negative") {
    const auto x = checkerboard(16);
    ImageGrid inv = x;
    for (auto& v : inv.data()) v = 1.0 - v;
    const double s = ssim(x, inv);
    CHECK(s < 0.0);
    CHECK(s == doctest::Approx(oracle::scalar_ssim(x, inv)).epsilon(1e-9));
}

TEST_CASE("SSIM agrees with the windowed scalar evaluation") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto a = random_image(15, 17, seed);
        const auto b = add_gaussian_noise(a, 0.1, seed + 9);
        CHECK(ssim(a, b) == doctest::Approx(oracle::scalar_ssim(a, b)).epsilon(1e-9));
    }
}

TEST_CASE("PSNR falls as noise grows") {
    const auto clean = make_test_pattern(64);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        double last = std::numeric_limits<double>::infinity();
        for (double sigma : {0.01, 0.03, 0.06, 0.1, 0.2}) {
            const double p = psnr(add_gaussian_noise(clean, sigma, seed), clean);
            CHECK(p < last);
            last = p;
        }
    }
}

TEST_CASE("metric report JSON") {
    CHECK(metric_report_to_json({std::numeric_limits<double>::infinity(), 1.0}) == "{\"psnr_db\":\"inf\",\"ssim\":1}");
    CHECK(metric_report_to_json({20.0, 0.5}) == "{\"psnr_db\":20,\"ssim\":0.5}");
}
