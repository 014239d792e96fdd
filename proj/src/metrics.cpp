#include "topowave/metrics.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "topowave/error.hpp"
#include "topowave/io.hpp"

namespace topowave {

namespace {

constexpr int kWindow = 11;
constexpr double kSigma = 1.5;
constexpr double kC1 = (0.01 * 1.0) * (0.01 * 1.0);
constexpr double kC2 = (0.03 * 1.0) * (0.03 * 1.0);

void require_same_shape(const ImageGrid& a, const ImageGrid& b) {
    if (!a.same_shape(b)) throw DimensionMismatch("metric inputs differ in size");
}

std::array<double, kWindow> gaussian_taps() {
    std::array<double, kWindow> taps{};
    double sum = 0.0;
    for (int i = 0; i < kWindow; ++i) {
        const double x = i - kWindow / 2;
        taps[i] = std::exp(-(x * x) / (2.0 * kSigma * kSigma));
        sum += taps[i];
    }
    for (auto& t : taps) t /= sum;
    return taps;
}

// Separable Gaussian filter, valid region only.
ImageGrid filter_valid(const ImageGrid& img, const std::array<double, kWindow>& taps) {
    const std::size_t oh = img.height() - kWindow + 1, ow = img.width() - kWindow + 1;
    ImageGrid rows(img.height(), ow);
    for (std::size_t r = 0; r < img.height(); ++r) {
        for (std::size_t c = 0; c < ow; ++c) {
            double acc = 0.0;
            for (int k = 0; k < kWindow; ++k) acc += taps[k] * img(r, c + k);
            rows(r, c) = acc;
        }
    }
    ImageGrid out(oh, ow);
    for (std::size_t r = 0; r < oh; ++r) {
        for (std::size_t c = 0; c < ow; ++c) {
            double acc = 0.0;
            for (int k = 0; k < kWindow; ++k) acc += taps[k] * rows(r + k, c);
            out(r, c) = acc;
        }
    }
    return out;
}

ImageGrid product(const ImageGrid& a, const ImageGrid& b) {
    ImageGrid out(a.height(), a.width());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * b[i];
    return out;
}

}  // namespace

double psnr_from_mse(double mse, double peak) {
    if (!(peak > 0.0)) throw PreconditionViolation("PSNR peak must be positive");
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(peak * peak / mse);
}

double mean_squared_error(const ImageGrid& a, const ImageGrid& b) {
    require_same_shape(a, b);
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return sum / static_cast<double>(a.size());
}

double psnr(const ImageGrid& a, const ImageGrid& b, double peak) { return psnr_from_mse(mean_squared_error(a, b), peak); }

double ssim(const ImageGrid& a, const ImageGrid& b) {
    require_same_shape(a, b);
    if (a.height() < kWindow || a.width() < kWindow) throw ImageTooSmall("SSIM needs at least 11x11");
    const auto taps = gaussian_taps();
    const auto mu_a = filter_valid(a, taps), mu_b = filter_valid(b, taps);
    const auto e_aa = filter_valid(product(a, a), taps);
    const auto e_bb = filter_valid(product(b, b), taps);
    const auto e_ab = filter_valid(product(a, b), taps);

    double sum = 0.0;
    for (std::size_t i = 0; i < mu_a.size(); ++i) {
        const double ma = mu_a[i], mb = mu_b[i];
        const double var_a = e_aa[i] - ma * ma, var_b = e_bb[i] - mb * mb, cov = e_ab[i] - ma * mb;
        const double num = (2.0 * ma * mb + kC1) * (2.0 * cov + kC2);
        const double den = (ma * ma + mb * mb + kC1) * (var_a + var_b + kC2);
        sum += num / den;
    }
    return sum / static_cast<double>(mu_a.size());
}

MetricReport compute_metrics(const ImageGrid& a, const ImageGrid& b) { return {psnr(a, b), ssim(a, b)}; }

std::string metric_report_to_json(const MetricReport& report) {
    const std::string psnr_text = std::isinf(report.psnr_db) ? "\"inf\"" : format_real(report.psnr_db);
    return "{\"psnr_db\":" + psnr_text + ",\"ssim\":" + format_real(report.ssim) + "}";
}

}  // namespace topowave
