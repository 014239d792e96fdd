#pragma once

#include <string>

#include "topowave/image.hpp"

namespace topowave {

struct MetricReport {
    double psnr_db = 0.0;  // +inf for identical images
    double ssim = 0.0;
};

/// 10 log10(peak^2 / mse); +inf when mse == 0.
double psnr_from_mse(double mse, double peak = 1.0);
double mean_squared_error(const ImageGrid& a, const ImageGrid& b);
double psnr(const ImageGrid& a, const ImageGrid& b, double peak = 1.0);

/// Mean SSIM over all fully contained 11x11 Gaussian windows (sigma 1.5),
/// K1 = 0.01, K2 = 0.03, dynamic range 1. Needs H, W >= 11.
double ssim(const ImageGrid& a, const ImageGrid& b);

MetricReport compute_metrics(const ImageGrid& a, const ImageGrid& b);

/// PSNR infinity is written as the string "inf" (JSON has no infinity).
std::string metric_report_to_json(const MetricReport& report);

}  // namespace topowave
