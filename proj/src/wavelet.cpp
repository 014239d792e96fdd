#include "topowave/wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "topowave/error.hpp"

namespace topowave {

ImageGrid symmetric_pad_even(const ImageGrid& img) {
    const std::size_t h = img.height() + img.height() % 2, w = img.width() + img.width() % 2;
    if (h == img.height() && w == img.width()) return img;
    ImageGrid out(h, w);
    for (std::size_t r = 0; r < h; ++r) {
        const std::size_t sr = std::min(r, img.height() - 1);
        for (std::size_t c = 0; c < w; ++c) out(r, c) = img(sr, std::min(c, img.width() - 1));
    }
    return out;
}

WaveletBands dwt_haar_forward(const ImageGrid& img) {
    const ImageGrid x = symmetric_pad_even(img);
    const std::size_t bh = x.height() / 2, bw = x.width() / 2;
    WaveletBands bands{ImageGrid(bh, bw), ImageGrid(bh, bw), ImageGrid(bh, bw), ImageGrid(bh, bw),
                       img.height(), img.width()};
    for (std::size_t r = 0; r < bh; ++r) {
        for (std::size_t c = 0; c < bw; ++c) {
            const double a = x(2 * r, 2 * c), b = x(2 * r, 2 * c + 1);
            const double cc = x(2 * r + 1, 2 * c), d = x(2 * r + 1, 2 * c + 1);
            bands.ll(r, c) = (a + b + cc + d) / 2.0;
            bands.lh(r, c) = (a - b + cc - d) / 2.0;
            bands.hl(r, c) = (a + b - cc - d) / 2.0;
            bands.hh(r, c) = (a - b - cc + d) / 2.0;
        }
    }
    return bands;
}

ImageGrid dwt_haar_inverse(const WaveletBands& bands) {
    const std::size_t bh = bands.ll.height(), bw = bands.ll.width();
    for (const ImageGrid* band : {&bands.lh, &bands.hl, &bands.hh}) {
        if (band->height() != bh || band->width() != bw) throw DimensionMismatch("wavelet bands differ in shape");
    }
    if (bands.source_height == 0 || bands.source_width == 0 || (bands.source_height + 1) / 2 != bh ||
        (bands.source_width + 1) / 2 != bw) {
        throw DimensionMismatch("wavelet bands do not match source size " + std::to_string(bands.source_height) +
                                "x" + std::to_string(bands.source_width));
    }
    ImageGrid out(bands.source_height, bands.source_width);
    auto put = [&out](std::size_t r, std::size_t c, double v) {
        if (r < out.height() && c < out.width()) out(r, c) = v;
    };
    for (std::size_t r = 0; r < bh; ++r) {
        for (std::size_t c = 0; c < bw; ++c) {
            const double ll = bands.ll(r, c), lh = bands.lh(r, c), hl = bands.hl(r, c), hh = bands.hh(r, c);
            put(2 * r, 2 * c, (ll + lh + hl + hh) / 2.0);
            put(2 * r, 2 * c + 1, (ll - lh + hl - hh) / 2.0);
            put(2 * r + 1, 2 * c, (ll + lh - hl - hh) / 2.0);
            put(2 * r + 1, 2 * c + 1, (ll - lh - hl + hh) / 2.0);
        }
    }
    return out;
}

ImageGrid texture_mask(const ImageGrid& img) {
    if (img.height() < 4 || img.width() < 4) {
        throw ImageTooSmall("texture mask needs at least 4x4, got " + std::to_string(img.height()) + "x" +
                            std::to_string(img.width()));
    }
    const auto level1 = dwt_haar_forward(img);
    const auto level2 = dwt_haar_forward(level1.ll);

    const auto& lh = level2.lh;
    ImageGrid coarse(lh.height(), lh.width());
    for (std::size_t i = 0; i < coarse.size(); ++i) {
        coarse[i] = (std::abs(level2.lh[i]) + std::abs(level2.hl[i]) + std::abs(level2.hh[i])) / 3.0;
    }

    ImageGrid mask(img.height(), img.width());
    for (std::size_t r = 0; r < mask.height(); ++r) {
        for (std::size_t c = 0; c < mask.width(); ++c) mask(r, c) = coarse(r / 4, c / 4);
    }

    const auto [lo, hi] = std::minmax_element(mask.data().begin(), mask.data().end());
    const double low = *lo, range = *hi - *lo;
    if (range < 1e-12) return ImageGrid(img.height(), img.width(), 0.0);
    for (auto& v : mask.data()) v = (v - low) / range;
    return mask;
}

}  // namespace topowave
