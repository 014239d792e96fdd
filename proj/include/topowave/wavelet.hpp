#pragma once

#include <cstddef>

#include "topowave/image.hpp"

namespace topowave {

/// One level of the orthonormal 2D Haar transform. Each band is
/// ceil(H/2) x ceil(W/2); source_height/width remember the unpadded input so
/// the inverse can crop.
///   lh: horizontal detail (a - b + c - d) / 2
///   hl: vertical detail   (a + b - c - d) / 2
///   hh: diagonal detail   (a - b - c + d) / 2
struct WaveletBands {
    ImageGrid ll;
    ImageGrid lh;
    ImageGrid hl;
    ImageGrid hh;
    std::size_t source_height;
    std::size_t source_width;
};

/// Odd sizes are padded by repeating the last row/column (whole-sample
/// symmetric extension by one).
ImageGrid symmetric_pad_even(const ImageGrid& img);

WaveletBands dwt_haar_forward(const ImageGrid& img);
ImageGrid dwt_haar_inverse(const WaveletBands& bands);

/// Two-level Haar texture weights in [0,1], same shape as img. Requires
/// H, W >= 4.
ImageGrid texture_mask(const ImageGrid& img);

}  // namespace topowave
