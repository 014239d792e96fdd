#pragma once

#include <cstdint>
#include <vector>

#include "topowave/image.hpp"
#include "topowave/loss.hpp"

namespace topowave {

inline constexpr int kMaxDenoiseIterations = 100000;

struct DenoiseConfig {
    double step_size = 0.05;
    int iterations = 200;
    LossConfig loss;
    std::uint64_t seed = 0;
    int max_halvings = 20;

    void validate() const;
};

struct DenoiseResult {
    ImageGrid image{1, 1};
    /// loss_trace[0] is the loss of the start image, loss_trace[k] the loss
    /// after iteration k. Never increases.
    std::vector<double> loss_trace;
    std::vector<double> step_trace;
};

/// Projected gradient descent on the pixels of `noisy`:
///   x <- clamp(x - step * grad L_wvcomb(x, clean), 0, 1)
/// Each iteration starts from cfg.step_size and halves the step (up to
/// max_halvings times) while the loss would increase; if no halving helps,
/// x is kept.
DenoiseResult denoise(const ImageGrid& noisy, const ImageGrid& clean, const DenoiseConfig& cfg);

}  // namespace topowave
