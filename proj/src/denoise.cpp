#include "topowave/denoise.hpp"

#include <algorithm>
#include <cmath>

#include "topowave/error.hpp"

namespace topowave {

void DenoiseConfig::validate() const {
    if (!std::isfinite(step_size) || step_size <= 0.0) throw PreconditionViolation("step size must be finite and > 0");
    if (iterations < 0 || iterations > kMaxDenoiseIterations) {
        throw PreconditionViolation("iterations must be in [0, 100000]");
    }
    if (max_halvings < 0) throw PreconditionViolation("max_halvings must be >= 0");
    loss.validate();
}

DenoiseResult denoise(const ImageGrid& noisy, const ImageGrid& clean, const DenoiseConfig& cfg) {
    cfg.validate();
    if (!noisy.same_shape(clean)) throw DimensionMismatch("noisy and clean images differ in size");

    DenoiseResult result;
    result.image = noisy;
    auto current = wvcomb_loss(result.image, clean, cfg.loss);
    result.loss_trace.push_back(current.total);

    ImageGrid trial(noisy.height(), noisy.width());
    for (int it = 0; it < cfg.iterations; ++it) {
        double step = cfg.step_size;
        double accepted = 0.0;
        for (int h = 0; h <= cfg.max_halvings; ++h, step *= 0.5) {
            for (std::size_t i = 0; i < trial.size(); ++i) {
                trial[i] = std::clamp(result.image[i] - step * current.gradient[i], 0.0, 1.0);
            }
            auto next = wvcomb_loss(trial, clean, cfg.loss);
            if (next.total <= current.total) {
                result.image = trial;
                current = std::move(next);
                accepted = step;
                break;
            }
        }
        result.loss_trace.push_back(current.total);
        result.step_trace.push_back(accepted);
    }
    return result;
}

}  // namespace topowave
