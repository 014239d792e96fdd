#pragma once

#include <string>

#include "topowave/complex.hpp"
#include "topowave/image.hpp"
#include "topowave/persistence.hpp"

namespace topowave {

/// Where alpha multiplies in the combined loss. TopologicalTerm is
/// base + alpha * topo; BaseTerm is the alternative alpha * base + topo.
enum class AlphaPlacement { TopologicalTerm, BaseTerm };

struct LossConfig {
    double alpha = 0.004;
    int p_base = 1;   // 1 or 2
    int p_tpers = 1;  // >= 1
    DimSet dims{true, true};
    ComplexKind complex_kind = ComplexKind::VietorisRipsGrid;
    AlphaPlacement alpha_placement = AlphaPlacement::TopologicalTerm;

    /// Throws PreconditionViolation on a non-finite/negative alpha, p_base not
    /// in {1,2}, p_tpers < 1 or an empty dims set.
    void validate() const;
};

struct LossReport {
    double total = 0.0;
    double topo_term = 0.0;
    double base_term = 0.0;
    double tpers_output = 0.0;
    double tpers_clean = 0.0;
    ImageGrid gradient{1, 1};
};

/// Sum of (death - birth)^p, essential pairs counted with their truncated death.
double total_persistence(const PersistenceDiagram& pd, int p);

/// d TPers / d pixel through the critical-pixel attribution. Exact wherever
/// pixel values are pairwise distinct.
ImageGrid tpers_gradient(const ImageGrid& img, const PersistenceDiagram& pd, int p);

struct TopoLoss {
    double value = 0.0;
    double tpers_output = 0.0;
    double tpers_clean = 0.0;
    ImageGrid gradient{1, 1};
};

/// Sum over cfg.dims of |TPers_k(output) - TPers_k(clean)|, with gradient
/// sign_k * dTPers_k(output). sign(0) = 0.
TopoLoss topo_loss(const ImageGrid& output, const ImageGrid& clean, const LossConfig& cfg);

/// |o - c| (p = 1) or (o - c)^2 (p = 2) per pixel.
ImageGrid base_loss_field(const ImageGrid& output, const ImageGrid& clean, int p);

/// Mask-gated combination: M = texture_mask(clean),
///   base_term = mean((1 - M) * base_loss_field)
///   topo_term = mean(M) * L_top
///   total     = base_term + alpha * topo_term
/// together with d total / d output.
LossReport wvcomb_loss(const ImageGrid& output, const ImageGrid& clean, const LossConfig& cfg);

std::string loss_report_to_json(const LossReport& report);

}  // namespace topowave
