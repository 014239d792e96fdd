#include "topowave/loss.hpp"

#include <cmath>
#include <string>

#include "topowave/error.hpp"
#include "topowave/io.hpp"
#include "topowave/parallel.hpp"
#include "topowave/wavelet.hpp"

namespace topowave {

void LossConfig::validate() const {
    if (!std::isfinite(alpha) || alpha < 0.0) throw PreconditionViolation("alpha must be finite and >= 0");
    if (p_base != 1 && p_base != 2) throw PreconditionViolation("p_base must be 1 or 2");
    if (p_tpers < 1) throw PreconditionViolation("p_tpers must be >= 1");
    if (!dims.h0 && !dims.h1) throw PreconditionViolation("dims must not be empty");
}

double total_persistence(const PersistenceDiagram& pd, int p) {
    if (p < 1) throw PreconditionViolation("total persistence exponent must be >= 1");
    double sum = 0.0;
    for (const auto& pair : pd.pairs) sum += p == 1 ? pair.lifespan() : std::pow(pair.lifespan(), p);
    return sum;
}

ImageGrid tpers_gradient(const ImageGrid& img, const PersistenceDiagram& pd, int p) {
    if (p < 1) throw PreconditionViolation("total persistence exponent must be >= 1");
    ImageGrid grad(img.height(), img.width(), 0.0);
    for (const auto& pair : pd.pairs) {
        const double life = pair.lifespan();
        // Zero-lifespan points sit on a kink; take the zero subgradient.
        if (life == 0.0) continue;
        const double coeff = p == 1 ? 1.0 : p * std::pow(life, p - 1);
        grad(pair.death_pixel.row, pair.death_pixel.col) += coeff;
        grad(pair.birth_pixel.row, pair.birth_pixel.col) -= coeff;
    }
    return grad;
}

namespace {

void require_same_shape(const ImageGrid& a, const ImageGrid& b) {
    if (!a.same_shape(b)) {
        throw DimensionMismatch("image sizes differ: " + std::to_string(a.height()) + "x" + std::to_string(a.width()) +
                                " vs " + std::to_string(b.height()) + "x" + std::to_string(b.width()));
    }
}

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

double mean(const ImageGrid& img) {
    double sum = 0.0;
    for (double v : img.data()) sum += v;
    return sum / static_cast<double>(img.size());
}

}  // namespace

TopoLoss topo_loss(const ImageGrid& output, const ImageGrid& clean, const LossConfig& cfg) {
    require_same_shape(output, clean);
    cfg.validate();

    auto diagram_of = [&cfg](const ImageGrid& img) { return compute_diagram(img, cfg.complex_kind, cfg.dims); };
    const auto [pd_out, pd_clean] = run_pair([&] { return diagram_of(output); }, [&] { return diagram_of(clean); });

    TopoLoss result;
    result.gradient = ImageGrid(output.height(), output.width(), 0.0);
    for (int dim : {0, 1}) {
        if (!cfg.dims.contains(dim)) continue;
        const auto out_k = pd_out.restricted_to(dim);
        const double t_out = total_persistence(out_k, cfg.p_tpers);
        const double t_clean = total_persistence(pd_clean.restricted_to(dim), cfg.p_tpers);
        result.tpers_output += t_out;
        result.tpers_clean += t_clean;
        result.value += std::abs(t_out - t_clean);

        const double s = sign(t_out - t_clean);
        if (s == 0.0) continue;
        const auto g = tpers_gradient(output, out_k, cfg.p_tpers);
        for (std::size_t i = 0; i < g.size(); ++i) result.gradient[i] += s * g[i];
    }
    return result;
}

ImageGrid base_loss_field(const ImageGrid& output, const ImageGrid& clean, int p) {
    require_same_shape(output, clean);
    if (p != 1 && p != 2) throw PreconditionViolation("base loss exponent must be 1 or 2");
    ImageGrid field(output.height(), output.width());
    for (std::size_t i = 0; i < field.size(); ++i) {
        const double d = output[i] - clean[i];
        field[i] = p == 1 ? std::abs(d) : d * d;
    }
    return field;
}

LossReport wvcomb_loss(const ImageGrid& output, const ImageGrid& clean, const LossConfig& cfg) {
    require_same_shape(output, clean);
    cfg.validate();
    const auto mask = texture_mask(clean);
    const auto field = base_loss_field(output, clean, cfg.p_base);
    const double n = static_cast<double>(output.size());

    LossReport report;
    double base_sum = 0.0;
    for (std::size_t i = 0; i < field.size(); ++i) base_sum += (1.0 - mask[i]) * field[i];
    report.base_term = base_sum / n;

    const double mask_mean = mean(mask);
    const auto topo = topo_loss(output, clean, cfg);
    report.topo_term = mask_mean * topo.value;
    report.tpers_output = topo.tpers_output;
    report.tpers_clean = topo.tpers_clean;

    const bool alpha_on_topo = cfg.alpha_placement == AlphaPlacement::TopologicalTerm;
    const double base_weight = alpha_on_topo ? 1.0 : cfg.alpha;
    const double topo_weight = alpha_on_topo ? cfg.alpha : 1.0;
    report.total = base_weight * report.base_term + topo_weight * report.topo_term;

    report.gradient = ImageGrid(output.height(), output.width(), 0.0);
    for (std::size_t i = 0; i < field.size(); ++i) {
        const double d = output[i] - clean[i];
        const double dbase = cfg.p_base == 1 ? sign(d) : 2.0 * d;
        report.gradient[i] =
            base_weight * (1.0 - mask[i]) * dbase / n + topo_weight * mask_mean * topo.gradient[i];
    }
    return report;
}

std::string loss_report_to_json(const LossReport& report) {
    return "{\"total\":" + format_real(report.total) + ",\"topo_term\":" + format_real(report.topo_term) +
           ",\"base_term\":" + format_real(report.base_term) + ",\"tpers_output\":" + format_real(report.tpers_output) +
           ",\"tpers_clean\":" + format_real(report.tpers_clean) + "}";
}

}  // namespace topowave
