#include "cli.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "CLI11.hpp"

#include "topowave/bench.hpp"
#include "topowave/denoise.hpp"
#include "topowave/error.hpp"
#include "topowave/image.hpp"
#include "topowave/io.hpp"
#include "topowave/loss.hpp"
#include "topowave/metrics.hpp"
#include "topowave/persistence.hpp"
#include "topowave/wavelet.hpp"

namespace topowave::cli {

namespace {

struct LossFlags {
    std::string complex = "vr";
    std::string dims = "01";
    double alpha = 0.004;
    int p_base = 1;
    int p_tpers = 1;
    std::string alpha_on = "topo";

    LossConfig to_config() const {
        LossConfig cfg;
        cfg.alpha = alpha;
        cfg.p_base = p_base;
        cfg.p_tpers = p_tpers;
        cfg.dims = DimSet::parse(dims);
        cfg.complex_kind = parse_complex_kind(complex);
        cfg.alpha_placement = alpha_on == "base" ? AlphaPlacement::BaseTerm : AlphaPlacement::TopologicalTerm;
        cfg.validate();
        return cfg;
    }
};

void add_complex_flags(CLI::App* sub, LossFlags& f) {
    sub->add_option("--complex", f.complex, "Complex kind")->check(CLI::IsMember({"vr", "cubical"}))->capture_default_str();
    sub->add_option("--dims", f.dims, "Homology dimensions")->check(CLI::IsMember({"0", "1", "01"}))->capture_default_str();
}

void add_loss_flags(CLI::App* sub, LossFlags& f) {
    add_complex_flags(sub, f);
    sub->add_option("--alpha", f.alpha, "Topological loss gain")->capture_default_str();
    sub->add_option("--p-base", f.p_base, "Base loss exponent")->check(CLI::IsMember({1, 2}))->capture_default_str();
    sub->add_option("--p-tpers", f.p_tpers, "Total persistence exponent")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--alpha-on", f.alpha_on, "Term alpha multiplies")->check(CLI::IsMember({"topo", "base"}))->capture_default_str();
}

std::optional<ImageFormat> parse_format(const std::string& text) {
    if (text.empty()) return std::nullopt;
    return text == "png" ? ImageFormat::Png : ImageFormat::Pgm;
}

void save_with_format(const ImageGrid& img, const std::filesystem::path& path, const std::string& format) {
    const auto fmt = parse_format(format);
    save_image(img, path, fmt ? *fmt : format_from_extension(path));
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text << '\n';
    } else {
        write_file_atomic(path, text + "\n");
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Wavelet-masked topological loss toolkit"};
    app.require_subcommand(1);
    std::uint64_t seed = 0;
    std::string format;
    app.add_option("--seed", seed, "Random seed")->capture_default_str();
    app.add_option("--format", format, "Image output format (pgm|png); default from extension")
        ->check(CLI::IsMember({"pgm", "png"}));

    // diagram
    auto* diagram = app.add_subcommand("diagram", "Persistence diagram of an image as JSON");
    std::string diagram_in, diagram_out;
    LossFlags diagram_flags;
    diagram->add_option("input", diagram_in, "Input image")->required();
    diagram->add_option("-o,--output", diagram_out, "Output JSON path (stdout if omitted)");
    add_complex_flags(diagram, diagram_flags);

    // mask
    auto* mask = app.add_subcommand("mask", "Wavelet texture mask as an image");
    std::string mask_in, mask_out;
    mask->add_option("input", mask_in, "Input image")->required();
    mask->add_option("-o,--output", mask_out, "Output image")->required();

    // loss
    auto* loss = app.add_subcommand("loss", "Combined wavelet-masked loss as JSON");
    std::string loss_output, loss_clean;
    LossFlags loss_flags;
    loss->add_option("output_image", loss_output, "Restored image")->required();
    loss->add_option("clean_image", loss_clean, "Ground-truth image")->required();
    add_loss_flags(loss, loss_flags);

    // denoise
    auto* den = app.add_subcommand("denoise", "Pixel-space gradient descent on the combined loss");
    std::string den_noisy, den_clean, den_out, den_trace;
    double den_sigma = -1.0;
    DenoiseConfig den_cfg;
    LossFlags den_flags;
    den->add_option("--noisy", den_noisy, "Noisy start image");
    den->add_option("--sigma", den_sigma, "Synthesize the start image as clean + N(0, sigma^2) using --seed");
    den->add_option("--clean", den_clean, "Ground-truth image")->required();
    den->add_option("-o,--output", den_out, "Denoised image")->required();
    den->add_option("--trace", den_trace, "Per-iteration loss CSV (default <output>.trace.csv)");
    den->add_option("--iterations", den_cfg.iterations, "Descent iterations")
        ->check(CLI::Range(0, kMaxDenoiseIterations))
        ->capture_default_str();
    den->add_option("--step-size", den_cfg.step_size, "Initial step per iteration")->capture_default_str();
    add_loss_flags(den, den_flags);

    // metrics
    auto* met = app.add_subcommand("metrics", "PSNR and SSIM as JSON");
    std::string met_a, met_b;
    met->add_option("image_a", met_a, "First image")->required();
    met->add_option("image_b", met_b, "Second image")->required();

    // bench
    auto* bench = app.add_subcommand("bench", "Time persistence on VR-grid vs cubical complexes");
    std::vector<std::size_t> bench_sizes = default_bench_ladder();
    int bench_reps = 3;
    std::string bench_csv = "bench.csv", bench_plot = "bench.gp";
    bench->add_option("--sizes", bench_sizes, "Patch sizes")->delimiter(',');
    bench->add_option("--reps", bench_reps, "Timed repetitions per configuration")->capture_default_str();
    bench->add_option("--csv", bench_csv, "CSV output")->capture_default_str();
    bench->add_option("--plot", bench_plot, "Gnuplot script output")->capture_default_str();

    std::vector<const char*> argv{"topowave"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*diagram) {
            const auto img = load_image(diagram_in);
            const auto pd = compute_diagram(img, parse_complex_kind(diagram_flags.complex), DimSet::parse(diagram_flags.dims));
            emit(diagram_to_json(pd), diagram_out, out);
        } else if (*mask) {
            save_with_format(texture_mask(load_image(mask_in)), mask_out, format);
        } else if (*loss) {
            const auto report = wvcomb_loss(load_image(loss_output), load_image(loss_clean), loss_flags.to_config());
            out << loss_report_to_json(report) << '\n';
        } else if (*den) {
            den_cfg.loss = den_flags.to_config();
            den_cfg.seed = seed;
            const auto clean = load_image(den_clean);
            ImageGrid noisy = clean;
            if (!den_noisy.empty()) {
                noisy = load_image(den_noisy);
            } else if (den_sigma >= 0.0) {
                noisy = add_gaussian_noise(clean, den_sigma, seed);
            } else {
                throw PreconditionViolation("denoise needs --noisy or --sigma");
            }
            const auto result = denoise(noisy, clean, den_cfg);
            std::string trace = "iteration,loss,step\n";
            for (std::size_t k = 0; k < result.loss_trace.size(); ++k) {
                trace += std::to_string(k) + ',' + format_real(result.loss_trace[k]) + ',' +
                         format_real(k == 0 ? 0.0 : result.step_trace[k - 1]) + '\n';
            }
            save_with_format(result.image, den_out, format);
            write_file_atomic(den_trace.empty() ? den_out + ".trace.csv" : den_trace, trace);
            out << "{\"initial_loss\":" << format_real(result.loss_trace.front())
                << ",\"final_loss\":" << format_real(result.loss_trace.back()) << "}\n";
        } else if (*met) {
            out << metric_report_to_json(compute_metrics(load_image(met_a), load_image(met_b))) << '\n';
        } else if (*bench) {
            const auto rows = run_bench(bench_sizes, bench_reps, seed, [&err](const BenchRow& row) {
                err << to_string(row.complex_kind) << " dims=" << to_string(row.dim) << " size=" << row.patch_size
                    << " median=" << format_real(row.wall_time_seconds) << "s\n";
            });
            bench_to_csv(rows, bench_csv);
            emit_plot_script(bench_csv, bench_plot);
        }
    } catch (const Error& e) {
        err << "topowave: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace topowave::cli
