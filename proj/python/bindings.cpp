#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <string>
#include <vector>

#include "topowave/bench.hpp"
#include "topowave/denoise.hpp"
#include "topowave/error.hpp"
#include "topowave/image.hpp"
#include "topowave/loss.hpp"
#include "topowave/metrics.hpp"
#include "topowave/persistence.hpp"
#include "topowave/wavelet.hpp"

namespace py = pybind11;
using namespace topowave;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

ImageGrid to_grid(const Array& a) {
    if (a.ndim() != 2) throw DimensionMismatch("expected a 2-D array, got " + std::to_string(a.ndim()) + " dimensions");
    const auto h = static_cast<std::size_t>(a.shape(0)), w = static_cast<std::size_t>(a.shape(1));
    return ImageGrid(h, w, std::vector<double>(a.data(), a.data() + a.size()));
}

Array to_array(const ImageGrid& g) {
    Array out({g.height(), g.width()});
    std::copy(g.data().begin(), g.data().end(), out.mutable_data());
    return out;
}

LossConfig make_config(double alpha, int p_base, int p_tpers, const std::string& dims, const std::string& complex,
                       const std::string& alpha_on) {
    LossConfig cfg;
    cfg.alpha = alpha;
    cfg.p_base = p_base;
    cfg.p_tpers = p_tpers;
    cfg.dims = DimSet::parse(dims);
    cfg.complex_kind = parse_complex_kind(complex);
    if (alpha_on == "topo") cfg.alpha_placement = AlphaPlacement::TopologicalTerm;
    else if (alpha_on == "base") cfg.alpha_placement = AlphaPlacement::BaseTerm;
    else throw PreconditionViolation("alpha_on must be 'topo' or 'base'");
    cfg.validate();
    return cfg;
}

py::list diagram_to_list(const PersistenceDiagram& pd) {
    py::list out;
    for (const auto& p : pd.pairs) {
        py::dict d;
        d["dim"] = p.dim;
        d["birth"] = p.birth;
        d["death"] = p.death;
        d["birth_pixel"] = py::make_tuple(p.birth_pixel.row, p.birth_pixel.col);
        d["death_pixel"] = py::make_tuple(p.death_pixel.row, p.death_pixel.col);
        d["essential"] = p.essential;
        out.append(d);
    }
    return out;
}

#define LOSS_ARGS                                                                                             \
    py::arg("alpha") = 0.004, py::arg("p_base") = 1, py::arg("p_tpers") = 1, py::arg("dims") = "01",          \
        py::arg("complex") = "vr", py::arg("alpha_on") = "topo"

}  // namespace

PYBIND11_MODULE(_topowave, m) {
    m.doc() = "Persistence diagrams, Haar texture masks and topological losses on grayscale images.";

    auto base = py::register_exception<Error>(m, "TopowaveError", PyExc_RuntimeError);
    py::register_exception<FileNotFound>(m, "FileNotFound", base);
    py::register_exception<MalformedFormat>(m, "MalformedFormat", base);
    py::register_exception<UnsupportedBitDepth>(m, "UnsupportedBitDepth", base);
    py::register_exception<IoFailure>(m, "IoFailure", base);
    py::register_exception<OutOfBounds>(m, "OutOfBounds", base);
    py::register_exception<DimensionMismatch>(m, "DimensionMismatch", base);
    py::register_exception<ImageTooSmall>(m, "ImageTooSmall", base);
    py::register_exception<PreconditionViolation>(m, "PreconditionViolation", base);

    m.def("load_image", [](const std::filesystem::path& p) { return to_array(load_image(p)); }, py::arg("path"),
          "Load a PGM/PPM or PNG file as a float64 array in [0, 1].");
    m.def(
        "save_image", [](const Array& img, const std::filesystem::path& p, int bit_depth) { save_image(to_grid(img), p, bit_depth); },
        py::arg("image"), py::arg("path"), py::arg("bit_depth") = 8);
    m.def(
        "add_gaussian_noise",
        [](const Array& img, double sigma, std::uint64_t seed) { return to_array(add_gaussian_noise(to_grid(img), sigma, seed)); },
        py::arg("image"), py::arg("sigma"), py::arg("seed"));
    m.def("make_test_pattern", [](std::size_t size) { return to_array(make_test_pattern(size)); }, py::arg("size") = 64);

    m.def(
        "persistence_diagram",
        [](const Array& img, const std::string& complex, const std::string& dims) {
            const auto grid = to_grid(img);
            const auto kind = parse_complex_kind(complex);
            const auto set = DimSet::parse(dims);
            PersistenceDiagram pd;
            {
                py::gil_scoped_release nogil;
                pd = compute_diagram(grid, kind, set);
            }
            return diagram_to_list(pd);
        },
        py::arg("image"), py::arg("complex") = "vr", py::arg("dims") = "01",
        "List of {dim, birth, death, birth_pixel, death_pixel, essential} records.");
    m.def(
        "diagram_json",
        [](const Array& img, const std::string& complex, const std::string& dims) {
            return diagram_to_json(compute_diagram(to_grid(img), parse_complex_kind(complex), DimSet::parse(dims)));
        },
        py::arg("image"), py::arg("complex") = "vr", py::arg("dims") = "01");
    m.def(
        "total_persistence",
        [](const Array& img, const std::string& complex, const std::string& dims, int p) {
            return total_persistence(compute_diagram(to_grid(img), parse_complex_kind(complex), DimSet::parse(dims)), p);
        },
        py::arg("image"), py::arg("complex") = "vr", py::arg("dims") = "01", py::arg("p") = 1);

    m.def(
        "dwt_haar_forward",
        [](const Array& img) {
            const auto b = dwt_haar_forward(to_grid(img));
            return py::make_tuple(to_array(b.ll), to_array(b.lh), to_array(b.hl), to_array(b.hh));
        },
        py::arg("image"), "Single-level orthonormal Haar transform: (ll, lh, hl, hh).");
    m.def(
        "dwt_haar_inverse",
        [](const Array& ll, const Array& lh, const Array& hl, const Array& hh, std::size_t height, std::size_t width) {
            return to_array(dwt_haar_inverse({to_grid(ll), to_grid(lh), to_grid(hl), to_grid(hh), height, width}));
        },
        py::arg("ll"), py::arg("lh"), py::arg("hl"), py::arg("hh"), py::arg("height"), py::arg("width"));
    m.def("texture_mask", [](const Array& img) { return to_array(texture_mask(to_grid(img))); }, py::arg("image"));

    m.def(
        "topo_loss",
        [](const Array& out, const Array& clean, double alpha, int p_base, int p_tpers, const std::string& dims,
           const std::string& complex, const std::string& alpha_on) {
            const auto cfg = make_config(alpha, p_base, p_tpers, dims, complex, alpha_on);
            const auto r = topo_loss(to_grid(out), to_grid(clean), cfg);
            return py::make_tuple(r.value, to_array(r.gradient));
        },
        py::arg("output"), py::arg("clean"), LOSS_ARGS, "(value, gradient) of the topological gap.");
    m.def(
        "wvcomb_loss",
        [](const Array& out, const Array& clean, double alpha, int p_base, int p_tpers, const std::string& dims,
           const std::string& complex, const std::string& alpha_on) {
            const auto cfg = make_config(alpha, p_base, p_tpers, dims, complex, alpha_on);
            const auto r = wvcomb_loss(to_grid(out), to_grid(clean), cfg);
            py::dict d;
            d["total"] = r.total;
            d["topo_term"] = r.topo_term;
            d["base_term"] = r.base_term;
            d["tpers_output"] = r.tpers_output;
            d["tpers_clean"] = r.tpers_clean;
            d["gradient"] = to_array(r.gradient);
            return d;
        },
        py::arg("output"), py::arg("clean"), LOSS_ARGS);

    m.def("psnr", [](const Array& a, const Array& b, double peak) { return psnr(to_grid(a), to_grid(b), peak); },
          py::arg("a"), py::arg("b"), py::arg("peak") = 1.0);
    m.def("psnr_from_mse", &psnr_from_mse, py::arg("mse"), py::arg("peak") = 1.0);
    m.def("ssim", [](const Array& a, const Array& b) { return ssim(to_grid(a), to_grid(b)); }, py::arg("a"), py::arg("b"));

    m.def(
        "denoise",
        [](const Array& noisy, const Array& clean, int iterations, double step_size, double alpha, int p_base,
           int p_tpers, const std::string& dims, const std::string& complex, const std::string& alpha_on) {
            DenoiseConfig cfg;
            cfg.iterations = iterations;
            cfg.step_size = step_size;
            cfg.loss = make_config(alpha, p_base, p_tpers, dims, complex, alpha_on);
            const auto n = to_grid(noisy), c = to_grid(clean);
            DenoiseResult r;
            {
                py::gil_scoped_release nogil;
                r = denoise(n, c, cfg);
            }
            return py::make_tuple(to_array(r.image), r.loss_trace);
        },
        py::arg("noisy"), py::arg("clean"), py::arg("iterations") = 200, py::arg("step_size") = 0.05, LOSS_ARGS,
        "Backtracking gradient descent on the combined loss: (image, loss_trace).");

    m.def(
        "run_bench",
        [](const std::vector<std::size_t>& sizes, int reps, std::uint64_t seed) {
            std::vector<BenchRow> rows;
            {
                py::gil_scoped_release nogil;
                rows = run_bench(sizes, reps, seed);
            }
            py::list out;
            for (const auto& r : rows) {
                py::dict d;
                d["complex_kind"] = std::string(to_string(r.complex_kind));
                d["dim"] = std::string(to_string(r.dim));
                d["patch_size"] = r.patch_size;
                d["wall_time_seconds"] = r.wall_time_seconds;
                d["repetitions"] = r.repetitions;
                out.append(d);
            }
            return out;
        },
        py::arg("sizes"), py::arg("reps") = 3, py::arg("seed") = 0);
}
