#include "topowave/bench.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "topowave/error.hpp"
#include "topowave/io.hpp"
#include "topowave/persistence.hpp"

namespace topowave {

std::string_view to_string(BenchDims dims) {
    switch (dims) {
        case BenchDims::H0: return "0";
        case BenchDims::H1: return "1";
        case BenchDims::Both: return "both";
    }
    return "both";
}

BenchDims parse_bench_dims(std::string_view text) {
    if (text == "0") return BenchDims::H0;
    if (text == "1") return BenchDims::H1;
    if (text == "both") return BenchDims::Both;
    throw MalformedFormat("unknown bench dims: " + std::string(text));
}

std::vector<BenchConfig> bench_configurations() {
    return {{ComplexKind::VietorisRipsGrid, BenchDims::H0},
            {ComplexKind::VietorisRipsGrid, BenchDims::Both},
            {ComplexKind::Cubical, BenchDims::Both}};
}

std::vector<std::size_t> default_bench_ladder() { return {32, 64, 128, 256, 512}; }

namespace {

double time_once(const ImageGrid& img, const BenchConfig& cfg) {
    const DimSet dims{cfg.dims != BenchDims::H1, cfg.dims != BenchDims::H0};
    const auto start = std::chrono::steady_clock::now();
    const auto cx = build_complex(img, cfg.kind, dims.h1 ? 2 : 1);
    const auto pd = compute_diagram(cx, dims);
    const auto stop = std::chrono::steady_clock::now();
    // Keeps the result observable so the work cannot be elided.
    volatile std::size_t sink = pd.size();
    (void)sink;
    return std::chrono::duration<double>(stop - start).count();
}

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::string csv_field(std::string_view text) {
    if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

// RFC 4180 record splitter for a single line (no embedded newlines needed here).
std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else if (c != '\r') {
            fields.back() += c;
        }
    }
    return fields;
}

constexpr std::string_view kCsvHeader = "complex_kind,dim,patch_size,wall_time_seconds,repetitions";

}  // namespace

std::vector<BenchRow> run_bench(const std::vector<std::size_t>& sizes, int reps, std::uint64_t seed,
                                const std::function<void(const BenchRow&)>& on_row) {
    if (sizes.empty()) throw PreconditionViolation("bench needs at least one patch size");
    if (reps < 3) throw PreconditionViolation("bench needs at least 3 repetitions");
    for (auto s : sizes) {
        if (s < 8) throw PreconditionViolation("bench patch sizes must be >= 8");
    }

    std::vector<BenchRow> rows;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const auto img = random_image(sizes[i], sizes[i], seed + i);
        for (const auto& cfg : bench_configurations()) {
            time_once(img, cfg);
            std::vector<double> samples;
            for (int r = 0; r < reps; ++r) samples.push_back(time_once(img, cfg));
            BenchRow row{cfg.kind, cfg.dims, sizes[i], std::max(median(samples), 1e-9), reps};
            if (on_row) on_row(row);
            rows.push_back(row);
        }
    }
    return rows;
}

void bench_to_csv(const std::vector<BenchRow>& rows, const std::filesystem::path& path) {
    if (rows.empty()) throw PreconditionViolation("no bench rows to write");
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto& row : rows) {
        out += csv_field(to_string(row.complex_kind)) + ',' + csv_field(to_string(row.dim)) + ',' +
               std::to_string(row.patch_size) + ',' + format_real(row.wall_time_seconds) + ',' +
               std::to_string(row.repetitions) + '\n';
    }
    write_file_atomic(path, out);
}

std::vector<BenchRow> bench_from_csv(const std::filesystem::path& path) {
    std::istringstream in(read_file(path));
    std::string line;
    if (!std::getline(in, line) || split_csv_line(line) != split_csv_line(std::string(kCsvHeader))) {
        throw MalformedFormat("bench CSV header mismatch in " + path.string());
    }
    std::vector<BenchRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 5) throw MalformedFormat("bench CSV row needs 5 fields: " + line);
        try {
            rows.push_back({parse_complex_kind(f[0]), parse_bench_dims(f[1]), std::stoul(f[2]), std::stod(f[3]),
                            std::stoi(f[4])});
        } catch (const std::logic_error&) {
            throw MalformedFormat("bad bench CSV row: " + line);
        }
    }
    return rows;
}

void emit_plot_script(const std::filesystem::path& csv_path, const std::filesystem::path& out_path) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(csv_path, ec)) throw IoFailure("bench CSV not found: " + csv_path.string());
    auto svg = out_path;
    svg.replace_extension(".svg");

    auto curve = [&](std::string_view kind, std::string_view dims, std::string_view title) {
        return "'" + csv_path.string() + "' every ::1 using 3:(strcol(1) eq \"" + std::string(kind) +
               "\" && strcol(2) eq \"" + std::string(dims) + "\" ? $4 : 1/0) with linespoints title \"" +
               std::string(title) + "\"";
    };

    std::ostringstream s;
    s << "# Timings cover complex construction plus persistence (median of repetitions).\n"
      << "set terminal svg size 800,900 dynamic\n"
      << "set output '" << svg.string() << "'\n"
      << "set datafile separator ','\n"
      << "set logscale xy\n"
      << "set xlabel 'patch size (pixels per side)'\n"
      << "set ylabel 'wall time (s)'\n"
      << "set key left top\n"
      << "set multiplot layout 2,1\n"
      << "set title '(a) Vietoris-Rips grid vs cubical complexes'\n"
      << "plot " << curve("VietorisRipsGrid", "0", "VR H0") << ", \\\n     "
      << curve("VietorisRipsGrid", "both", "VR H0+H1") << ", \\\n     "
      << curve("Cubical", "both", "Cubical H0+H1") << "\n"
      << "set title '(b) Vietoris-Rips grid, dimension 0'\n"
      << "plot " << curve("VietorisRipsGrid", "0", "VR H0") << "\n"
      << "unset multiplot\n";
    write_file_atomic(out_path, s.str());
}

}  // namespace topowave
