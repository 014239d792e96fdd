#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "topowave/complex.hpp"

namespace topowave {

enum class BenchDims { H0, H1, Both };

std::string_view to_string(BenchDims dims);
BenchDims parse_bench_dims(std::string_view text);

struct BenchRow {
    ComplexKind complex_kind = ComplexKind::VietorisRipsGrid;
    BenchDims dim = BenchDims::Both;
    std::size_t patch_size = 0;
    double wall_time_seconds = 0.0;  // median over repetitions
    int repetitions = 0;

    friend bool operator==(const BenchRow&, const BenchRow&) = default;
};

struct BenchConfig {
    ComplexKind kind;
    BenchDims dims;
};

/// VR-grid H0, VR-grid H0+H1, cubical H0+H1, in that order.
std::vector<BenchConfig> bench_configurations();

std::vector<std::size_t> default_bench_ladder();

/// Times complex construction plus persistence for every configuration and
/// size, sequentially. One untimed warm-up run precedes each measurement.
/// Requires sizes nonempty with every size >= 8 and reps >= 3.
std::vector<BenchRow> run_bench(const std::vector<std::size_t>& sizes, int reps, std::uint64_t seed,
                                const std::function<void(const BenchRow&)>& on_row = {});

void bench_to_csv(const std::vector<BenchRow>& rows, const std::filesystem::path& path);
std::vector<BenchRow> bench_from_csv(const std::filesystem::path& path);

/// Gnuplot script rendering <out_path>.svg: panel (a) all configurations,
/// panel (b) VR-grid H0 alone, log-scale times.
void emit_plot_script(const std::filesystem::path& csv_path, const std::filesystem::path& out_path);

}  // namespace topowave
