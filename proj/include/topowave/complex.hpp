#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "topowave/image.hpp"

namespace topowave {

enum class ComplexKind { VietorisRipsGrid, Cubical };

std::string_view to_string(ComplexKind kind);
/// Accepts "vr" / "cubical" (the CLI spellings) as well as the enum names.
ComplexKind parse_complex_kind(std::string_view text);

/// A vertex, edge, triangle (clique complex) or unit square (cubical).
/// Vertices are linear pixel indices in ascending order.
struct Simplex {
    std::uint8_t dim = 0;
    std::uint8_t vertex_count = 0;
    std::array<std::uint32_t, 4> vertices{};
    double filtration = 0.0;
    std::uint32_t critical_vertex = 0;

    std::span<const std::uint32_t> vertex_span() const { return {vertices.data(), vertex_count}; }
};

/// Total order used everywhere: (filtration, dim, lexicographic vertices).
bool filtration_less(const Simplex& a, const Simplex& b);

/// Lower-star filtered cell complex over an image grid, dimensions 0..2.
/// Simplices are sorted by filtration_less, so every face precedes its
/// cofaces and each prefix is a subcomplex.
class FilteredComplex {
public:
    FilteredComplex(ComplexKind kind, std::size_t height, std::size_t width, std::vector<Simplex> simplices);

    ComplexKind kind() const { return kind_; }
    std::size_t height() const { return height_; }
    std::size_t width() const { return width_; }
    std::span<const Simplex> simplices() const { return simplices_; }
    std::size_t size() const { return simplices_.size(); }
    std::size_t count(int dim) const;
    bool empty() const { return simplices_.empty(); }

    /// Largest filtration value present; 0 for an empty complex.
    double max_filtration() const;

    PixelIndex pixel(std::uint32_t linear) const { return {linear / width_, linear % width_}; }

private:
    ComplexKind kind_;
    std::size_t height_;
    std::size_t width_;
    std::vector<Simplex> simplices_;
};

/// Clique complex of the 8-neighbour pixel graph: every pixel, every pair of
/// 8-neighbours, every 3-clique (four per 2x2 block). Cells above max_dim are
/// not generated.
FilteredComplex build_vr_grid(const ImageGrid& img, int max_dim = 2);

/// V-construction cubical complex: pixels, 4-neighbour unit edges and one
/// square per 2x2 block.
FilteredComplex build_cubical(const ImageGrid& img, int max_dim = 2);

FilteredComplex build_complex(const ImageGrid& img, ComplexKind kind, int max_dim = 2);

/// All simplices with filtration <= epsilon, in the original order.
FilteredComplex sublevel_subcomplex(const FilteredComplex& cx, double epsilon);

}  // namespace topowave
