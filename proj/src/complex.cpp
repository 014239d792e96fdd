#include "topowave/complex.hpp"

#include <algorithm>
#include <initializer_list>
#include <string>

#include "topowave/error.hpp"

namespace topowave {

std::string_view to_string(ComplexKind kind) {
    return kind == ComplexKind::VietorisRipsGrid ? "VietorisRipsGrid" : "Cubical";
}

ComplexKind parse_complex_kind(std::string_view text) {
    if (text == "vr" || text == "VietorisRipsGrid") return ComplexKind::VietorisRipsGrid;
    if (text == "cubical" || text == "Cubical") return ComplexKind::Cubical;
    throw PreconditionViolation("unknown complex kind: " + std::string(text));
}

bool filtration_less(const Simplex& a, const Simplex& b) {
    if (a.filtration != b.filtration) return a.filtration < b.filtration;
    if (a.dim != b.dim) return a.dim < b.dim;
    return std::lexicographical_compare(a.vertices.begin(), a.vertices.begin() + a.vertex_count,
                                        b.vertices.begin(), b.vertices.begin() + b.vertex_count);
}

FilteredComplex::FilteredComplex(ComplexKind kind, std::size_t height, std::size_t width,
                                 std::vector<Simplex> simplices)
    : kind_(kind), height_(height), width_(width), simplices_(std::move(simplices)) {}

std::size_t FilteredComplex::count(int dim) const {
    return static_cast<std::size_t>(
        std::count_if(simplices_.begin(), simplices_.end(), [dim](const Simplex& s) { return s.dim == dim; }));
}

double FilteredComplex::max_filtration() const { return simplices_.empty() ? 0.0 : simplices_.back().filtration; }

namespace {

class ComplexBuilder {
public:
    ComplexBuilder(const ImageGrid& img, std::size_t reserve) : img_(img) { cells_.reserve(reserve); }

    // Vertices must arrive sorted ascending.
    void add(std::initializer_list<std::uint32_t> vertices) {
        Simplex s;
        s.vertex_count = static_cast<std::uint8_t>(vertices.size());
        s.dim = static_cast<std::uint8_t>(vertices.size() == 4 ? 2 : vertices.size() - 1);
        std::copy(vertices.begin(), vertices.end(), s.vertices.begin());
        s.critical_vertex = s.vertices[0];
        s.filtration = img_[s.vertices[0]];
        for (std::size_t i = 1; i < s.vertex_count; ++i) {
            const double v = img_[s.vertices[i]];
            // Ties resolve to the later vertex.
            if (v >= s.filtration) {
                s.filtration = v;
                s.critical_vertex = s.vertices[i];
            }
        }
        cells_.push_back(s);
    }

    std::vector<Simplex> finish() && {
        std::sort(cells_.begin(), cells_.end(), filtration_less);
        return std::move(cells_);
    }

private:
    const ImageGrid& img_;
    std::vector<Simplex> cells_;
};

}  // namespace

FilteredComplex build_vr_grid(const ImageGrid& img, int max_dim) {
    const std::size_t h = img.height(), w = img.width();
    const std::size_t blocks = (h - 1) * (w - 1);
    std::size_t reserve = h * w;
    if (max_dim >= 1) reserve += h * (w - 1) + w * (h - 1) + 2 * blocks;
    if (max_dim >= 2) reserve += 4 * blocks;
    ComplexBuilder b(img, reserve);

    auto id = [w](std::size_t r, std::size_t c) { return static_cast<std::uint32_t>(r * w + c); };
    for (std::size_t r = 0; r < h; ++r) {
        for (std::size_t c = 0; c < w; ++c) {
            const auto p = id(r, c);
            b.add({p});
            if (max_dim < 1) continue;
            if (c + 1 < w) b.add({p, id(r, c + 1)});
            if (r + 1 < h) {
                b.add({p, id(r + 1, c)});
                if (c + 1 < w) b.add({p, id(r + 1, c + 1)});
                if (c > 0) b.add({p, id(r + 1, c - 1)});
            }
            if (max_dim < 2 || r + 1 >= h || c + 1 >= w) continue;
            const auto tr = id(r, c + 1), bl = id(r + 1, c), br = id(r + 1, c + 1);
            b.add({p, tr, bl});
            b.add({p, tr, br});
            b.add({p, bl, br});
            b.add({tr, bl, br});
        }
    }
    return FilteredComplex(ComplexKind::VietorisRipsGrid, h, w, std::move(b).finish());
}

FilteredComplex build_cubical(const ImageGrid& img, int max_dim) {
    const std::size_t h = img.height(), w = img.width();
    std::size_t reserve = h * w;
    if (max_dim >= 1) reserve += h * (w - 1) + w * (h - 1);
    if (max_dim >= 2) reserve += (h - 1) * (w - 1);
    ComplexBuilder b(img, reserve);

    auto id = [w](std::size_t r, std::size_t c) { return static_cast<std::uint32_t>(r * w + c); };
    for (std::size_t r = 0; r < h; ++r) {
        for (std::size_t c = 0; c < w; ++c) {
            const auto p = id(r, c);
            b.add({p});
            if (max_dim < 1) continue;
            if (c + 1 < w) b.add({p, id(r, c + 1)});
            if (r + 1 < h) b.add({p, id(r + 1, c)});
            if (max_dim >= 2 && r + 1 < h && c + 1 < w) b.add({p, id(r, c + 1), id(r + 1, c), id(r + 1, c + 1)});
        }
    }
    return FilteredComplex(ComplexKind::Cubical, h, w, std::move(b).finish());
}

FilteredComplex build_complex(const ImageGrid& img, ComplexKind kind, int max_dim) {
    return kind == ComplexKind::VietorisRipsGrid ? build_vr_grid(img, max_dim) : build_cubical(img, max_dim);
}

FilteredComplex sublevel_subcomplex(const FilteredComplex& cx, double epsilon) {
    std::vector<Simplex> kept;
    for (const auto& s : cx.simplices()) {
        if (s.filtration <= epsilon) kept.push_back(s);
    }
    return FilteredComplex(cx.kind(), cx.height(), cx.width(), std::move(kept));
}

}  // namespace topowave
