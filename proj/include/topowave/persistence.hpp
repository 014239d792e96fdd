#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "topowave/complex.hpp"
#include "topowave/image.hpp"

namespace topowave {

/// One point of a persistence diagram. birth_pixel / death_pixel are the
/// pixels whose intensities equal birth / death; they carry the gradient.
struct PersistencePair {
    int dim = 0;
    double birth = 0.0;
    double death = 0.0;
    PixelIndex birth_pixel;
    PixelIndex death_pixel;
    bool essential = false;

    double lifespan() const { return death - birth; }
    friend bool operator==(const PersistencePair&, const PersistencePair&) = default;
};

/// Essential classes are truncated at max_filtration so every lifespan is finite.
struct PersistenceDiagram {
    std::vector<PersistencePair> pairs;
    double max_filtration = 0.0;

    std::size_t size() const { return pairs.size(); }
    bool empty() const { return pairs.empty(); }
    PersistenceDiagram restricted_to(int dim) const;
    void append(const PersistenceDiagram& other);
};

/// Which homology dimensions to compute.
struct DimSet {
    bool h0 = true;
    bool h1 = true;

    /// "0", "1" or "01".
    static DimSet parse(std::string_view text);
    bool contains(int dim) const { return dim == 0 ? h0 : dim == 1 && h1; }
    friend bool operator==(const DimSet&, const DimSet&) = default;
};

/// Union-find over the 1-skeleton, elder rule on merges. On equal births the
/// component holding the smaller pixel index survives. One essential pair per
/// final component.
PersistenceDiagram persistence_h0(const FilteredComplex& cx);

/// Z/2 column reduction of the 2-cell boundary matrix. Edges paired there are
/// cleared; together with the merge edges from union-find this leaves exactly
/// the essential 1-cycles, which are truncated at max_filtration.
PersistenceDiagram persistence_h1(const FilteredComplex& cx);

PersistenceDiagram compute_diagram(const FilteredComplex& cx, DimSet dims);
PersistenceDiagram compute_diagram(const ImageGrid& img, ComplexKind kind, DimSet dims);

/// Canonical JSON: records sorted by (dim, birth, death, birth_pixel), reals
/// printed with 17 significant digits. The empty diagram is "[]".
std::string diagram_to_json(const PersistenceDiagram& pd);
PersistenceDiagram diagram_from_json(std::string_view text);

}  // namespace topowave
