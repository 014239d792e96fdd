#include "topowave/persistence.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <tuple>

#include "json.hpp"

#include "topowave/error.hpp"
#include "topowave/io.hpp"

namespace topowave {

PersistenceDiagram PersistenceDiagram::restricted_to(int dim) const {
    PersistenceDiagram out;
    out.max_filtration = max_filtration;
    for (const auto& p : pairs) {
        if (p.dim == dim) out.pairs.push_back(p);
    }
    return out;
}

void PersistenceDiagram::append(const PersistenceDiagram& other) {
    pairs.insert(pairs.end(), other.pairs.begin(), other.pairs.end());
    max_filtration = std::max(max_filtration, other.max_filtration);
}

DimSet DimSet::parse(std::string_view text) {
    if (text == "0") return {true, false};
    if (text == "1") return {false, true};
    if (text == "01" || text == "10") return {true, true};
    throw PreconditionViolation("dims must be 0, 1 or 01, got '" + std::string(text) + "'");
}

namespace {

// Each root remembers the oldest vertex of its component.
class ElderUnionFind {
public:
    ElderUnionFind(std::span<const double> birth_values) : values_(birth_values), parent_(birth_values.size()) {
        std::iota(parent_.begin(), parent_.end(), 0u);
        oldest_ = parent_;
    }

    std::uint32_t find(std::uint32_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    std::uint32_t oldest(std::uint32_t root) const { return oldest_[root]; }

    bool older(std::uint32_t a, std::uint32_t b) const {
        return values_[a] < values_[b] || (values_[a] == values_[b] && a < b);
    }

    // Links the younger root under the older one and returns the younger root.
    std::uint32_t link(std::uint32_t ra, std::uint32_t rb) {
        if (older(oldest_[rb], oldest_[ra])) std::swap(ra, rb);
        parent_[rb] = ra;
        return rb;
    }

private:
    std::span<const double> values_;
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint32_t> oldest_;
};

struct MergeResult {
    std::vector<PersistencePair> pairs;
    // Indexed like cx.simplices(); true for edges that join two components.
    std::vector<bool> merging_edge;
};

std::vector<double> vertex_values(const FilteredComplex& cx) {
    std::vector<double> values(cx.height() * cx.width(), 0.0);
    for (const auto& s : cx.simplices()) {
        if (s.dim == 0) values[s.vertices[0]] = s.filtration;
    }
    return values;
}

MergeResult run_union_find(const FilteredComplex& cx) {
    MergeResult result;
    result.merging_edge.assign(cx.size(), false);
    if (cx.empty()) return result;

    const auto values = vertex_values(cx);
    ElderUnionFind uf(values);
    std::vector<bool> present(values.size(), false);
    const auto cells = cx.simplices();
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto& s = cells[i];
        if (s.dim == 0) {
            present[s.vertices[0]] = true;
            continue;
        }
        if (s.dim != 1) continue;
        const auto ra = uf.find(s.vertices[0]), rb = uf.find(s.vertices[1]);
        if (ra == rb) continue;
        result.merging_edge[i] = true;
        const auto young = uf.oldest(uf.link(ra, rb));
        if (values[young] == s.filtration) continue;
        result.pairs.push_back({0, values[young], s.filtration, cx.pixel(young), cx.pixel(s.critical_vertex), false});
    }

    const double top = cx.max_filtration();
    const auto top_pixel = cx.pixel(cells.back().critical_vertex);
    for (std::uint32_t v = 0; v < values.size(); ++v) {
        if (!present[v] || uf.find(v) != v) continue;
        const auto born = uf.oldest(v);
        result.pairs.push_back({0, values[born], top, cx.pixel(born), top_pixel, true});
    }
    return result;
}

// Dense lookup from an (u < v) grid edge to its rank among edges.
class EdgeIndex {
public:
    EdgeIndex(std::size_t height, std::size_t width)
        : width_(width), slots_(height * width * 4, -1) {}

    std::size_t slot(std::uint32_t u, std::uint32_t v) const {
        const std::size_t ru = u / width_, cu = u % width_, rv = v / width_, cv = v % width_;
        std::size_t dir;
        if (rv == ru) {
            dir = 0;
        } else if (cv == cu) {
            dir = 1;
        } else if (cv > cu) {
            dir = 2;
        } else {
            dir = 3;
        }
        return static_cast<std::size_t>(u) * 4 + dir;
    }

    void set(std::uint32_t u, std::uint32_t v, std::int32_t rank) { slots_[slot(u, v)] = rank; }
    std::int32_t rank(std::uint32_t u, std::uint32_t v) const { return slots_[slot(u, v)]; }

private:
    std::size_t width_;
    std::vector<std::int32_t> slots_;
};

using Column = std::vector<std::int32_t>;

void add_column(Column& target, const Column& source, Column& scratch) {
    scratch.clear();
    std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                  std::back_inserter(scratch));
    target.swap(scratch);
}

}  // namespace

PersistenceDiagram persistence_h0(const FilteredComplex& cx) {
    PersistenceDiagram pd;
    pd.max_filtration = cx.max_filtration();
    pd.pairs = run_union_find(cx).pairs;
    return pd;
}

PersistenceDiagram persistence_h1(const FilteredComplex& cx) {
    PersistenceDiagram pd;
    pd.max_filtration = cx.max_filtration();
    if (cx.empty()) return pd;

    const auto cells = cx.simplices();
    EdgeIndex edge_index(cx.height(), cx.width());
    std::vector<std::size_t> edge_position;  // rank -> position in cells
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i].dim != 1) continue;
        edge_index.set(cells[i].vertices[0], cells[i].vertices[1], static_cast<std::int32_t>(edge_position.size()));
        edge_position.push_back(i);
    }

    std::vector<std::int32_t> pivot_owner(edge_position.size(), -1);
    std::vector<Column> reduced;
    Column column, scratch;
    for (const auto& cell : cells) {
        if (cell.dim != 2) continue;
        const auto& v = cell.vertices;
        column.clear();
        if (cell.vertex_count == 3) {
            column = {edge_index.rank(v[0], v[1]), edge_index.rank(v[0], v[2]), edge_index.rank(v[1], v[2])};
        } else {
            // v = {top-left, top-right, bottom-left, bottom-right}
            column = {edge_index.rank(v[0], v[1]), edge_index.rank(v[0], v[2]), edge_index.rank(v[1], v[3]),
                      edge_index.rank(v[2], v[3])};
        }
        std::sort(column.begin(), column.end());
        while (!column.empty() && pivot_owner[column.back()] >= 0) {
            add_column(column, reduced[pivot_owner[column.back()]], scratch);
        }
        if (column.empty()) continue;

        const auto pivot = column.back();
        pivot_owner[pivot] = static_cast<std::int32_t>(reduced.size());
        const auto& edge = cells[edge_position[pivot]];
        if (edge.filtration != cell.filtration) {
            pd.pairs.push_back({1, edge.filtration, cell.filtration, cx.pixel(edge.critical_vertex),
                                cx.pixel(cell.critical_vertex), false});
        }
        reduced.push_back(std::move(column));
        column = Column{};
    }

    // Clearing: edges that are pivots above are positive and already paired,
    // merge edges are negative. What remains is an unkilled cycle.
    const auto merges = run_union_find(cx);
    const double top = cx.max_filtration();
    const auto top_pixel = cx.pixel(cells.back().critical_vertex);
    for (std::size_t rank = 0; rank < edge_position.size(); ++rank) {
        if (pivot_owner[rank] >= 0 || merges.merging_edge[edge_position[rank]]) continue;
        const auto& edge = cells[edge_position[rank]];
        if (edge.filtration == top) continue;
        pd.pairs.push_back({1, edge.filtration, top, cx.pixel(edge.critical_vertex), top_pixel, true});
    }
    return pd;
}

PersistenceDiagram compute_diagram(const FilteredComplex& cx, DimSet dims) {
    PersistenceDiagram pd;
    pd.max_filtration = cx.max_filtration();
    if (dims.h0) pd.append(persistence_h0(cx));
    if (dims.h1) pd.append(persistence_h1(cx));
    return pd;
}

PersistenceDiagram compute_diagram(const ImageGrid& img, ComplexKind kind, DimSet dims) {
    return compute_diagram(build_complex(img, kind, dims.h1 ? 2 : 1), dims);
}

namespace {

auto sort_key(const PersistencePair& p) {
    return std::make_tuple(p.dim, p.birth, p.death, p.birth_pixel, p.death_pixel, p.essential);
}

std::string pixel_json(PixelIndex p) { return "[" + std::to_string(p.row) + "," + std::to_string(p.col) + "]"; }

}  // namespace

std::string diagram_to_json(const PersistenceDiagram& pd) {
    if (pd.pairs.empty()) return "[]";
    auto pairs = pd.pairs;
    std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) { return sort_key(a) < sort_key(b); });
    std::string out = "[\n";
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& p = pairs[i];
        out += "  {\"dim\":" + std::to_string(p.dim) + ",\"birth\":" + format_real(p.birth) +
               ",\"death\":" + format_real(p.death) + ",\"birth_pixel\":" + pixel_json(p.birth_pixel) +
               ",\"death_pixel\":" + pixel_json(p.death_pixel) +
               ",\"essential\":" + (p.essential ? "true" : "false") + "}";
        out += i + 1 < pairs.size() ? ",\n" : "\n";
    }
    out += "]";
    return out;
}

PersistenceDiagram diagram_from_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw MalformedFormat(std::string("diagram JSON: ") + e.what());
    }
    if (!doc.is_array()) throw MalformedFormat("diagram JSON must be an array");
    PersistenceDiagram pd;
    try {
        for (const auto& rec : doc) {
            PersistencePair p;
            p.dim = rec.at("dim").get<int>();
            p.birth = rec.at("birth").get<double>();
            p.death = rec.at("death").get<double>();
            p.birth_pixel = {rec.at("birth_pixel").at(0).get<std::size_t>(), rec.at("birth_pixel").at(1).get<std::size_t>()};
            p.death_pixel = {rec.at("death_pixel").at(0).get<std::size_t>(), rec.at("death_pixel").at(1).get<std::size_t>()};
            p.essential = rec.at("essential").get<bool>();
            pd.max_filtration = std::max(pd.max_filtration, p.death);
            pd.pairs.push_back(p);
        }
    } catch (const nlohmann::json::exception& e) {
        throw MalformedFormat(std::string("diagram JSON record: ") + e.what());
    }
    return pd;
}

}  // namespace topowave
