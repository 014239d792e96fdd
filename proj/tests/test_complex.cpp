#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "topowave/complex.hpp"
#include "topowave/error.hpp"

using namespace topowave;

namespace {

struct Counts {
    std::size_t v, e, f;
};

Counts counts(const FilteredComplex& cx) { return {cx.count(0), cx.count(1), cx.count(2)}; }

using Key = std::vector<std::uint32_t>;

// Face closure + monotone filtration + critical pixel contract.
void check_complex_invariants(const FilteredComplex& cx, const ImageGrid& img) {
    std::map<Key, double> filt;
    for (const auto& s : cx.simplices()) filt[Key(s.vertex_span().begin(), s.vertex_span().end())] = s.filtration;

    for (const auto& s : cx.simplices()) {
        double mx = -1.0;
        for (auto v : s.vertex_span()) mx = std::max(mx, img[v]);
        CHECK(s.filtration == mx);
        CHECK(img[s.critical_vertex] == s.filtration);
        CHECK(std::find(s.vertex_span().begin(), s.vertex_span().end(), s.critical_vertex) != s.vertex_span().end());
        // every vertex and, for 2-cells, every boundary edge is present
        for (auto v : s.vertex_span()) {
            auto it = filt.find(Key{v});
            REQUIRE(it != filt.end());
            CHECK(it->second <= s.filtration);
        }
        if (s.dim == 2) {
            int edges = 0;
            const auto& vs = s.vertices;
            for (int a = 0; a < s.vertex_count; ++a) {
                for (int b = a + 1; b < s.vertex_count; ++b) {
                    auto it = filt.find(Key{vs[a], vs[b]});
                    if (it == filt.end()) continue;
                    ++edges;
                    CHECK(it->second <= s.filtration);
                }
            }
            CHECK(edges == (s.vertex_count == 3 ? 3 : 4));
        }
    }
    const auto cells = cx.simplices();
    for (std::size_t i = 1; i < cells.size(); ++i) CHECK_FALSE(filtration_less(cells[i], cells[i - 1]));
}

bool face_closed(const FilteredComplex& cx) {
    std::map<Key, int> present;
    for (const auto& s : cx.simplices()) present[Key(s.vertex_span().begin(), s.vertex_span().end())] = s.dim;
    for (const auto& s : cx.simplices()) {
        for (auto v : s.vertex_span()) {
            if (!present.count(Key{v})) return false;
        }
        if (s.dim < 2) continue;
        const auto& vs = s.vertices;
        for (int a = 0; a < s.vertex_count; ++a) {
            for (int b = a + 1; b < s.vertex_count; ++b) {
                // Cubical diagonals are not edges and are not expected.
                const bool diagonal = s.vertex_count == 4 && ((a == 0 && b == 3) || (a == 1 && b == 2));
                if (!diagonal && !present.count(Key{vs[a], vs[b]})) return false;
            }
        }
    }
    return true;
}

}  // namespace

TEST_CASE("VR grid counts for small images") {
    auto c1 = counts(build_vr_grid(ImageGrid(1, 1, 0.3)));
    CHECK(c1.v == 1);
    CHECK(c1.e == 0);
    CHECK(c1.f == 0);
    auto c2 = counts(build_vr_grid(random_image(2, 2, 1)));
    CHECK(c2.v == 4);
    CHECK(c2.e == 6);
    CHECK(c2.f == 4);
    auto c3 = counts(build_vr_grid(random_image(3, 3, 1)));
    CHECK(c3.v == 9);
    CHECK(c3.e == 20);
    CHECK(c3.f == 16);
}

TEST_CASE("cubical counts for small images") {
    auto c1 = counts(build_cubical(ImageGrid(1, 1, 0.3)));
    CHECK(c1.v == 1);
    CHECK(c1.e + c1.f == 0);
    auto c2 = counts(build_cubical(random_image(2, 2, 1)));
    CHECK(c2.v == 4);
    CHECK(c2.e == 4);
    CHECK(c2.f == 1);
}

TEST_CASE("cell counts match enumeration for every H, W <= 8") {
    for (std::size_t h = 1; h <= 8; ++h) {
        for (std::size_t w = 1; w <= 8; ++w) {
            CAPTURE(h);
            CAPTURE(w);
            const auto img = random_image(h, w, h * 10 + w);
            const auto vr = counts(build_vr_grid(img));
            const auto eight = oracle::enumerate_cliques(h, w, true);
            CHECK(vr.v == eight.vertices);
            CHECK(vr.e == eight.edges);
            CHECK(vr.f == eight.faces);

            const auto cub = counts(build_cubical(img));
            const auto four = oracle::enumerate_cliques(h, w, false);
            CHECK(cub.v == h * w);
            CHECK(cub.e == h * (w - 1) + w * (h - 1));
            CHECK(cub.e == four.edges);
            CHECK(cub.f == (h - 1) * (w - 1));
        }
    }
}

TEST_CASE("complex invariants on random images") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto img = random_image(2 + seed % 5, 3 + seed % 4, seed);
        check_complex_invariants(build_vr_grid(img), img);
        check_complex_invariants(build_cubical(img), img);
    }
    // ties everywhere
    const ImageGrid flat(4, 4, 0.5);
    check_complex_invariants(build_vr_grid(flat), flat);
    check_complex_invariants(build_cubical(flat), flat);
}

TEST_CASE("max_dim limits the generated cells") {
    const auto img = random_image(5, 5, 2);
    CHECK(build_vr_grid(img, 1).count(2) == 0);
    CHECK(build_vr_grid(img, 1).count(1) == build_vr_grid(img).count(1));
    CHECK(build_cubical(img, 0).size() == 25);
}

TEST_CASE("sublevel_subcomplex") {
    const auto img = random_image(4, 5, 9);
    const auto cx = build_vr_grid(img);
    CHECK(sublevel_subcomplex(cx, std::numeric_limits<double>::infinity()).size() == cx.size());
    CHECK(sublevel_subcomplex(cx, -0.01).empty());

    const ImageGrid row(1, 3, std::vector<double>{0.1, 0.9, 0.2});
    for (auto kind : {ComplexKind::VietorisRipsGrid, ComplexKind::Cubical}) {
        const auto sub = sublevel_subcomplex(build_complex(row, kind), 0.5);
        CHECK(sub.count(0) == 2);
        CHECK(sub.count(1) == 0);
    }
}

TEST_CASE("sublevel sets are face-closed (property)") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 60; ++trial) {
        const auto img = random_image(1 + rng() % 6, 1 + rng() % 6, rng());
        for (auto kind : {ComplexKind::VietorisRipsGrid, ComplexKind::Cubical}) {
            const auto cx = build_complex(img, kind);
            CHECK(face_closed(sublevel_subcomplex(cx, unit(rng))));
        }
    }
}

TEST_CASE("strictly increasing intensity maps preserve simplex order") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto img = random_image(5, 6, 100 + seed);
        ImageGrid warped = img;
        for (auto& v : warped.data()) v = std::sqrt(v) * 0.5 + 0.1;
        for (auto kind : {ComplexKind::VietorisRipsGrid, ComplexKind::Cubical}) {
            const auto a = build_complex(img, kind), b = build_complex(warped, kind);
            REQUIRE(a.size() == b.size());
            bool same = true;
            for (std::size_t i = 0; i < a.size(); ++i) {
                same = same && a.simplices()[i].vertices == b.simplices()[i].vertices &&
                       a.simplices()[i].critical_vertex == b.simplices()[i].critical_vertex;
            }
            CHECK(same);
        }
    }
}

TEST_CASE("complex kind parsing") {
    CHECK(parse_complex_kind("vr") == ComplexKind::VietorisRipsGrid);
    CHECK(parse_complex_kind("Cubical") == ComplexKind::Cubical);
    CHECK_THROWS_AS(parse_complex_kind("alpha"), PreconditionViolation);
}
