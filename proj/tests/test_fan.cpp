#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "toricmmp/fan.hpp"

#include <set>

using namespace toricmmp;
using oracle::iv;

namespace {

// Kernel of the dim x (dim+1) matrix [v_a v_b ridge...] via signed maximal
// minors (generalized cross product).
IntVector wall_relation_oracle(const Fan& f, const Wall& w) {
    std::vector<std::size_t> cols = {w.opposite_a, w.opposite_b};
    cols.insert(cols.end(), w.ridge.begin(), w.ridge.end());
    const std::size_t n = f.dim;
    IntVector k(n + 1);
    for (std::size_t drop = 0; drop <= n; ++drop) {
        std::vector<IntVector> rows(n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c <= n; ++c)
                if (c != drop) rows[r].push_back(f.rays[cols[c]][r]);
        Integer m = oracle::cofactor_det(rows);
        k[drop] = (drop % 2 == 0) ? m : Integer(-m);
    }
    k = primitive(k);
    if (k[0] < 0)
        for (auto& x : k) x = -x;
    IntVector full(f.num_rays(), Integer(0));
    for (std::size_t c = 0; c <= n; ++c) full[cols[c]] = k[c];
    return full;
}

const Wall& wall_at(const std::vector<Wall>& ws, Cone ridge) {
    for (const auto& w : ws)
        if (w.ridge == ridge) return w;
    throw std::runtime_error("no wall");
}

}  // namespace

TEST_CASE("fan validation") {
    CHECK_THROWS_AS(make_fan(2, {iv({2, 0}), iv({0, 1})}, {{0, 1}}, {}, false), FanError);
    CHECK_THROWS_AS(make_fan(2, {iv({1, 0}), iv({0, 1})}, {{0, 1}}), FanError);
    // Two cones overlapping: (1,0),(0,1) and (1,0),(1,1).
    CHECK_THROWS_AS(make_fan(2, {iv({1, 0}), iv({0, 1}), iv({1, 1})}, {{0, 1}, {0, 2}}, {}, false), FanError);
    // A double cover of the circle passes the ridge test but not the generic point count.
    CHECK_THROWS_AS(make_fan(2, {iv({1, 0}), iv({0, 1}), iv({-1, 0}), iv({0, -1}), iv({1, 1}), iv({-1, 1})},
                             {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, {}, true),
                    FanError);
    CHECK(fixtures::circuit3().complete);
    CHECK(point_fan().complete);
}

TEST_CASE("fan from polytope") {
    auto p2 = fan_from_polytope({iv({1, 0}), iv({0, 1}), iv({-1, -1})});
    CHECK(p2.cones.size() == 3);
    CHECK(p2.complete);
    auto s2 = fan_from_polytope({iv({1, 0}), iv({0, 1}), iv({-1, -1}), iv({1, 1}), iv({-1, 0})});
    CHECK(s2.cones == fixtures::s2().cones);
    CHECK_THROWS_AS(fan_from_polytope({iv({1, 0}), iv({2, 1})}), FanError);
    CHECK(fan_from_polytope({iv({1, 0}), iv({0, 1}), iv({-1, 0}), iv({0, -1})}).cones.size() == 4);
    std::vector<IntVector> cube;
    for (int x : {-1, 1})
        for (int y : {-1, 1})
            for (int z : {-1, 1}) cube.push_back(iv({x, y, z}));
    CHECK_THROWS_AS(fan_from_polytope(cube), FanError);
}

TEST_CASE("local properties") {
    for (const auto& f : fixtures::del_pezzo_surfaces()) {
        auto p = local_properties(f);
        CHECK(p.smooth);
        CHECK(p.terminal);
        CHECK(p.canonical);
        CHECK(p.gorenstein);
        CHECK(p.fano);
    }
    auto patch = make_fan(2, {iv({1, 0}), iv({1, 2})}, {{0, 1}}, {}, false);
    auto q = local_properties(patch);
    CHECK_FALSE(q.smooth);
    CHECK(q.gorenstein);
    CHECK(q.canonical);
    CHECK_FALSE(q.terminal);
    CHECK_FALSE(q.fano);
    // The cone over (1,0),(2,3) is not Gorenstein and has the point (1,1) at height 2/3.
    auto r = local_properties(make_fan(2, {iv({1, 0}), iv({2, 3})}, {{0, 1}}, {}, false));
    CHECK_FALSE(r.gorenstein);
    CHECK_FALSE(r.canonical);
    // Terminal but singular: the 3-fold cone over (1,0,0),(0,1,0),(1,1,2).
    auto t = local_properties(make_fan(3, {iv({1, 0, 0}), iv({0, 1, 0}), iv({1, 1, 2})}, {{0, 1, 2}}, {}, false));
    CHECK_FALSE(t.smooth);
    CHECK(t.terminal);
    // Hirzebruch F_2 is not Fano: the (-2)-curve has anticanonical degree 0.
    auto f2 = make_fan(2, {iv({1, 0}), iv({0, 1}), iv({-1, 2}), iv({0, -1})}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    CHECK(local_properties(f2).smooth);
    CHECK_FALSE(local_properties(f2).fano);
}

TEST_CASE("walls and relations") {
    auto p2w = walls(fixtures::p2());
    CHECK(p2w.size() == 3);
    for (const auto& w : p2w) CHECK(w.relation == iv({1, 1, 1}));
    auto s2 = fixtures::s2();
    auto sw = walls(s2);
    CHECK(wall_at(sw, {4}).relation == iv({0, 1, 1, 0, -1}));
    CHECK(wall_at(sw, {0}).relation == iv({0, 0, 1, 1, 0}));
    std::vector<Fan> all = fixtures::del_pezzo_surfaces();
    all.push_back(fixtures::p3());
    all.push_back(fixtures::circuit3());
    all.push_back(product(fixtures::p2(), fixtures::p1()));
    for (const auto& f : all) {
        auto ws = walls(f);
        CHECK(ws.size() * 2 == f.dim * f.cones.size());
        for (const auto& w : ws) {
            CHECK(w.relation == wall_relation_oracle(f, w));
            CHECK(is_zero(f.ray_matrix() * w.relation));
            CHECK(w.relation[w.opposite_a] > 0);
            CHECK(w.relation[w.opposite_b] > 0);
        }
    }
}

TEST_CASE("star subdivision and ray removal") {
    auto bl = star_subdivision(fixtures::p2(), {0, 1});
    CHECK(bl.rays.back() == iv({1, 1}));
    CHECK(canonical_key(bl) == canonical_key(fixtures::bl1p2()));
    CHECK_THROWS_AS(star_subdivision(fixtures::p2(), {0}), FanError);
    auto s2 = star_subdivision(fixtures::bl1p2(), {1, 2});
    CHECK(canonical_key(s2) == canonical_key(fixtures::s2()));

    CHECK(canonical_key(remove_ray(fixtures::s2(), 4)) == canonical_key(fixtures::bl1p2()));
    CHECK_THROWS_AS(remove_ray(fixtures::p2(), 0), FanError);
    CHECK(canonical_key(remove_ray(fixtures::bl1p2(), 3)) == canonical_key(fixtures::p2()));
}

TEST_CASE("subdivision round trip on codimension-two faces") {
    std::vector<Fan> fans = fixtures::del_pezzo_surfaces();
    fans.push_back(fixtures::p3());
    fans.push_back(product(fixtures::p2(), fixtures::p1()));
    for (const auto& f : fans) {
        std::set<Cone> faces;
        for (const auto& c : f.cones)
            for (std::size_t i = 0; i < c.size(); ++i)
                for (std::size_t j = i + 1; j < c.size(); ++j) faces.insert({c[i], c[j]});
        for (const auto& face : faces) {
            auto g = star_subdivision(f, face);
            auto h = remove_ray(g, g.num_rays() - 1);
            CHECK(canonical_key(h) == canonical_key(f));
        }
    }
}

TEST_CASE("product decomposition") {
    CHECK(product_decompose(fixtures::p1p1()).size() == 2);
    CHECK(product_decompose(fixtures::p2()).size() == 1);
    CHECK(product_decompose(fixtures::s2()).size() == 1);
    auto prod = product(fixtures::p2(), fixtures::p1());
    auto parts = product_decompose(prod);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].dim == 2);
    CHECK(parts[0].num_rays() == 3);
    CHECK(parts[1].dim == 1);
    CHECK(parts[1].num_rays() == 2);
    auto rejoined = product(parts[0], parts[1]);
    CHECK(rejoined.cones.size() == prod.cones.size());
    CHECK(rejoined.num_rays() == prod.num_rays());
    // A product in a sheared basis still splits.
    auto sheared = make_fan(2, {iv({1, 0}), iv({-1, 0}), iv({1, 1}), iv({-1, -1})}, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
    CHECK(product_decompose(sheared).size() == 2);
    auto triple = product(product(fixtures::p1(), fixtures::p1()), fixtures::hexagon());
    CHECK(product_decompose(triple).size() == 3);
}

TEST_CASE("divisor star fans") {
    for (std::size_t r = 0; r < 3; ++r) {
        auto d = divisor_star_fan(fixtures::p2(), r);
        CHECK(d.dim == 1);
        CHECK(d.num_rays() == 2);
        CHECK(d.cones.size() == 2);
    }
    auto e = divisor_star_fan(fixtures::s2(), 3);
    CHECK(e.dim == 1);
    CHECK(e.num_rays() == 2);
    for (std::size_t r = 0; r < 4; ++r) {
        auto d = divisor_star_fan(fixtures::p3(), r);
        CHECK(d.dim == 2);
        CHECK(d.num_rays() == 3);
        CHECK(d.cones.size() == 3);
        CHECK(is_smooth(d));
    }
    auto pt = divisor_star_fan(fixtures::p1(), 0);
    CHECK(pt.dim == 0);
    CHECK(pt.cones.size() == 1);
}
