#include "doctest.h"
#include "fixtures.hpp"
#include "toricmmp/mori.hpp"

#include <algorithm>
#include <set>

using namespace toricmmp;
using oracle::iv;

namespace {

const ExtremalRay& ray_with(const std::vector<ExtremalRay>& rs, const IntVector& g) {
    for (const auto& r : rs)
        if (r.generator == g) return r;
    throw std::runtime_error("no such ray");
}

}  // namespace

TEST_CASE("mori generators") {
    CHECK(mori_generators(fixtures::s2()).size() == 5);
    CHECK(mori_generators(fixtures::p2()) == std::vector<IntVector>{iv({1, 1, 1})});
    auto bl = mori_generators(fixtures::bl1p2());
    CHECK(bl.size() == 3);
    CHECK(std::find(bl.begin(), bl.end(), iv({0, 0, 1, 1})) != bl.end());
}

TEST_CASE("extremal rays") {
    auto rs = extremal_rays(fixtures::s2());
    REQUIRE(rs.size() == 3);
    std::set<IntVector> gens;
    for (const auto& r : rs) gens.insert(r.generator);
    CHECK(gens.count(iv({0, -1, 0, 1, 1})));
    CHECK(gens.count(iv({1, 1, 0, -1, 0})));
    CHECK(gens.count(iv({0, 1, 1, 0, -1})));
    CHECK(extremal_rays(fixtures::p2()).size() == 1);
    CHECK(extremal_rays(fixtures::p1p1()).size() == 2);
    for (const auto& r : rs) {
        CHECK(r.kind == ContractionKind::divisorial);
        CHECK(r.k_degree_sign == 1);
    }
}

TEST_CASE("classification and contraction") {
    const auto s2 = fixtures::s2();
    auto rs = extremal_rays(s2);
    const auto& e = ray_with(rs, iv({0, 1, 1, 0, -1}));
    auto info = classify_contraction(s2, e);
    CHECK(info.kind == ContractionKind::divisorial);
    CHECK(info.removed_ray == 4);
    CHECK(info.smooth_codim2);
    CHECK(anticanonical_degree(e.generator) == 1);
    auto c = contract(s2, e);
    CHECK(canonical_key(c.target) == canonical_key(fixtures::bl1p2()));
    CHECK(intersection_space(c.target).rho == intersection_space(s2).rho - 1);

    const auto bl = fixtures::bl1p2();
    const auto fiber = ray_of_class(bl, iv({0, 0, 1, 1}));
    auto fi = classify_contraction(bl, fiber);
    CHECK(fi.kind == ContractionKind::fiber);
    REQUIRE(fi.kernel_basis.size() == 1);
    CHECK(fi.kernel_basis[0] == iv({1, 1}));
    REQUIRE(fi.quotient.rows() == 1);
    auto q = fi.quotient.row(0);
    CHECK(abs(dot(q, iv({1, 0}))) == 1);
    CHECK(dot(q, iv({1, 0})) == -dot(q, iv({0, 1})));
    auto fc = contract(bl, fiber);
    CHECK(fc.target.dim == 1);
    CHECK(fc.target.num_rays() == 2);
    CHECK_FALSE(fc.ray_image[2]);
    CHECK_FALSE(fc.ray_image[3]);
    REQUIRE(fc.ray_image[0]);
    REQUIRE(fc.ray_image[1]);
    CHECK(*fc.ray_image[0] != *fc.ray_image[1]);
    CHECK(fc.lattice_map * iv({1, 0}) == IntVector{-(fc.lattice_map * iv({0, 1}))[0]});

    auto p2r = extremal_rays(fixtures::p2());
    auto pc = contract(fixtures::p2(), p2r[0]);
    CHECK(pc.target.dim == 0);
    CHECK(intersection_space(pc.target).rho == 0);
}

TEST_CASE("flip on the circuit fixture") {
    const auto f = fixtures::circuit3();
    // c + d - a - b = 0
    const auto r = ray_of_class(f, iv({-1, -1, 1, 1, 0, 0, 0}));
    REQUIRE(r.walls.size() == 1);
    auto info = classify_contraction(f, r);
    CHECK(info.kind == ContractionKind::small);
    CHECK(info.j_plus == Cone{2, 3});
    CHECK(info.j_minus == Cone{0, 1});
    CHECK_THROWS_AS(contract(f, r), FanError);
    auto g = flip(f, r);
    CHECK(std::find(g.cones.begin(), g.cones.end(), Cone{0, 2, 3}) != g.cones.end());
    CHECK(std::find(g.cones.begin(), g.cones.end(), Cone{1, 2, 3}) != g.cones.end());
    CHECK(std::find(g.cones.begin(), g.cones.end(), Cone{0, 1, 2}) == g.cones.end());
    CHECK(g.rays == f.rays);
    CHECK(intersection_space(g).rho == intersection_space(f).rho);
    // The flipped class is the negative relation.
    const auto back = ray_of_class(g, iv({1, 1, -1, -1, 0, 0, 0}));
    REQUIRE(back.walls.size() == 1);
    CHECK(pair(prime_divisor(f, 0), r.generator) == -1);
    CHECK(pair(prime_divisor(g, 0), back.generator) == 1);
    auto h = flip(g, back);
    CHECK(canonical_key(h) == canonical_key(f));
}

TEST_CASE("mori cone faces") {
    auto faces = mori_faces(fixtures::s2(), 2);
    CHECK(faces.size() == 3);
    auto gens = mori_generators(fixtures::s2());
    for (const auto& face : faces) {
        REQUIRE(face.generators.size() == 1);
        CHECK(anticanonical_degree(gens[face.generators[0]]) == 1);
    }
    CHECK(mori_faces(fixtures::p2(), 0).size() == 1);
    CHECK(mori_faces(fixtures::p1p1(), 1).size() == 2);
}

TEST_CASE("extremal rays are faces and classification is exhaustive") {
    std::vector<Fan> fans = fixtures::del_pezzo_surfaces();
    fans.push_back(fixtures::p3());
    fans.push_back(product(fixtures::s2(), fixtures::p1()));
    fans.push_back(product(fixtures::p2(), fixtures::p1()));
    for (const auto& f : fans) {
        const auto rs = extremal_rays(f);
        const auto space = intersection_space(f);
        CHECK(mori_faces(f, space.rho - 1).size() == rs.size());
        for (const auto& r : rs) {
            auto info = classify_contraction(f, r);
            CHECK(info.kind == r.kind);
            if (info.kind != ContractionKind::small) {
                auto c = contract(f, r);
                CHECK(intersection_space(c.target).rho + 1 == space.rho);
            }
            if (info.smooth_codim2) CHECK(anticanonical_degree(r.generator) == 1);
        }
    }
}
