#include "doctest.h"
#include "oracles.hpp"
#include "toricmmp/polyhedral.hpp"

#include <random>

using namespace toricmmp;
using oracle::iv;

TEST_CASE("cone membership") {
    std::vector<IntVector> g = {iv({1, 0}), iv({1, 1})};
    CHECK(in_cone(g, iv({2, 1})));
    CHECK(in_cone(g, iv({0, 0})));
    CHECK_FALSE(in_cone(g, iv({0, 1})));
    CHECK_FALSE(in_cone(g, iv({-1, 0})));
    std::vector<IntVector> s2 = {iv({0, -1, 0, 1, 1}), iv({1, 1, 0, -1, 0}), iv({0, 1, 1, 0, -1})};
    CHECK(in_cone(s2, iv({1, 0, 0, 0, 1})));
    CHECK(in_cone(s2, iv({0, 0, 1, 1, 0})));
    CHECK_FALSE(in_cone(std::vector<IntVector>{iv({1, 0, 0, 0, 1}), iv({0, 0, 1, 1, 0})}, iv({0, 1, 1, 0, -1})));
}

TEST_CASE("facets of simple cones") {
    auto f = cone_facets({iv({1, 0}), iv({0, 1})}, 2);
    CHECK(f == std::vector<IntVector>{iv({0, 1}), iv({1, 0})});
    // Square pyramid: 4 facets.
    std::vector<IntVector> pyr = {iv({1, 1, 1}), iv({-1, 1, 1}), iv({-1, -1, 1}), iv({1, -1, 1})};
    auto pf = cone_facets(pyr, 3);
    CHECK(pf.size() == 4);
    CHECK(cone_faces(pyr, 3, 1).size() == 4);
    CHECK(cone_faces(pyr, 3, 2).size() == 4);
    CHECK(cone_faces(pyr, 3, 0).size() == 1);
}

TEST_CASE("facets agree with brute-force enumeration") {
    // Oracle: a primitive normal is a facet iff it is orthogonal to a rank
    // d-1 subset of generators and nonnegative on all of them.
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int t = 0; t < 60; ++t) {
        std::vector<IntVector> g;
        g.push_back(iv({1, 0, 0}));
        g.push_back(iv({0, 1, 0}));
        g.push_back(iv({0, 0, 1}));
        for (int k = 0; k < 4; ++k) {
            IntVector v = iv({d(rng), d(rng), d(rng)});
            if (!is_zero(v)) g.push_back(v);
        }
        std::vector<IntVector> expected;
        for (std::size_t i = 0; i < g.size(); ++i)
            for (std::size_t j = i + 1; j < g.size(); ++j) {
                IntVector n = iv({0, 0, 0});
                n[0] = g[i][1] * g[j][2] - g[i][2] * g[j][1];
                n[1] = g[i][2] * g[j][0] - g[i][0] * g[j][2];
                n[2] = g[i][0] * g[j][1] - g[i][1] * g[j][0];
                if (is_zero(n)) continue;
                n = primitive(n);
                for (int sign : {1, -1}) {
                    IntVector m = n;
                    if (sign < 0)
                        for (auto& x : m) x = -x;
                    bool ok = true;
                    for (const auto& h : g)
                        if (dot(m, h) < 0) ok = false;
                    if (ok) expected.push_back(m);
                }
            }
        std::sort(expected.begin(), expected.end());
        expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
        CHECK(cone_facets(g, 3) == expected);
    }
}
