#pragma once

// Small named fans used across the test suite.

#include "oracles.hpp"
#include "toricmmp/fan.hpp"

namespace fixtures {

using oracle::iv;
using toricmmp::Fan;
using toricmmp::make_fan;

inline Fan p1() { return make_fan(1, {iv({1}), iv({-1})}, {{0}, {1}}); }

inline Fan p2() { return make_fan(2, {iv({1, 0}), iv({0, 1}), iv({-1, -1})}, {{0, 1}, {1, 2}, {0, 2}}); }

inline Fan p1p1() {
    return make_fan(2, {iv({1, 0}), iv({-1, 0}), iv({0, 1}), iv({0, -1})}, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
}

/// Blow-up of P^2 at a point: v1..v4 = (1,0),(0,1),(-1,-1),(1,1).
inline Fan bl1p2() {
    return make_fan(2, {iv({1, 0}), iv({0, 1}), iv({-1, -1}), iv({1, 1})}, {{0, 3}, {3, 1}, {1, 2}, {2, 0}});
}

/// Blow-up of P^2 at two points: v1..v5 = (1,0),(0,1),(-1,-1),(1,1),(-1,0).
inline Fan s2() {
    return make_fan(2, {iv({1, 0}), iv({0, 1}), iv({-1, -1}), iv({1, 1}), iv({-1, 0})},
                    {{0, 3}, {3, 1}, {1, 4}, {4, 2}, {2, 0}});
}

inline Fan hexagon() {
    return make_fan(2, {iv({1, 0}), iv({1, 1}), iv({0, 1}), iv({-1, 0}), iv({-1, -1}), iv({0, -1})},
                    {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
}

inline std::vector<Fan> del_pezzo_surfaces() { return {p2(), p1p1(), bl1p2(), s2(), hexagon()}; }

inline Fan p3() {
    return make_fan(3, {iv({1, 0, 0}), iv({0, 1, 0}), iv({0, 0, 1}), iv({-1, -1, -1})},
                    {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

/// Rays a,b,c,d,-a,-b,-c with d = (1,1,-1), so c + d - a - b = 0; contains
/// the cones abc and abd.
inline Fan circuit3() {
    return make_fan(3,
                    {iv({1, 0, 0}), iv({0, 1, 0}), iv({0, 0, 1}), iv({1, 1, -1}), iv({-1, 0, 0}), iv({0, -1, 0}),
                     iv({0, 0, -1})},
                    {{0, 1, 2}, {0, 1, 3}, {0, 2, 5}, {0, 5, 6}, {0, 3, 6}, {1, 2, 4}, {1, 4, 6}, {1, 3, 6}, {2, 4, 5},
                     {4, 5, 6}});
}

}  // namespace fixtures
