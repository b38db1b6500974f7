#include "toricmmp/polyhedral.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace toricmmp {

bool in_cone(const std::vector<RationalVector>& gens, const RationalVector& v) {
    if (is_zero(v)) return true;
    if (gens.empty()) return false;
    const std::size_t m = v.size();
    const std::size_t k = gens.size();
    const std::size_t width = k + m + 1;  // structural, artificial, rhs
    std::vector<RationalVector> t(m, RationalVector(width, Rational(0)));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        const bool flip = v[i] < 0;
        for (std::size_t j = 0; j < k; ++j) {
            if (gens[j].size() != m) throw std::invalid_argument("in_cone: dimension mismatch");
            t[i][j] = flip ? Rational(-gens[j][i]) : gens[j][i];
        }
        t[i][k + i] = 1;
        t[i][width - 1] = flip ? Rational(-v[i]) : v[i];
        basis[i] = k + i;
    }
    // Phase-I objective: minimise the sum of artificials.
    RationalVector cost(width, Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < k; ++j) cost[j] -= t[i][j];
        cost[width - 1] -= t[i][width - 1];
    }
    for (;;) {
        std::size_t enter = width;
        for (std::size_t j = 0; j + 1 < width; ++j)
            if (cost[j] < 0) {
                enter = j;
                break;
            }
        if (enter == width) break;
        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            Rational ratio = t[i][width - 1] / t[i][enter];
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m) break;  // cannot happen: phase I is bounded below
        const Rational piv = t[leave][enter];
        for (auto& x : t[leave]) x /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            const Rational f = t[i][enter];
            for (std::size_t j = 0; j < width; ++j) t[i][j] -= f * t[leave][j];
        }
        const Rational f = cost[enter];
        for (std::size_t j = 0; j < width; ++j) cost[j] -= f * t[leave][j];
        basis[leave] = enter;
    }
    return cost[width - 1] == 0;
}

bool in_cone(const std::vector<IntVector>& gens, const IntVector& v) {
    std::vector<RationalVector> g;
    g.reserve(gens.size());
    for (const auto& x : gens) g.push_back(to_rational(x));
    return in_cone(g, to_rational(v));
}

std::vector<IntVector> cone_facets(const std::vector<IntVector>& gens_in, std::size_t dim) {
    std::vector<IntVector> gens;
    for (const auto& g : gens_in) {
        if (g.size() != dim) throw std::invalid_argument("cone_facets: dimension mismatch");
        if (!is_zero(g)) gens.push_back(primitive(g));
    }
    if (rank(gens) != dim) throw std::invalid_argument("cone_facets: generators do not span the space");
    if (dim == 0) return {};
    if (dim == 1) {
        const bool has_pos = std::any_of(gens.begin(), gens.end(), [](const IntVector& g) { return g[0] > 0; });
        const bool has_neg = std::any_of(gens.begin(), gens.end(), [](const IntVector& g) { return g[0] < 0; });
        if (has_pos && has_neg) return {};
        return {IntVector{Integer(has_pos ? 1 : -1)}};
    }

    // Initial simplicial cone.
    std::vector<std::size_t> chosen;
    std::vector<IntVector> chosen_vecs;
    for (std::size_t i = 0; i < gens.size() && chosen.size() < dim; ++i) {
        chosen_vecs.push_back(gens[i]);
        if (rank(chosen_vecs) == chosen_vecs.size())
            chosen.push_back(i);
        else
            chosen_vecs.pop_back();
    }
    const IntMatrix bt = IntMatrix::from_rows(chosen_vecs);  // rows = generators
    std::vector<IntVector> normals;
    for (std::size_t i = 0; i < dim; ++i) {
        IntVector e(dim, Integer(0));
        e[i] = 1;
        normals.push_back(primitive_integer(solve_square(bt, e)));
    }
    std::vector<std::size_t> processed = chosen;
    std::vector<bool> done(gens.size(), false);
    for (auto c : chosen) done[c] = true;

    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        if (done[gi]) continue;
        const IntVector& g = gens[gi];
        std::vector<Integer> s(normals.size());
        std::vector<std::size_t> plus, minus;
        std::vector<IntVector> next;
        for (std::size_t p = 0; p < normals.size(); ++p) {
            s[p] = dot(normals[p], g);
            if (s[p] < 0)
                minus.push_back(p);
            else {
                next.push_back(normals[p]);
                if (s[p] > 0) plus.push_back(p);
            }
        }
        if (!minus.empty()) {
            for (auto p : plus)
                for (auto n : minus) {
                    std::vector<IntVector> tight;
                    for (auto h : processed)
                        if (dot(normals[p], gens[h]) == 0 && dot(normals[n], gens[h]) == 0) tight.push_back(gens[h]);
                    if (tight.size() + 2 < dim || rank(tight) != dim - 2) continue;
                    IntVector combo(dim);
                    for (std::size_t c = 0; c < dim; ++c) combo[c] = s[p] * normals[n][c] - s[n] * normals[p][c];
                    next.push_back(primitive(std::move(combo)));
                }
            normals = std::move(next);
        }
        processed.push_back(gi);
        done[gi] = true;
    }
    std::sort(normals.begin(), normals.end());
    normals.erase(std::unique(normals.begin(), normals.end()), normals.end());
    return normals;
}

std::vector<ConeFace> cone_faces(const std::vector<IntVector>& gens, std::size_t dim, std::size_t face_dim) {
    if (face_dim > dim) return {};
    std::vector<std::size_t> all;
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (!is_zero(gens[i])) all.push_back(i);
    if (face_dim == dim) return {ConeFace{all, dim}};

    const auto normals = cone_facets(gens, dim);
    std::vector<std::vector<std::size_t>> tight_sets;
    for (const auto& a : normals) {
        std::vector<std::size_t> t;
        for (auto i : all)
            if (dot(a, gens[i]) == 0) t.push_back(i);
        tight_sets.push_back(std::move(t));
    }
    auto rank_of = [&](const std::vector<std::size_t>& idx) {
        std::vector<IntVector> v;
        for (auto i : idx) v.push_back(gens[i]);
        return rank(v);
    };

    std::set<std::vector<std::size_t>> current(tight_sets.begin(), tight_sets.end());
    for (std::size_t d = dim - 1; d > face_dim; --d) {
        std::set<std::vector<std::size_t>> next;
        for (const auto& f : current)
            for (const auto& t : tight_sets) {
                std::vector<std::size_t> inter;
                std::set_intersection(f.begin(), f.end(), t.begin(), t.end(), std::back_inserter(inter));
                if (inter.size() == f.size()) continue;
                if (rank_of(inter) == d - 1) next.insert(std::move(inter));
            }
        current = std::move(next);
    }
    std::vector<ConeFace> out;
    for (const auto& f : current) out.push_back(ConeFace{f, face_dim});
    return out;
}

}  // namespace toricmmp
