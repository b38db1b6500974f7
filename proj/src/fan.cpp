#include "toricmmp/fan.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

namespace toricmmp {

namespace {

IntMatrix cone_matrix(const Fan& f, const Cone& c) {
    std::vector<IntVector> cols;
    for (auto i : c) cols.push_back(f.rays[i]);
    return IntMatrix::from_columns(cols, f.dim);
}

Cone without(const Cone& c, std::size_t x) {
    Cone out;
    for (auto i : c)
        if (i != x) out.push_back(i);
    return out;
}

bool contains(const Cone& c, std::size_t x) { return std::binary_search(c.begin(), c.end(), x); }

bool is_subset(const Cone& small, const Cone& big) { return std::includes(big.begin(), big.end(), small.begin(), small.end()); }

struct RidgeEntry {
    std::size_t cone;
    std::size_t opposite;
};

std::map<Cone, std::vector<RidgeEntry>> ridge_map(const Fan& f) {
    std::map<Cone, std::vector<RidgeEntry>> out;
    for (std::size_t k = 0; k < f.cones.size(); ++k)
        for (auto r : f.cones[k]) out[without(f.cones[k], r)].push_back({k, r});
    return out;
}

// Point on the moment curve that avoids every facet hyperplane of every cone.
bool covered_exactly_once(const Fan& f) {
    for (long t = 2; t < 10000; ++t) {
        IntVector p(f.dim);
        Integer x = 1;
        for (std::size_t i = 0; i < f.dim; ++i) {
            p[i] = x;
            x *= t;
        }
        bool generic = true;
        std::size_t hits = 0;
        for (const auto& c : f.cones) {
            auto lambda = solve_square(cone_matrix(f, c), p);
            bool inside = true;
            for (const auto& l : lambda) {
                if (l == 0) generic = false;
                if (l <= 0) inside = false;
            }
            if (!generic) break;
            if (inside) ++hits;
        }
        if (generic) return hits == 1;
    }
    throw FanError("could not find a generic point");
}

}  // namespace

std::size_t Fan::index_of_label(int label) const {
    auto it = std::find(labels.begin(), labels.end(), label);
    return static_cast<std::size_t>(it - labels.begin());
}

int Fan::max_label() const { return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()); }

IntMatrix Fan::ray_matrix() const { return IntMatrix::from_columns(rays, dim); }

Fan point_fan() {
    Fan f;
    f.cones = {Cone{}};
    f.complete = true;
    return f;
}

Fan make_fan(std::size_t dim, std::vector<IntVector> rays, std::vector<Cone> cones, std::vector<int> labels,
             bool require_complete) {
    Fan f;
    f.dim = dim;
    f.rays = std::move(rays);
    if (labels.empty()) {
        labels.resize(f.rays.size());
        std::iota(labels.begin(), labels.end(), 1);
    }
    f.labels = std::move(labels);
    if (f.labels.size() != f.rays.size()) throw FanError("label count does not match ray count");
    if (std::set<int>(f.labels.begin(), f.labels.end()).size() != f.labels.size()) throw FanError("duplicate ray labels");

    if (dim == 0) {
        if (!f.rays.empty() || cones.size() != 1 || !cones[0].empty()) throw FanError("malformed zero-dimensional fan");
        f.cones = std::move(cones);
        f.complete = true;
        return f;
    }
    for (std::size_t i = 0; i < f.rays.size(); ++i) {
        const auto& r = f.rays[i];
        if (r.size() != dim) throw FanError("ray " + std::to_string(f.labels[i]) + " has wrong length");
        if (is_zero(r)) throw FanError("ray " + std::to_string(f.labels[i]) + " is zero");
        if (!is_primitive(r)) throw FanError("ray " + std::to_string(f.labels[i]) + " is not primitive: " + to_string(r));
    }
    {
        auto sorted = f.rays;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw FanError("repeated ray");
    }
    std::vector<bool> used(f.rays.size(), false);
    for (auto& c : cones) {
        std::sort(c.begin(), c.end());
        if (c.size() != dim) throw FanError("cone of wrong size (only simplicial maximal cones are supported)");
        if (std::adjacent_find(c.begin(), c.end()) != c.end()) throw FanError("cone repeats a ray");
        for (auto i : c) {
            if (i >= f.rays.size()) throw FanError("cone references a missing ray");
            used[i] = true;
        }
    }
    std::sort(cones.begin(), cones.end());
    if (std::adjacent_find(cones.begin(), cones.end()) != cones.end()) throw FanError("repeated cone");
    f.cones = std::move(cones);
    for (std::size_t i = 0; i < used.size(); ++i)
        if (!used[i]) throw FanError("ray " + std::to_string(f.labels[i]) + " lies in no cone");
    for (const auto& c : f.cones)
        if (determinant(cone_matrix(f, c)) == 0) throw FanError("cone generators are linearly dependent");

    bool all_ridges_shared = true;
    for (const auto& [ridge, entries] : ridge_map(f)) {
        if (entries.size() > 2) throw FanError("ridge shared by more than two cones");
        if (entries.size() == 1) {
            all_ridges_shared = false;
            continue;
        }
        std::vector<IntVector> rr;
        for (auto i : ridge) rr.push_back(f.rays[i]);
        const auto normal = integer_kernel_basis(IntMatrix::from_rows(rr, dim));
        const Integer sa = dot(normal.at(0), f.rays[entries[0].opposite]);
        const Integer sb = dot(normal.at(0), f.rays[entries[1].opposite]);
        if (sgn(sa) * sgn(sb) >= 0) throw FanError("adjacent cones overlap across a ridge");
    }
    f.complete = all_ridges_shared && covered_exactly_once(f);
    if (require_complete && !f.complete) throw FanError("fan is not complete");
    return f;
}

std::vector<Wall> walls(const Fan& f) {
    if (!f.complete) throw FanError("walls: fan is not complete");
    std::vector<Wall> out;
    for (const auto& [ridge, entries] : ridge_map(f)) {
        Wall w;
        w.ridge = ridge;
        w.side_a = entries[0].cone;
        w.side_b = entries[1].cone;
        w.opposite_a = entries[0].opposite;
        w.opposite_b = entries[1].opposite;
        if (w.opposite_b < w.opposite_a) {
            std::swap(w.side_a, w.side_b);
            std::swap(w.opposite_a, w.opposite_b);
        }
        std::vector<IntVector> cols = {f.rays[w.opposite_a], f.rays[w.opposite_b]};
        for (auto i : ridge) cols.push_back(f.rays[i]);
        auto k = integer_kernel_basis(IntMatrix::from_columns(cols, f.dim));
        if (k.size() != 1) throw FanError("degenerate wall");
        w.relation.assign(f.num_rays(), Integer(0));
        w.relation[w.opposite_a] = k[0][0];
        w.relation[w.opposite_b] = k[0][1];
        for (std::size_t j = 0; j < ridge.size(); ++j) w.relation[ridge[j]] = k[0][j + 2];
        if (w.relation[w.opposite_a] < 0)
            for (auto& x : w.relation) x = -x;
        out.push_back(std::move(w));
    }
    return out;
}

Integer cone_multiplicity(const Fan& f, const Cone& c) { return abs(determinant(cone_matrix(f, c))); }

bool is_smooth(const Fan& f) {
    return std::all_of(f.cones.begin(), f.cones.end(), [&](const Cone& c) { return cone_multiplicity(f, c) == 1; });
}

PropertyFlags local_properties(const Fan& f) {
    PropertyFlags p;
    p.complete = f.complete;
    p.smooth = p.terminal = p.canonical = p.gorenstein = true;
    for (const auto& c : f.cones) {
        const IntMatrix m = cone_matrix(f, c);
        const Integer mult = abs(determinant(m));
        if (mult != 1) p.smooth = false;
        auto m_dual = solve_square(m.transpose(), IntVector(f.dim, Integer(1)));
        for (const auto& x : m_dual)
            if (x.get_den() != 1) p.gorenstein = false;
        if (mult == 1) continue;
        // Walk the finite group Z^n / (cone lattice) via Smith form and test
        // each parallelepiped representative's height sum(lambda).
        auto snf = smith_normal_form(m);
        std::vector<Integer> d(f.dim);
        for (std::size_t i = 0; i < f.dim; ++i) d[i] = snf.S(i, i);
        IntVector y(f.dim, Integer(0));
        for (;;) {
            std::size_t pos = 0;
            while (pos < f.dim) {
                y[pos] += 1;
                if (y[pos] < d[pos]) break;
                y[pos] = 0;
                ++pos;
            }
            if (pos == f.dim) break;
            // U m V = S, so a lattice point x = U^-1 y has cone coordinates
            // V S^-1 y, which we obtain directly by solving m lambda = x.
            auto x = solve_square(snf.U, y);
            IntVector xi;
            for (const auto& e : x) xi.push_back(e.get_num());
            auto lambda = solve_square(m, xi);
            Rational height = 0;
            for (auto& l : lambda) {
                Integer fl;
                mpz_fdiv_q(fl.get_mpz_t(), l.get_num_mpz_t(), l.get_den_mpz_t());
                height += l - fl;
            }
            if (height <= 1) p.terminal = false;
            if (height < 1) p.canonical = false;
        }
    }
    p.fano = false;
    if (f.complete) {
        p.fano = true;
        for (const auto& w : walls(f)) {
            Integer s = 0;
            for (const auto& x : w.relation) s += x;
            if (s <= 0) p.fano = false;
        }
    }
    return p;
}

Fan fan_from_polytope(const std::vector<IntVector>& vertices) {
    if (vertices.empty()) throw FanError("no vertices");
    const std::size_t n = vertices[0].size();
    if (n == 0) throw FanError("zero-dimensional vertices");
    for (const auto& v : vertices)
        if (v.size() != n) throw FanError("vertices of mixed dimension");
    const std::size_t m = vertices.size();
    std::vector<Cone> facets;
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    auto next_subset = [&]() {
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (idx[i] < m - n + i) {
                ++idx[i];
                for (std::size_t j = i + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
                return true;
            }
        }
        return false;
    };
    if (m >= n) do {
            std::vector<IntVector> rows;
            for (auto i : idx) rows.push_back(vertices[i]);
            const IntMatrix a = IntMatrix::from_rows(rows);
            if (determinant(a) == 0) continue;
            auto u = solve_square(a, IntVector(n, Integer(1)));
            bool facet = true, extra_on_plane = false;
            for (std::size_t j = 0; j < m && facet; ++j) {
                if (std::binary_search(idx.begin(), idx.end(), j)) continue;
                const Rational val = dot(u, vertices[j]);
                if (val > 1) facet = false;
                if (val == 1) extra_on_plane = true;
            }
            if (!facet) continue;
            if (extra_on_plane) throw FanError("polytope has a non-simplicial facet");
            facets.push_back(idx);
        } while (next_subset());
    try {
        return make_fan(n, vertices, facets, {}, true);
    } catch (const FanError& e) {
        const std::string what = e.what();
        if (what == "fan is not complete" || what.find("lies in no cone") != std::string::npos || facets.empty())
            throw FanError("origin is not in the interior of the convex hull (" + what + ")");
        throw;
    }
}

bool is_face(const Fan& f, const Cone& c) {
    return std::any_of(f.cones.begin(), f.cones.end(), [&](const Cone& s) { return is_subset(c, s); });
}

Fan star_subdivision(const Fan& f, Cone c) {
    std::sort(c.begin(), c.end());
    if (c.size() < 2) throw FanError("star subdivision needs a cone with at least two rays");
    if (std::adjacent_find(c.begin(), c.end()) != c.end() || !is_face(f, c))
        throw FanError("star subdivision: not a face of the fan");
    IntVector u(f.dim, Integer(0));
    for (auto i : c)
        for (std::size_t k = 0; k < f.dim; ++k) u[k] += f.rays[i][k];
    u = primitive(u);
    auto rays = f.rays;
    auto labels = f.labels;
    const std::size_t ui = rays.size();
    rays.push_back(u);
    labels.push_back(f.max_label() + 1);
    std::vector<Cone> cones;
    for (const auto& s : f.cones) {
        if (!is_subset(c, s)) {
            cones.push_back(s);
            continue;
        }
        for (auto i : c) {
            Cone t = without(s, i);
            t.push_back(ui);
            cones.push_back(t);
        }
    }
    return make_fan(f.dim, rays, cones, labels, f.complete);
}

namespace {

std::optional<Fan> reglue(const Fan& f, std::size_t r, const IntVector& rel) {
    if (rel.size() != f.num_rays() || rel[r] >= 0) return std::nullopt;
    Cone plus;
    for (std::size_t i = 0; i < rel.size(); ++i) {
        if (i != r && rel[i] < 0) return std::nullopt;
        if (rel[i] > 0) plus.push_back(i);
    }
    Cone s = plus;
    s.push_back(r);
    std::sort(s.begin(), s.end());
    std::map<Cone, std::set<std::size_t>> groups;
    std::vector<Cone> cones;
    for (const auto& sigma : f.cones) {
        if (!contains(sigma, r)) {
            cones.push_back(sigma);
            continue;
        }
        Cone inter, rho;
        std::set_intersection(sigma.begin(), sigma.end(), s.begin(), s.end(), std::back_inserter(inter));
        std::set_difference(sigma.begin(), sigma.end(), s.begin(), s.end(), std::back_inserter(rho));
        if (inter.size() + 1 != s.size()) return std::nullopt;
        Cone missing;
        std::set_difference(s.begin(), s.end(), inter.begin(), inter.end(), std::back_inserter(missing));
        groups[rho].insert(missing[0]);
    }
    for (const auto& [rho, ids] : groups) {
        if (ids.size() != plus.size()) return std::nullopt;
        Cone c = rho;
        c.insert(c.end(), plus.begin(), plus.end());
        cones.push_back(c);
    }
    std::vector<IntVector> rays;
    std::vector<int> labels;
    for (std::size_t i = 0; i < f.num_rays(); ++i)
        if (i != r) {
            rays.push_back(f.rays[i]);
            labels.push_back(f.labels[i]);
        }
    for (auto& c : cones)
        for (auto& i : c)
            if (i > r) --i;
    try {
        return make_fan(f.dim, rays, cones, labels, f.complete);
    } catch (const FanError&) {
        return std::nullopt;
    }
}

}  // namespace

Fan remove_ray(const Fan& f, std::size_t r) {
    if (r >= f.num_rays()) throw FanError("remove_ray: no such ray");
    std::set<IntVector> tried;
    for (const auto& w : walls(f)) {
        if (!contains(w.ridge, r) || !tried.insert(w.relation).second) continue;
        if (auto g = reglue(f, r, w.relation)) return *g;
    }
    throw FanError("remove_ray: star of ray " + std::to_string(f.labels[r]) + " does not re-glue into a simplicial fan");
}

Fan remove_ray_along(const Fan& f, std::size_t r, const IntVector& relation) {
    if (r >= f.num_rays()) throw FanError("remove_ray: no such ray");
    if (auto g = reglue(f, r, relation)) return *g;
    throw FanError("remove_ray: star of ray " + std::to_string(f.labels[r]) + " does not re-glue along the given relation");
}

namespace {

std::optional<std::vector<Fan>> split_along(const Fan& f, const std::vector<std::vector<std::size_t>>& groups) {
    std::vector<std::vector<IntVector>> bases;
    std::vector<IntVector> all;
    for (const auto& g : groups) {
        std::vector<IntVector> vs;
        for (auto i : g) vs.push_back(f.rays[i]);
        auto b = saturated_span_basis(vs, f.dim);
        all.insert(all.end(), b.begin(), b.end());
        bases.push_back(std::move(b));
    }
    if (all.size() != f.dim || abs(determinant(IntMatrix::from_rows(all))) != 1) return std::nullopt;
    std::vector<std::size_t> group_of(f.num_rays());
    for (std::size_t j = 0; j < groups.size(); ++j)
        for (auto i : groups[j]) group_of[i] = j;
    std::vector<std::set<Cone>> parts(groups.size());
    for (const auto& c : f.cones) {
        std::vector<Cone> split(groups.size());
        for (auto i : c) split[group_of[i]].push_back(i);
        for (std::size_t j = 0; j < groups.size(); ++j) {
            if (split[j].size() != bases[j].size()) return std::nullopt;
            parts[j].insert(split[j]);
        }
    }
    std::size_t count = 1;
    for (const auto& p : parts) count *= p.size();
    if (count != f.cones.size()) return std::nullopt;
    std::vector<Fan> out;
    for (std::size_t j = 0; j < groups.size(); ++j) {
        std::vector<RationalVector> brows;
        const std::size_t k = bases[j].size();
        // Coordinates c with sum_t c_t * basis_t = v: solve B^T c = v.
        for (std::size_t row = 0; row < f.dim; ++row) {
            RationalVector r(k);
            for (std::size_t t = 0; t < k; ++t) r[t] = bases[j][t][row];
            brows.push_back(r);
        }
        std::vector<IntVector> rays;
        std::vector<int> labels;
        std::map<std::size_t, std::size_t> reindex;
        for (auto i : groups[j]) {
            auto c = solve(brows, to_rational(f.rays[i]));
            if (!c) return std::nullopt;
            IntVector v;
            for (const auto& x : *c) {
                if (x.get_den() != 1) return std::nullopt;
                v.push_back(x.get_num());
            }
            reindex[i] = rays.size();
            rays.push_back(v);
            labels.push_back(f.labels[i]);
        }
        std::vector<Cone> cones;
        for (const auto& p : parts[j]) {
            Cone c;
            for (auto i : p) c.push_back(reindex[i]);
            cones.push_back(c);
        }
        try {
            out.push_back(make_fan(k, rays, cones, labels, f.complete));
        } catch (const FanError&) {
            return std::nullopt;
        }
    }
    return out;
}

}  // namespace

std::vector<Fan> product_decompose(const Fan& f) {
    if (f.dim == 0 || !f.complete) return {f};
    std::vector<std::size_t> parent(f.num_rays());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& w : walls(f)) {
        std::size_t first = f.num_rays();
        for (std::size_t i = 0; i < w.relation.size(); ++i)
            if (w.relation[i] != 0) {
                if (first == f.num_rays())
                    first = i;
                else
                    parent[find(i)] = find(first);
            }
    }
    std::map<std::size_t, std::vector<std::size_t>> comp_map;
    for (std::size_t i = 0; i < f.num_rays(); ++i) comp_map[find(i)].push_back(i);
    std::vector<std::vector<std::size_t>> comps;
    for (auto& [root, members] : comp_map) comps.push_back(members);
    std::sort(comps.begin(), comps.end());
    if (comps.size() == 1) return {f};

    // Enumerate set partitions of the components (restricted growth strings),
    // finest first, and keep the first one that is a genuine product.
    const std::size_t k = comps.size();
    std::vector<std::vector<std::size_t>> assignments;
    std::vector<std::size_t> a(k, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t maxb) {
        if (pos == k) {
            assignments.push_back(a);
            return;
        }
        for (std::size_t b = 0; b <= maxb + 1 && b <= pos; ++b) {
            a[pos] = b;
            rec(pos + 1, std::max(maxb, b));
        }
    };
    a[0] = 0;
    if (k > 0) rec(1, 0);
    auto blocks = [](const std::vector<std::size_t>& as) { return *std::max_element(as.begin(), as.end()) + 1; };
    std::stable_sort(assignments.begin(), assignments.end(),
                     [&](const auto& x, const auto& y) { return blocks(x) > blocks(y); });
    for (const auto& as : assignments) {
        const std::size_t nb = blocks(as);
        if (nb == 1) break;
        std::vector<std::vector<std::size_t>> groups(nb);
        for (std::size_t c = 0; c < k; ++c) groups[as[c]].insert(groups[as[c]].end(), comps[c].begin(), comps[c].end());
        for (auto& g : groups) std::sort(g.begin(), g.end());
        std::sort(groups.begin(), groups.end());
        if (auto parts = split_along(f, groups)) return *parts;
    }
    return {f};
}

Fan divisor_star_fan(const Fan& f, std::size_t r) {
    if (r >= f.num_rays()) throw FanError("divisor_star_fan: no such ray");
    const IntMatrix q = quotient_map({f.rays[r]}, f.dim);
    std::set<std::size_t> adjacent;
    for (const auto& c : f.cones)
        if (contains(c, r))
            for (auto i : c)
                if (i != r) adjacent.insert(i);
    std::map<std::size_t, std::size_t> reindex;
    std::vector<IntVector> rays;
    std::vector<int> labels;
    for (auto i : adjacent) {
        reindex[i] = rays.size();
        rays.push_back(primitive(q * f.rays[i]));
        labels.push_back(f.labels[i]);
    }
    std::vector<Cone> cones;
    for (const auto& c : f.cones)
        if (contains(c, r)) {
            Cone t;
            for (auto i : c)
                if (i != r) t.push_back(reindex[i]);
            cones.push_back(t);
        }
    return make_fan(f.dim - 1, rays, cones, labels, f.complete);
}

Fan product(const Fan& a, const Fan& b) {
    const std::size_t n = a.dim + b.dim;
    std::vector<IntVector> rays;
    std::vector<int> labels;
    for (std::size_t i = 0; i < a.num_rays(); ++i) {
        IntVector v = a.rays[i];
        v.resize(n, Integer(0));
        rays.push_back(v);
        labels.push_back(a.labels[i]);
    }
    const int shift = a.max_label();
    for (std::size_t i = 0; i < b.num_rays(); ++i) {
        IntVector v(a.dim, Integer(0));
        v.insert(v.end(), b.rays[i].begin(), b.rays[i].end());
        rays.push_back(v);
        labels.push_back(b.labels[i] + shift);
    }
    std::vector<Cone> cones;
    for (const auto& s : a.cones)
        for (const auto& t : b.cones) {
            Cone c = s;
            for (auto i : t) c.push_back(i + a.num_rays());
            cones.push_back(c);
        }
    if (n == 0) return point_fan();
    return make_fan(n, rays, cones, labels, a.complete && b.complete);
}

std::string canonical_key(const Fan& f) {
    std::vector<std::size_t> order(f.num_rays());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        if (f.rays[x] != f.rays[y]) return f.rays[x] < f.rays[y];
        return f.labels[x] < f.labels[y];
    });
    std::vector<std::size_t> pos(f.num_rays());
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    std::ostringstream os;
    os << f.dim << "|";
    for (auto i : order) os << f.labels[i] << ":" << to_string(f.rays[i]) << ";";
    std::vector<Cone> cones;
    for (const auto& c : f.cones) {
        Cone t;
        for (auto i : c) t.push_back(pos[i]);
        std::sort(t.begin(), t.end());
        cones.push_back(t);
    }
    std::sort(cones.begin(), cones.end());
    os << "|";
    for (const auto& c : cones) {
        for (auto i : c) os << i << ",";
        os << ";";
    }
    return os.str();
}

std::string to_string(const Fan& f) {
    std::ostringstream os;
    os << "fan(dim=" << f.dim << ", rays=[";
    for (std::size_t i = 0; i < f.num_rays(); ++i) os << (i ? ", " : "") << f.labels[i] << ":" << to_string(f.rays[i]);
    os << "], cones=[";
    for (std::size_t k = 0; k < f.cones.size(); ++k) {
        os << (k ? ", " : "") << "{";
        for (std::size_t j = 0; j < f.cones[k].size(); ++j) os << (j ? "," : "") << f.labels[f.cones[k][j]];
        os << "}";
    }
    os << "])";
    return os.str();
}

}  // namespace toricmmp
