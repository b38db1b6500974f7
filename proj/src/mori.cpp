#include "toricmmp/mori.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace toricmmp {

namespace {

ContractionKind kind_of(const IntVector& rel) {
    std::size_t neg = 0;
    for (const auto& x : rel)
        if (x < 0) ++neg;
    if (neg == 0) return ContractionKind::fiber;
    if (neg == 1) return ContractionKind::divisorial;
    return ContractionKind::small;
}

bool contains(const Cone& c, std::size_t x) { return std::binary_search(c.begin(), c.end(), x); }

}  // namespace

std::string to_string(ContractionKind k) {
    switch (k) {
        case ContractionKind::fiber: return "fiber";
        case ContractionKind::divisorial: return "divisorial";
        case ContractionKind::small: return "small";
    }
    return "?";
}

std::vector<IntVector> mori_generators(const Fan& f) {
    std::set<IntVector> s;
    for (const auto& w : walls(f)) s.insert(w.relation);
    return {s.begin(), s.end()};
}

ExtremalRay ray_of_class(const Fan& f, const IntVector& generator) {
    ExtremalRay r;
    r.generator = generator;
    const auto ws = walls(f);
    for (std::size_t i = 0; i < ws.size(); ++i)
        if (ws[i].relation == generator) r.walls.push_back(i);
    r.kind = kind_of(generator);
    r.k_degree_sign = sgn(anticanonical_degree(generator));
    return r;
}

std::vector<ExtremalRay> extremal_rays(const Fan& f) {
    const auto gens = mori_generators(f);
    std::vector<ExtremalRay> out;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        std::vector<IntVector> others;
        for (std::size_t j = 0; j < gens.size(); ++j)
            if (j != i) others.push_back(gens[j]);
        if (!in_cone(others, gens[i])) out.push_back(ray_of_class(f, gens[i]));
    }
    return out;
}

ContractionInfo classify_contraction(const Fan& f, const ExtremalRay& r) {
    const auto ws = walls(f);
    if (r.walls.empty()) throw FanError("extremal ray has no supporting wall");
    for (auto w : r.walls)
        if (ws.at(w).relation != r.generator) throw FanError("extremal ray walls carry non-proportional classes");
    ContractionInfo info;
    info.kind = kind_of(r.generator);
    const auto& g = r.generator;
    switch (info.kind) {
        case ContractionKind::divisorial: {
            std::size_t plus_count = 0;
            bool unit = true;
            for (std::size_t i = 0; i < g.size(); ++i) {
                if (g[i] < 0) {
                    info.removed_ray = i;
                    if (g[i] != -1) unit = false;
                }
                if (g[i] > 0) {
                    info.center.push_back(i);
                    ++plus_count;
                    if (g[i] != 1) unit = false;
                }
            }
            if (unit && plus_count == 2) {
                const Fan coarse = remove_ray_along(f, info.removed_ray, g);
                Cone center;
                for (auto i : info.center) center.push_back(i > info.removed_ray ? i - 1 : i);
                bool smooth = true;
                for (const auto& c : coarse.cones)
                    if (std::includes(c.begin(), c.end(), center.begin(), center.end()) &&
                        cone_multiplicity(coarse, c) != 1)
                        smooth = false;
                info.smooth_codim2 = smooth;
            }
            break;
        }
        case ContractionKind::fiber: {
            std::vector<IntVector> support;
            for (std::size_t i = 0; i < g.size(); ++i)
                if (g[i] != 0) support.push_back(f.rays[i]);
            info.kernel_basis = saturated_span_basis(support, f.dim);
            info.quotient = quotient_map(support, f.dim);
            break;
        }
        case ContractionKind::small:
            for (std::size_t i = 0; i < g.size(); ++i) {
                if (g[i] > 0) info.j_plus.push_back(i);
                if (g[i] < 0) info.j_minus.push_back(i);
            }
            break;
    }
    return info;
}

ContractionResult contract(const Fan& f, const ExtremalRay& r) {
    const ContractionInfo info = classify_contraction(f, r);
    ContractionResult res;
    if (info.kind == ContractionKind::small) throw FanError("contract: small extremal ray (flip instead)");
    if (info.kind == ContractionKind::divisorial) {
        res.target = remove_ray_along(f, info.removed_ray, r.generator);
        res.lattice_map = IntMatrix::identity(f.dim);
        for (std::size_t i = 0; i < f.num_rays(); ++i) {
            if (i == info.removed_ray)
                res.ray_image.push_back(std::nullopt);
            else
                res.ray_image.push_back(i < info.removed_ray ? i : i - 1);
        }
        return res;
    }
    const IntMatrix& q = info.quotient;
    const std::size_t k = info.kernel_basis.size();
    const std::size_t ydim = f.dim - k;
    res.lattice_map = q;
    std::vector<bool> in_kernel(f.num_rays());
    std::vector<IntVector> image(f.num_rays());
    for (std::size_t i = 0; i < f.num_rays(); ++i) {
        image[i] = ydim ? q * f.rays[i] : IntVector{};
        in_kernel[i] = is_zero(image[i]);
    }
    std::set<Cone> ycones_src;
    for (const auto& c : f.cones) {
        Cone outside;
        for (auto i : c)
            if (!in_kernel[i]) outside.push_back(i);
        if (outside.size() == ydim) ycones_src.insert(outside);
    }
    std::map<IntVector, std::size_t> yray_index;
    std::vector<IntVector> yrays;
    for (const auto& c : ycones_src)
        for (auto i : c) {
            if (!is_primitive(image[i]))
                throw FanError("contract: image of ray " + std::to_string(f.labels[i]) + " is not primitive (" +
                               to_string(image[i]) + ")");
            if (yray_index.emplace(image[i], yrays.size()).second) yrays.push_back(image[i]);
        }
    // Order target rays deterministically.
    std::vector<IntVector> sorted = yrays;
    std::sort(sorted.begin(), sorted.end());
    std::map<IntVector, std::size_t> pos;
    for (std::size_t i = 0; i < sorted.size(); ++i) pos[sorted[i]] = i;
    std::set<Cone> ycones;
    for (const auto& c : ycones_src) {
        Cone t;
        for (auto i : c) t.push_back(pos[image[i]]);
        std::sort(t.begin(), t.end());
        ycones.insert(t);
    }
    if (ydim == 0)
        res.target = point_fan();
    else
        res.target = make_fan(ydim, sorted, {ycones.begin(), ycones.end()}, {}, f.complete);
    for (std::size_t i = 0; i < f.num_rays(); ++i) {
        std::optional<std::size_t> img;
        if (!in_kernel[i]) {
            auto it = pos.find(primitive(image[i]));
            if (it != pos.end()) img = it->second;
        }
        res.ray_image.push_back(img);
    }
    return res;
}

Fan flip(const Fan& f, const ExtremalRay& r) {
    const ContractionInfo info = classify_contraction(f, r);
    if (info.kind != ContractionKind::small) throw FanError("flip: ray is not small");
    if (info.j_plus.size() < 2) throw FanError("flip: circuit with a single positive ray is not supported");
    Cone s = info.j_plus;
    s.insert(s.end(), info.j_minus.begin(), info.j_minus.end());
    std::sort(s.begin(), s.end());
    const auto ws = walls(f);
    std::set<std::size_t> touched;
    for (auto w : r.walls) {
        touched.insert(ws[w].side_a);
        touched.insert(ws[w].side_b);
    }
    std::map<Cone, std::set<std::size_t>> groups;
    for (auto ci : touched) {
        const Cone& sigma = f.cones[ci];
        Cone inter, rho, missing;
        std::set_intersection(sigma.begin(), sigma.end(), s.begin(), s.end(), std::back_inserter(inter));
        std::set_difference(sigma.begin(), sigma.end(), s.begin(), s.end(), std::back_inserter(rho));
        std::set_difference(s.begin(), s.end(), inter.begin(), inter.end(), std::back_inserter(missing));
        if (missing.size() != 1 || !contains(info.j_plus, missing[0]))
            throw FanError("flip: cone does not contain the expected circuit face");
        groups[rho].insert(missing[0]);
    }
    std::vector<Cone> cones;
    for (std::size_t ci = 0; ci < f.cones.size(); ++ci)
        if (!touched.count(ci)) cones.push_back(f.cones[ci]);
    for (const auto& [rho, ids] : groups) {
        if (ids.size() != info.j_plus.size()) throw FanError("flip: incomplete circuit triangulation");
        for (auto j : info.j_minus) {
            Cone c = rho;
            for (auto x : s)
                if (x != j) c.push_back(x);
            cones.push_back(c);
        }
    }
    return make_fan(f.dim, f.rays, cones, f.labels, f.complete);
}

std::vector<ConeFace> mori_faces(const Fan& f, std::size_t codim) {
    const auto space = intersection_space(f);
    const auto gens = mori_generators(f);
    if (codim > space.rho) return {};
    std::vector<IntVector> coords;
    for (const auto& g : gens) coords.push_back(space.coordinates(g));
    return cone_faces(coords, space.rho, space.rho - codim);
}

}  // namespace toricmmp
