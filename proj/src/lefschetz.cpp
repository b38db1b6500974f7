#include "toricmmp/lefschetz.hpp"

#include <algorithm>
#include <map>

namespace toricmmp {

namespace {

bool ridge_has(const Wall& w, std::size_t r) { return std::binary_search(w.ridge.begin(), w.ridge.end(), r); }

std::vector<IntVector> span_from(const std::vector<Wall>& ws, std::size_t ray) {
    std::vector<IntVector> out;
    for (const auto& w : ws)
        if (ridge_has(w, ray)) out.push_back(w.relation);
    return out;
}

LefschetzReport assemble(const Fan& f, std::vector<std::vector<IntVector>> bases, std::size_t rho) {
    LefschetzReport rep;
    rep.rho = rho;
    for (const auto& b : bases) rep.c_values.push_back(rho - b.size());
    rep.span_bases = std::move(bases);
    rep.c_x = rep.c_values.empty() ? 0 : *std::max_element(rep.c_values.begin(), rep.c_values.end());
    for (std::size_t i = 0; i < rep.c_values.size(); ++i)
        if (rep.c_values[i] == rep.c_x) rep.argmax.push_back(i);
    rep.fano = local_properties(f).fano;
    return rep;
}

}  // namespace

std::vector<IntVector> independent_subset(const std::vector<IntVector>& vectors) {
    std::vector<IntVector> out;
    for (const auto& v : vectors) {
        if (is_zero(v) || in_span(out, v)) continue;
        out.push_back(v);
    }
    return out;
}

std::vector<IntVector> n1_span_of_divisor(const Fan& f, std::size_t ray) { return span_from(walls(f), ray); }

std::size_t c_of_divisor(const Fan& f, std::size_t ray) {
    return intersection_space(f).rho - rank(n1_span_of_divisor(f, ray));
}

LefschetzReport lefschetz_defect(const Fan& f) {
    const auto ws = walls(f);
    const std::size_t rho = intersection_space(f).rho;
    std::vector<std::vector<IntVector>> bases(f.num_rays());
    for (std::size_t v = 0; v < f.num_rays(); ++v) bases[v] = independent_subset(span_from(ws, v));
    return assemble(f, std::move(bases), rho);
}

LefschetzReport lefschetz_defect_parallel(const Fan& f) {
    const auto ws = walls(f);
    const std::size_t rho = intersection_space(f).rho;
    const long m = static_cast<long>(f.num_rays());
    std::vector<std::vector<IntVector>> bases(f.num_rays());
#pragma omp parallel for schedule(dynamic)
    for (long v = 0; v < m; ++v) bases[v] = independent_subset(span_from(ws, static_cast<std::size_t>(v)));
    return assemble(f, std::move(bases), rho);
}

std::size_t restriction_kernel_oracle(const Fan& f, std::size_t ray) {
    const Fan star = divisor_star_fan(f, ray);
    const std::size_t rho_x = f.num_rays() - f.dim;
    std::map<int, std::size_t> star_index;
    for (std::size_t i = 0; i < star.num_rays(); ++i) star_index[star.labels[i]] = i;
    const std::size_t k = star.num_rays();

    // Character relations on D: rows of the star fan's ray matrix.
    std::vector<RationalVector> principal;
    for (std::size_t r = 0; r < star.dim; ++r) {
        RationalVector row(k);
        for (std::size_t i = 0; i < k; ++i) row[i] = star.rays[i][r];
        principal.push_back(row);
    }
    // m with <m, v> = 1 lets D_v be replaced by -sum_{w != v} <m, w> D_w.
    const auto& v = f.rays[ray];
    RationalVector m(f.dim, Rational(0));
    {
        std::size_t j = 0;
        while (v[j] == 0) ++j;
        // Any rational solution works; restriction images are compared over Q.
        m[j] = Rational(1) / Rational(v[j]);
    }
    std::vector<RationalVector> images;
    for (std::size_t w = 0; w < f.num_rays(); ++w) {
        RationalVector img(k, Rational(0));
        if (w == ray) {
            for (std::size_t u = 0; u < f.num_rays(); ++u) {
                if (u == ray) continue;
                auto it = star_index.find(f.labels[u]);
                if (it != star_index.end()) img[it->second] -= dot(m, f.rays[u]);
            }
        } else {
            auto it = star_index.find(f.labels[w]);
            if (it != star_index.end()) img[it->second] = 1;
        }
        images.push_back(std::move(img));
    }
    auto combined = images;
    combined.insert(combined.end(), principal.begin(), principal.end());
    const std::size_t image_dim = rank(combined) - rank(principal);
    return rho_x - image_dim;
}

std::vector<IntVector> span_of_pair_intersection(const Fan& f, std::size_t v, std::size_t w) {
    std::vector<IntVector> out;
    for (const auto& wl : walls(f))
        if (ridge_has(wl, v) && ridge_has(wl, w)) out.push_back(wl.relation);
    return out;
}

}  // namespace toricmmp
