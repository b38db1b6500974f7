// Enumerates smooth Fano polytopes of a given dimension up to lattice
// equivalence and writes them as polytope-mode records.
//
// Search: fix a special facet as the standard basis; every other vertex then
// lies in the finite set W = {x primitive : x_i >= -1, -d <= sum(x) <= 0}.
// Facets are grown one open ridge at a time (each new facet must be
// unimodular and supporting), closed complexes are kept when the vertex sum
// lies in the cone over the special facet, and results are deduplicated by a
// normal form (lexicographically least sorted coordinate list over all
// facet bases).

#include "CLI11.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace {

using Vec = std::vector<long>;
using Mat = std::vector<Vec>;
using Idx = std::vector<int>;

long det(Mat a) {
    const std::size_t n = a.size();
    long sign = 1, prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a[p][k] == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            std::swap(a[p], a[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

// Adjugate of a square matrix.
Mat adjugate(const Mat& a) {
    const std::size_t n = a.size();
    Mat adj(n, Vec(n));
    if (n == 1) {
        adj[0][0] = 1;
        return adj;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Mat m;
            for (std::size_t r = 0; r < n; ++r) {
                if (r == i) continue;
                Vec row;
                for (std::size_t c = 0; c < n; ++c)
                    if (c != j) row.push_back(a[r][c]);
                m.push_back(row);
            }
            adj[j][i] = ((i + j) % 2 ? -1 : 1) * det(m);
        }
    return adj;
}

long dot(const Vec& a, const Vec& b) {
    long s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// u with <u, v> = 1 for the rows v of a unimodular matrix.
Vec facet_normal(const Mat& rows) {
    const long d = det(rows);
    const Mat adj = adjugate(rows);
    Vec u(rows.size(), 0);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows.size(); ++j) u[i] += adj[i][j];
    for (auto& x : u) x /= d;
    return u;
}

long gcd_all(const Vec& v) {
    long g = 0;
    for (auto x : v) g = std::gcd(g, std::labs(x));
    return g;
}

struct Facet {
    Idx verts;
    Vec normal;
};

class Enumerator {
public:
    explicit Enumerator(int d) : d_(d) {
        Vec x(d, -1);
        const long hi = d;
        for (;;) {
            long s = std::accumulate(x.begin(), x.end(), 0L);
            if (s <= 0 && s >= -d && gcd_all(x) == 1) w_.push_back(x);
            int p = 0;
            while (p < d) {
                if (++x[p] <= hi) break;
                x[p] = -1;
                ++p;
            }
            if (p == d) break;
        }
    }

    std::set<std::vector<Vec>> run() {
        std::vector<Vec> v;
        for (int i = 0; i < d_; ++i) {
            Vec e(d_, 0);
            e[i] = 1;
            v.push_back(e);
        }
        Idx f0(d_);
        std::iota(f0.begin(), f0.end(), 0);
        std::map<Idx, std::vector<Idx>> ridges;
        for (int i = 0; i < d_; ++i) ridges[without(f0, i)] = {f0};
        dfs(v, {Facet{f0, Vec(d_, 1)}}, ridges);
        return results_;
    }

private:
    static Idx without(const Idx& s, int x) {
        Idx out;
        for (auto i : s)
            if (i != x) out.push_back(i);
        return out;
    }

    std::vector<Vec> normal_form(const std::vector<Vec>& verts, const std::vector<Facet>& facets) const {
        std::vector<Vec> best;
        for (const auto& f : facets) {
            Idx perm = f.verts;
            std::sort(perm.begin(), perm.end());
            do {
                Mat b(d_, Vec(d_));
                for (int c = 0; c < d_; ++c)
                    for (int r = 0; r < d_; ++r) b[r][c] = verts[perm[c]][r];
                const long dt = det(b);
                const Mat adj = adjugate(b);
                std::vector<Vec> coords;
                for (const auto& v : verts) {
                    Vec c(d_, 0);
                    for (int i = 0; i < d_; ++i) c[i] = dot(adj[i], v) / dt;
                    coords.push_back(c);
                }
                std::sort(coords.begin(), coords.end());
                if (best.empty() || coords < best) best = coords;
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        return best;
    }

    void dfs(const std::vector<Vec>& verts, const std::vector<Facet>& facets, const std::map<Idx, std::vector<Idx>>& ridges) {
        const Idx* open = nullptr;
        for (const auto& [r, fs] : ridges)
            if (fs.size() == 1) {
                open = &r;
                break;
            }
        if (!open) {
            for (int i = 0; i < d_; ++i) {
                long s = 0;
                for (const auto& v : verts) s += v[i];
                if (s < 0) return;
            }
            results_.insert(normal_form(verts, facets));
            return;
        }
        const Idx ridge = *open;
        const Idx& gverts = ridges.at(ridge)[0];
        const Facet* g = nullptr;
        for (const auto& f : facets)
            if (f.verts == gverts) g = &f;
        int apex = -1;
        for (auto i : gverts)
            if (!std::binary_search(ridge.begin(), ridge.end(), i)) apex = i;
        Mat rv;
        for (auto i : ridge) rv.push_back(verts[i]);

        std::vector<std::pair<int, Vec>> cands;
        for (int i = 0; i < static_cast<int>(verts.size()); ++i)
            if (!std::binary_search(gverts.begin(), gverts.end(), i)) cands.push_back({i, verts[i]});
        if (static_cast<int>(verts.size()) < 3 * d_)
            for (const auto& w : w_)
                if (std::find(verts.begin(), verts.end(), w) == verts.end()) cands.push_back({-1, w});

        for (const auto& [idx, w] : cands) {
            if (dot(g->normal, w) >= 1) continue;
            Mat m = rv;
            m.push_back(w);
            if (std::labs(det(m)) != 1) continue;
            const Vec uh = facet_normal(m);
            if (dot(uh, verts[apex]) >= 1) continue;
            bool ok = true;
            for (int j = 0; j < static_cast<int>(verts.size()) && ok; ++j) {
                if (j == idx || std::binary_search(ridge.begin(), ridge.end(), j)) continue;
                if (dot(uh, verts[j]) >= 1) ok = false;
            }
            if (!ok) continue;
            std::vector<Vec> nv = verts;
            int wi = idx;
            if (idx < 0) {
                bool cut = false;
                for (const auto& f : facets)
                    if (dot(f.normal, w) >= 1) cut = true;
                if (cut) continue;
                wi = static_cast<int>(verts.size());
                nv.push_back(w);
            }
            Idx h = ridge;
            h.push_back(wi);
            std::sort(h.begin(), h.end());
            bool dup = false;
            for (const auto& f : facets)
                if (f.verts == h) dup = true;
            if (dup) continue;
            auto nr = ridges;
            bool bad = false;
            for (auto i : h) {
                auto& lst = nr[without(h, i)];
                if (lst.size() >= 2) {
                    bad = true;
                    break;
                }
                lst.push_back(h);
            }
            if (bad) continue;
            auto nf = facets;
            nf.push_back(Facet{h, uh});
            dfs(nv, nf, nr);
        }
    }

    int d_;
    std::vector<Vec> w_;
    std::set<std::vector<Vec>> results_;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Enumerate smooth Fano polytopes"};
    int dim = 2;
    std::string out;
    std::string prefix = "sfp";
    app.add_option("dim", dim, "dimension")->required()->check(CLI::Range(1, 5));
    app.add_option("-o,--out", out, "output file (stdout if omitted)");
    app.add_option("--prefix", prefix, "record id prefix");
    CLI11_PARSE(app, argc, argv);

    Enumerator e(dim);
    const auto results = e.run();
    std::ofstream file;
    if (!out.empty()) {
        file.open(out);
        if (!file) {
            std::cerr << "cannot write " << out << "\n";
            return 2;
        }
    }
    std::ostream& os = out.empty() ? std::cout : file;
    os << "# smooth Fano polytopes of dimension " << dim << " (" << results.size() << " up to lattice equivalence)\n";
    int k = 0;
    for (const auto& verts : results) {
        ++k;
        char id[64];
        std::snprintf(id, sizeof id, "%s%d-%03d", prefix.c_str(), dim, k);
        os << "\nid=" << id << " dim=" << dim << " rays=" << verts.size() << " mode=polytope\n";
        for (const auto& v : verts) {
            for (int i = 0; i < dim; ++i) os << (i ? " " : "") << v[i];
            os << "\n";
        }
    }
    std::cerr << results.size() << " polytopes\n";
    return 0;
}
