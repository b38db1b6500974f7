#include "toricmmp/mmp.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

namespace toricmmp {

namespace {

bool has(const Cone& c, std::size_t x) { return std::binary_search(c.begin(), c.end(), x); }
bool has_label(const LabelSet& s, int x) { return std::binary_search(s.begin(), s.end(), x); }

LabelSet labels_of(const Fan& f, const Cone& c) {
    LabelSet out;
    for (auto i : c) out.push_back(f.labels[i]);
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<Cone> cone_of_labels(const Fan& f, const LabelSet& s) {
    Cone c;
    for (int l : s) {
        const std::size_t i = f.index_of_label(l);
        if (i == f.num_rays()) return std::nullopt;
        c.push_back(i);
    }
    std::sort(c.begin(), c.end());
    return c;
}

std::string labels_str(const LabelSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out + "}";
}

Integer lattice_index(const Fan& f, const Cone& c) {
    if (c.empty()) return 1;
    std::vector<IntVector> rows;
    for (auto i : c) rows.push_back(f.rays[i]);
    const auto snf = smith_normal_form(IntMatrix::from_rows(rows, f.dim));
    Integer p = 1;
    for (std::size_t i = 0; i < c.size(); ++i) p *= snf.S(i, i);
    return abs(p);
}

// Wall curve V(ridge) has intersection numbers scale * relation.
Rational curve_scale(const Fan& f, const Wall& w) {
    const Integer sigma = cone_multiplicity(f, f.cones[w.side_a]);
    return Rational(lattice_index(f, w.ridge)) / Rational(sigma * w.relation[w.opposite_a]);
}

const Wall* find_wall(const std::vector<Wall>& ws, const Fan& f, const LabelSet& ridge) {
    auto c = cone_of_labels(f, ridge);
    if (!c) return nullptr;
    for (const auto& w : ws)
        if (w.ridge == *c) return &w;
    return nullptr;
}

CheckResult check(std::string name, bool pass, std::string witness = {}) {
    return CheckResult{std::move(name), pass, std::move(witness)};
}

struct Explorer {
    MmpStrategy strategy;
    std::size_t bound;
    std::map<std::string, std::vector<MmpRun>> memo;

    std::vector<MmpRun> explore(const Fan& f, int d_label, std::size_t depth, std::vector<std::string>& trace) {
        const std::string key = canonical_key(f) + "#" + std::to_string(d_label);
        if (strategy == MmpStrategy::all) {
            auto it = memo.find(key);
            if (it != memo.end()) return it->second;
        }
        const std::size_t d = f.index_of_label(d_label);
        std::vector<ExtremalRay> cands;
        for (auto& r : extremal_rays(f))
            if (r.generator[d] > 0 && anticanonical_degree(r.generator) > 0) cands.push_back(std::move(r));
        if (cands.empty()) {
            std::string msg = "no extremal ray R with D.R > 0 and -K.R > 0 on " + to_string(f) + "; trace:";
            for (const auto& t : trace) msg += " " + t;
            throw MmpError(msg);
        }
        if (strategy == MmpStrategy::first) {
            auto fib = std::find_if(cands.begin(), cands.end(),
                                    [](const ExtremalRay& r) { return r.kind == ContractionKind::fiber; });
            ExtremalRay pick = fib != cands.end() ? *fib : cands.front();
            cands = {pick};
        }

        std::vector<MmpRun> out;
        for (const auto& r : cands) {
            if (r.kind == ContractionKind::fiber) {
                out.push_back(terminate(f, d_label, r));
                continue;
            }
            if (depth >= bound) {
                std::string msg = "step bound " + std::to_string(bound) + " exceeded; trace:";
                for (const auto& t : trace) msg += " " + t;
                throw MmpError(msg);
            }
            MmpStep step = make_step(f, d_label, r);
            trace.push_back(to_string(step.kind) + to_string(r.generator));
            auto tails = explore(step.after, d_label, depth + 1, trace);
            trace.pop_back();
            for (auto& tail : tails) {
                MmpRun run = std::move(tail);
                run.x = f;
                run.steps.insert(run.steps.begin(), step);
                for (std::size_t i = 0; i < run.steps.size(); ++i) run.steps[i].index = i + 1;
                if (step.kind == ContractionKind::small) run.flip_debris.insert(run.flip_debris.begin(), step.j_plus);
                out.push_back(std::move(run));
            }
        }
        if (strategy == MmpStrategy::all) memo[key] = out;
        return out;
    }

    static MmpRun terminate(const Fan& f, int d_label, const ExtremalRay& r) {
        const std::size_t d = f.index_of_label(d_label);
        MmpRun run;
        run.x = f;
        run.d_label = d_label;
        run.x_k = f;
        run.fiber_ray = r;
        run.fiber_d_degree = r.generator[d];
        run.fiber_k_degree = anticanonical_degree(r.generator);
        run.fiber = contract(f, r);
        if (run.fiber.target.dim > 0 && !is_zero(run.fiber.lattice_map * f.rays[d]))
            throw MmpError("fiber contraction does not map D_k onto Y");
        return run;
    }

    static MmpStep make_step(const Fan& f, int d_label, const ExtremalRay& r) {
        const std::size_t d = f.index_of_label(d_label);
        MmpStep s;
        s.before = f;
        s.ray = r;
        s.kind = r.kind;
        s.d_label = d_label;
        s.d_degree = r.generator[d];
        s.k_degree = anticanonical_degree(r.generator);
        const auto span = n1_span_of_divisor(f, d);
        s.special = !in_span(span, r.generator);
        s.c_before = intersection_space(f).rho - rank(span);
        const ContractionInfo info = classify_contraction(f, r);
        if (r.kind == ContractionKind::divisorial) {
            s.after = contract(f, r).target;
            s.removed_label = f.labels[info.removed_ray];
            s.center = labels_of(f, info.center);
            s.smooth_codim2 = info.smooth_codim2;
        } else {
            s.after = flip(f, r);
            s.j_plus = labels_of(f, info.j_plus);
            s.j_minus = labels_of(f, info.j_minus);
        }
        s.terminal_after = local_properties(s.after).terminal;
        return s;
    }
};

}  // namespace

std::string to_string(RunType t) { return t == RunType::a ? "a" : "b"; }

std::vector<MmpRun> special_mmp(const Fan& f, std::size_t d_ray, MmpStrategy strategy, std::size_t step_bound) {
    if (d_ray >= f.num_rays()) throw MmpError("special_mmp: no such ray");
    if (!f.complete) throw MmpError("special_mmp: fan is not complete");
    if (step_bound == 0) step_bound = 10 * std::max<std::size_t>(1, intersection_space(f).rho);
    Explorer ex{strategy, step_bound, {}};
    std::vector<std::string> trace;
    auto runs = ex.explore(f, f.labels[d_ray], 0, trace);
    for (auto& r : runs) {
        r.x = f;
        r.d_label = f.labels[d_ray];
    }
    return runs;
}

const Fan& run_fan(const MmpRun& run, std::size_t i) {
    if (i == 0 || i > run.k()) throw MmpError("run_fan: index out of range");
    if (i == run.k()) return run.x_k;
    return run.steps[i - 1].before;
}

RunClassification classify_run(const MmpRun& run) {
    RunClassification c;
    c.c_d = c_of_divisor(run.x, run.x.index_of_label(run.d_label));
    if (c.c_d < 1) throw MmpError("classify_run: c(D) = 0, only divisors with c(D) >= 1 are classified");
    c.c_dk = c_of_divisor(run.x_k, run.x_k.index_of_label(run.d_label));
    if (c.c_dk > 1) throw MmpError("classify_run: c(D_k) = " + std::to_string(c.c_dk) + " is neither 0 nor 1");
    c.type = c.c_dk == 0 ? RunType::a : RunType::b;
    for (const auto& s : run.steps)
        if (s.special) c.special_indices.push_back(s.index);
    return c;
}

RationalVector extend_by_label(const Fan& from, const RationalVector& v, const Fan& to) {
    RationalVector out(to.num_rays(), Rational(0));
    for (std::size_t i = 0; i < from.num_rays(); ++i) {
        const std::size_t j = to.index_of_label(from.labels[i]);
        if (j == to.num_rays()) {
            if (v[i] != 0) throw MmpError("extend_by_label: nonzero entry on a missing label");
            continue;
        }
        out[j] = v[i];
    }
    return out;
}

IntVector extend_by_label(const Fan& from, const IntVector& v, const Fan& to) {
    IntVector out(to.num_rays(), Integer(0));
    for (std::size_t i = 0; i < from.num_rays(); ++i) {
        const std::size_t j = to.index_of_label(from.labels[i]);
        if (j == to.num_rays()) {
            if (v[i] != 0) throw MmpError("extend_by_label: nonzero entry on a missing label");
            continue;
        }
        out[j] = v[i];
    }
    return out;
}

std::optional<IntVector> wall_relation_by_labels(const Fan& f, const LabelSet& ridge) {
    const auto ws = walls(f);
    const Wall* w = find_wall(ws, f, ridge);
    if (!w) return std::nullopt;
    return w->relation;
}

RationalVector cycle_class(const Fan& f, const OneCycle& cycle) {
    const auto ws = walls(f);
    RationalVector out(f.num_rays(), Rational(0));
    for (const auto& t : cycle) {
        const Wall* w = find_wall(ws, f, t.ridge);
        if (!w) throw MmpError("cycle_class: " + labels_str(t.ridge) + " is not a wall");
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += t.coefficient * w->relation[i];
    }
    return out;
}

namespace {

OneCycle normalize(OneCycle c) {
    std::map<LabelSet, Rational> acc;
    for (auto& t : c) acc[t.ridge] += t.coefficient;
    OneCycle out;
    for (auto& [r, x] : acc)
        if (x != 0) out.push_back(CycleTerm{r, x});
    return out;
}

std::optional<OneCycle> transform_one_step(const MmpStep& s, const OneCycle& cycle) {
    const Fan& a = s.before;
    const Fan& b = s.after;
    const auto wa = walls(a);
    const auto wb = walls(b);
    OneCycle out;
    if (s.kind == ContractionKind::small) {
        for (const auto& t : cycle) {
            if (std::includes(t.ridge.begin(), t.ridge.end(), s.j_minus.begin(), s.j_minus.end())) return std::nullopt;
            const Wall* w0 = find_wall(wa, a, t.ridge);
            const Wall* w1 = find_wall(wb, b, t.ridge);
            if (!w0 || !w1) throw MmpError("transform_class: wall " + labels_str(t.ridge) + " lost across a flip");
            out.push_back(CycleTerm{t.ridge, t.coefficient * curve_scale(b, *w1) / curve_scale(a, *w0)});
        }
        return normalize(out);
    }
    const std::size_t r = a.index_of_label(s.removed_label);
    const IntVector& g = s.ray.generator;
    for (const auto& t : cycle) {
        const Wall* w0 = find_wall(wa, a, t.ridge);
        if (!w0) throw MmpError("transform_class: " + labels_str(t.ridge) + " is not a wall");
        RationalVector p(a.num_rays());
        for (std::size_t u = 0; u < p.size(); ++u) p[u] = t.coefficient * w0->relation[u];
        // pushforward: (sigma_* G)_u = G_u + c_u G_r with v_r = sum c_u v_u
        RationalVector q(a.num_rays(), Rational(0));
        for (std::size_t u = 0; u < p.size(); ++u) {
            if (u == r) continue;
            q[u] = p[u] + Rational(g[u], -g[r]) * p[r];
        }
        LabelSet ridge = t.ridge;
        if (has_label(ridge, s.removed_label)) {
            ridge.erase(std::find(ridge.begin(), ridge.end(), s.removed_label));
            ridge.insert(ridge.end(), s.center.begin(), s.center.end());
            std::sort(ridge.begin(), ridge.end());
            ridge.erase(std::unique(ridge.begin(), ridge.end()), ridge.end());
        }
        RationalVector pushed(b.num_rays(), Rational(0));
        for (std::size_t u = 0; u < a.num_rays(); ++u)
            if (u != r) pushed[b.index_of_label(a.labels[u])] = q[u];
        if (ridge.size() != b.dim - 1) {
            if (!is_zero(pushed)) throw MmpError("transform_class: contracted curve with nonzero pushforward");
            continue;
        }
        const Wall* w1 = find_wall(wb, b, ridge);
        if (!w1) throw MmpError("transform_class: image " + labels_str(ridge) + " is not a wall");
        const Rational coef = pushed[w1->opposite_a] / Rational(w1->relation[w1->opposite_a]);
        for (std::size_t u = 0; u < pushed.size(); ++u)
            if (pushed[u] != coef * w1->relation[u])
                throw MmpError("transform_class: pushforward not proportional to the image wall");
        out.push_back(CycleTerm{ridge, coef});
    }
    return normalize(out);
}

}  // namespace

std::optional<OneCycle> transform_class(const MmpRun& run, const OneCycle& cycle, std::size_t from_step,
                                        std::size_t to_step) {
    if (from_step == 0 || to_step > run.k() || from_step > to_step) throw MmpError("transform_class: bad step range");
    std::optional<OneCycle> cur = normalize(cycle);
    for (std::size_t i = from_step; i < to_step && cur; ++i) cur = transform_one_step(run.steps[i - 1], *cur);
    return cur;
}

bool is_exceptional_p1_bundle(const Fan& f, std::size_t e_ray, const IntVector& e) {
    if (e[e_ray] != -1) return false;
    const Fan star = divisor_star_fan(f, e_ray);
    if (!is_smooth(star)) return false;
    for (std::size_t i = 0; i < star.num_rays(); ++i)
        for (std::size_t j = i + 1; j < star.num_rays(); ++j) {
            IntVector s(star.dim);
            for (std::size_t c = 0; c < star.dim; ++c) s[c] = star.rays[i][c] + star.rays[j][c];
            if (!is_zero(s)) continue;
            if (std::all_of(star.cones.begin(), star.cones.end(),
                            [&](const Cone& c) { return has(c, i) || has(c, j); }))
                return true;
        }
    return false;
}

bool elementary_span_identity(const Fan& f, std::size_t e_ray, std::size_t d_ray, const IntVector& e) {
    const auto ne = n1_span_of_divisor(f, e_ray);
    auto rhs = span_of_pair_intersection(f, d_ray, e_ray);
    rhs.push_back(e);
    auto both = ne;
    both.insert(both.end(), rhs.begin(), rhs.end());
    const std::size_t r = rank(both);
    return rank(ne) == r && rank(rhs) == r;
}

std::vector<CheckResult> step_invariants(const MmpRun& run) {
    std::vector<CheckResult> out;
    std::size_t expect_c = run.steps.empty() ? 0 : run.steps.front().c_before;
    for (const auto& s : run.steps) {
        const std::string at = "step " + std::to_string(s.index);
        out.push_back(check("D.R > 0", s.d_degree > 0, at + " D.R = " + s.d_degree.get_str()));
        out.push_back(check("-K.R > 0", s.k_degree > 0, at + " -K.R = " + s.k_degree.get_str()));
        out.push_back(check("terminal", s.terminal_after, at));
        out.push_back(check("c chain", s.c_before == expect_c,
                            at + " c(D_i) = " + std::to_string(s.c_before) + ", expected " + std::to_string(expect_c)));
        expect_c = s.c_before - (s.special ? 1 : 0);
    }
    out.push_back(check("fiber D.R > 0", run.fiber_d_degree > 0, "D_k.R_k = " + run.fiber_d_degree.get_str()));
    out.push_back(check("fiber -K.R > 0", run.fiber_k_degree > 0, "-K.R_k = " + run.fiber_k_degree.get_str()));
    if (!run.steps.empty()) {
        const std::size_t ck = c_of_divisor(run.x_k, run.x_k.index_of_label(run.d_label));
        out.push_back(check("c chain", ck == expect_c,
                            "c(D_k) = " + std::to_string(ck) + ", expected " + std::to_string(expect_c)));
    }
    return out;
}

bool TypeBReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

bool TypeAReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

namespace {

// Class in X of the fiber of the contraction at step i: the X-wall with the
// same ridge labels as some wall of R_i, checked against the zero-extended
// generator.
std::pair<IntVector, bool> fiber_class_in_x(const MmpRun& run, const MmpStep& s) {
    const auto ws = walls(s.before);
    const IntVector ext = extend_by_label(s.before, s.ray.generator, run.x);
    for (auto wi : s.ray.walls) {
        auto rel = wall_relation_by_labels(run.x, labels_of(s.before, ws[wi].ridge));
        if (rel) return {*rel, *rel == ext};
    }
    return {ext, false};
}

}  // namespace

TypeBReport type_b_structure(const MmpRun& run, const RunClassification& cls) {
    if (cls.type != RunType::b) throw MmpError("type_b_structure: run is not of type (b)");
    if (cls.special_indices.size() != 1)
        throw MmpError("type_b_structure: expected one special index, found " +
                       std::to_string(cls.special_indices.size()));
    TypeBReport rep;
    rep.i1 = cls.special_indices.front();
    const Fan& x = run.x;
    const Fan& xk = run.x_k;
    const Fan& y = run.y();
    const MmpStep& s1 = run.steps[rep.i1 - 1];
    auto& ck = rep.checks;
    ck.push_back(check("i1 divisorial", s1.kind == ContractionKind::divisorial, "step " + std::to_string(rep.i1)));
    if (s1.kind != ContractionKind::divisorial) throw MmpError("type_b_structure: special step is not divisorial");
    ck.push_back(check("i1 smooth codim 2", s1.smooth_codim2));

    rep.e_label = s1.removed_label;
    const std::size_t e_ray = x.index_of_label(rep.e_label);
    const std::size_t d_ray = x.index_of_label(run.d_label);
    bool e_ok = false;
    std::tie(rep.e, e_ok) = fiber_class_in_x(run, s1);
    ck.push_back(check("e is a wall of X", e_ok, to_string(rep.e)));
    rep.ell = extend_by_label(xk, run.fiber_ray.generator, x);

    // A, Z and the preimage of Z.
    rep.a_cone = s1.center;
    const auto a_in_xk = cone_of_labels(xk, rep.a_cone);
    const bool a_is_cone = a_in_xk && is_face(xk, *a_in_xk);
    ck.push_back(check("A is a cone of X_k", a_is_cone, labels_str(rep.a_cone)));
    if (!a_is_cone) throw MmpError("type_b_structure: center " + labels_str(rep.a_cone) + " is not a cone of X_k");
    const IntMatrix& q = run.fiber.lattice_map;
    std::optional<std::size_t> z;
    std::size_t outside = 0;
    for (auto i : *a_in_xk) {
        if (is_zero(q * xk.rays[i])) continue;
        ++outside;
        z = run.fiber.ray_image[i];
    }
    ck.push_back(check("A maps onto a divisor of Y", outside == 1 && z.has_value(), labels_str(rep.a_cone)));
    if (outside != 1 || !z) throw MmpError("type_b_structure: A does not map onto a ray of Y");
    rep.z_ray = *z;
    const IntVector& zv = y.rays[rep.z_ray];
    std::vector<std::size_t> over_z;
    bool unit = true;
    for (std::size_t i = 0; i < x.num_rays(); ++i) {
        const IntVector im = q * x.rays[i];
        if (is_zero(im) || primitive(im) != zv) continue;
        over_z.push_back(i);
        if (im != zv) unit = false;
    }
    const bool two = over_z.size() == 2 && unit && std::count(over_z.begin(), over_z.end(), e_ray) == 1;
    ck.push_back(check("psi*(Z) = E + E^", two, std::to_string(over_z.size()) + " rays over Z"));
    if (!two) throw MmpError("type_b_structure: the preimage of Z is not E + E^");
    const std::size_t eh_ray = over_z[0] == e_ray ? over_z[1] : over_z[0];
    rep.e_hat_label = x.labels[eh_ray];

    // e^: a wall curve in E^ meeting E, preferring the one with e + e^ = l.
    IntVector target(x.num_rays());
    for (std::size_t i = 0; i < target.size(); ++i) target[i] = rep.ell[i] - rep.e[i];
    std::optional<IntVector> eh;
    for (const auto& w : walls(x)) {
        if (!has(w.ridge, eh_ray) || w.relation[eh_ray] != -1 || w.relation[e_ray] != 1) continue;
        if (w.relation == target) {
            eh = w.relation;
            break;
        }
        if (!eh) eh = w.relation;
    }
    ck.push_back(check("e^ found", eh.has_value()));
    if (!eh) throw MmpError("type_b_structure: no fiber curve of E^ found");
    rep.e_hat = *eh;

    rep.e_dot_e_hat = rep.e_hat[e_ray];
    rep.e_hat_dot_e = rep.e[eh_ray];
    rep.e_dot_ell = rep.ell[e_ray];
    rep.e_hat_dot_ell = rep.ell[eh_ray];
    ck.push_back(check("E.e^ = 1", rep.e_dot_e_hat == 1, rep.e_dot_e_hat.get_str()));
    ck.push_back(check("E^.e = 1", rep.e_hat_dot_e == 1, rep.e_hat_dot_e.get_str()));
    ck.push_back(check("E.l = 0", rep.e_dot_ell == 0, rep.e_dot_ell.get_str()));
    ck.push_back(check("E^.l = 0", rep.e_hat_dot_ell == 0, rep.e_hat_dot_ell.get_str()));
    rep.ell_is_sum = target == rep.e_hat;
    ck.push_back(check("l = e + e^", rep.ell_is_sum,
                       to_string(rep.ell) + " vs " + to_string(rep.e) + " + " + to_string(rep.e_hat)));
    ck.push_back(check("e^ not in N_1(E)", !in_span(n1_span_of_divisor(x, e_ray), rep.e_hat)));
    ck.push_back(check("E exceptional P1-bundle", is_exceptional_p1_bundle(x, e_ray, rep.e)));
    ck.push_back(check("E^ exceptional P1-bundle", is_exceptional_p1_bundle(x, eh_ray, rep.e_hat)));
    ck.push_back(check("D.e > 0", rep.e[d_ray] > 0, rep.e[d_ray].get_str()));
    if (rep.e[d_ray] > 0) ck.push_back(check("N_1(E) = Re + N_1(D n E)", elementary_span_identity(x, e_ray, d_ray, rep.e)));

    rep.xk_smooth = is_smooth(xk);
    rep.y_smooth = y.dim == 0 || is_smooth(y);
    ck.push_back(check("X_k smooth", rep.xk_smooth));
    ck.push_back(check("Y smooth", rep.y_smooth));

    const std::size_t rho_x = intersection_space(x).rho;
    const std::size_t rho_y = y.dim == 0 ? 0 : intersection_space(y).rho;
    ck.push_back(check("rho_X - rho_Y = 2", rho_x == rho_y + 2,
                       std::to_string(rho_x) + " - " + std::to_string(rho_y)));
    bool flips_only = true;
    for (const auto& s : run.steps)
        if (s.index != rep.i1 && s.kind != ContractionKind::small) flips_only = false;
    ck.push_back(check("flips except i1", flips_only));

    auto basis = n1_span_of_divisor(x, d_ray);
    basis.push_back(rep.e);
    basis.push_back(rep.e_hat);
    ck.push_back(check("N_1(X) = N_1(D) + Re + Re^", rank(basis) == rho_x,
                       "rank " + std::to_string(rank(basis)) + " of " + std::to_string(rho_x)));

    // T: centers of the divisorial steps and the flipped cones, as cones of X_k.
    std::vector<LabelSet> t_cones;
    for (const auto& s : run.steps) t_cones.push_back(s.kind == ContractionKind::divisorial ? s.center : s.j_plus);
    bool a_component = true, t_in_d = true;
    for (const auto& t : t_cones) {
        auto tc = cone_of_labels(xk, t);
        if (!tc || !is_face(xk, *tc)) continue;
        if (!has_label(t, run.d_label)) t_in_d = false;
        if (t == rep.a_cone) continue;
        LabelSet u = t;
        u.insert(u.end(), rep.a_cone.begin(), rep.a_cone.end());
        std::sort(u.begin(), u.end());
        u.erase(std::unique(u.begin(), u.end()), u.end());
        auto uc = cone_of_labels(xk, u);
        if (uc && is_face(xk, *uc)) a_component = false;
    }
    ck.push_back(check("A is a connected component of T", a_component));
    ck.push_back(check("T in D_k (invariant cones)", t_in_d));
    bool sing_in_t = true;
    for (const auto& c : xk.cones) {
        if (cone_multiplicity(xk, c) == 1) continue;
        const LabelSet cl = labels_of(xk, c);
        if (!std::any_of(t_cones.begin(), t_cones.end(),
                         [&](const LabelSet& t) { return std::includes(cl.begin(), cl.end(), t.begin(), t.end()); }))
            sing_in_t = false;
    }
    ck.push_back(check("Sing(X_k) in T", sing_in_t));

    // Discriminant: contracted walls of -K-degree 1.
    const auto wk = walls(xk);
    for (const auto& w : wk) {
        if (primitive(w.relation) != run.fiber_ray.generator) continue;
        if (anticanonical_degree(w.relation) == 1) rep.discriminant_walls.push_back(labels_of(xk, w.ridge));
    }
    rep.conic_bundle_smooth = rep.discriminant_walls.empty();
    if (!rep.conic_bundle_smooth) {
        // Second alternative: k = 2 and a smooth P^1-fibration Y -> Y'.
        bool found = false;
        if (run.k() == 2 && y.dim > 0)
            for (const auto& r : extremal_rays(y)) {
                if (r.kind != ContractionKind::fiber) continue;
                std::size_t supp = 0;
                for (const auto& c : r.generator)
                    if (c != 0) ++supp;
                if (supp != 2) continue;
                const auto res = contract(y, r);
                const std::size_t rho_yp = res.target.dim == 0 ? 0 : intersection_space(res.target).rho;
                if ((res.target.dim == 0 || is_smooth(res.target)) && rho_x == rho_yp + 3) found = true;
            }
        ck.push_back(check("non-smooth conic bundle: P1-fibration of Y", found));
    }
    return rep;
}

TypeAReport type_a_structure(const MmpRun& run, const RunClassification& cls) {
    if (cls.type != RunType::a) throw MmpError("type_a_structure: run is not of type (a)");
    TypeAReport rep;
    auto& ck = rep.checks;
    ck.push_back(check("two special indices", cls.special_indices.size() == 2,
                       std::to_string(cls.special_indices.size())));
    if (cls.special_indices.size() != 2) return rep;
    ck.push_back(check("k >= 3", run.k() >= 3, std::to_string(run.k())));
    rep.i1 = cls.special_indices[0];
    rep.i2 = cls.special_indices[1];
    const Fan& x = run.x;
    const std::size_t d_ray = x.index_of_label(run.d_label);
    const std::size_t rho = intersection_space(x).rho;
    std::vector<std::size_t> e_rays;
    std::vector<IntVector> es;
    for (auto idx : {rep.i1, rep.i2}) {
        const MmpStep& s = run.steps[idx - 1];
        const std::string at = "step " + std::to_string(idx);
        const bool div = s.kind == ContractionKind::divisorial;
        ck.push_back(check("special step divisorial", div, at));
        if (!div) return rep;
        ck.push_back(check("special step smooth codim 2", s.smooth_codim2, at));
        const std::size_t er = x.index_of_label(s.removed_label);
        auto [e, ok] = fiber_class_in_x(run, s);
        ck.push_back(check("e_j is a wall of X", ok, at + " " + to_string(e)));
        ck.push_back(check("E_j.e_j = -1", e[er] == -1, e[er].get_str()));
        ck.push_back(check("D.e_j > 0", e[d_ray] > 0, e[d_ray].get_str()));
        ck.push_back(check("E_j exceptional P1-bundle", is_exceptional_p1_bundle(x, er, e), at));
        const std::size_t ce = c_of_divisor(x, er);
        ck.push_back(check("c(E_j) = 2", ce == 2, std::to_string(ce)));
        const std::size_t dn = rank(span_of_pair_intersection(x, d_ray, er));
        ck.push_back(check("dim N_1(D n E_j) = rho - 3", dn + 3 == rho, std::to_string(dn)));
        if (e[d_ray] > 0) ck.push_back(check("N_1(E_j) = Re_j + N_1(D n E_j)", elementary_span_identity(x, er, d_ray, e)));
        e_rays.push_back(er);
        es.push_back(e);
    }
    rep.e1_label = x.labels[e_rays[0]];
    rep.e2_label = x.labels[e_rays[1]];
    rep.e1 = es[0];
    rep.e2 = es[1];
    const bool distinct = e_rays[0] != e_rays[1] && e_rays[0] != d_ray && e_rays[1] != d_ray;
    ck.push_back(check("D, E_1, E_2 distinct", distinct));
    Cone pair = {std::min(e_rays[0], e_rays[1]), std::max(e_rays[0], e_rays[1])};
    ck.push_back(check("E_1 n E_2 empty", !is_face(x, pair)));
    auto basis = n1_span_of_divisor(x, d_ray);
    basis.push_back(rep.e1);
    basis.push_back(rep.e2);
    ck.push_back(check("N_1(X) = N_1(D) + Re_1 + Re_2", rank(basis) == rho,
                       "rank " + std::to_string(rank(basis)) + " of " + std::to_string(rho)));
    return rep;
}

FlipsPropertyResult check_flips_property(const MmpRun& run, std::size_t samples, std::uint32_t seed) {
    FlipsPropertyResult res;
    std::mt19937 rng(seed);
    const Fan& x = run.x;
    const std::size_t d_ray = x.index_of_label(run.d_label);
    const auto ws = walls(x);
    std::vector<std::vector<std::vector<IntVector>>> spans(run.k() + 1);
    auto span_in = [&](std::size_t i, int label) -> const std::vector<IntVector>& {
        static const std::vector<IntVector> none;
        const Fan& f = run_fan(run, i);
        const std::size_t r = f.index_of_label(label);
        if (r == f.num_rays()) return none;
        auto& cache = spans[i];
        if (cache.empty()) {
            cache.resize(f.num_rays());
            for (std::size_t v = 0; v < f.num_rays(); ++v) cache[v] = independent_subset(n1_span_of_divisor(f, v));
        }
        return cache[r];
    };
    for (std::size_t n = 0; n < samples; ++n) {
        ++res.samples;
        const std::size_t g_ray = std::uniform_int_distribution<std::size_t>(0, x.num_rays() - 1)(rng);
        std::vector<std::size_t> pool;
        for (std::size_t w = 0; w < ws.size(); ++w)
            if (has(ws[w].ridge, g_ray) || has(ws[w].ridge, d_ray)) pool.push_back(w);
        OneCycle cyc;
        const std::size_t terms = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
        for (std::size_t t = 0; t < terms; ++t) {
            const std::size_t w = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
            const long c = std::uniform_int_distribution<long>(1, 5)(rng);
            cyc.push_back(CycleTerm{labels_of(x, ws[w].ridge), Rational(c)});
        }
        const int g_label = x.labels[g_ray];
        std::optional<OneCycle> cur = normalize(cyc);
        for (std::size_t i = 2; i <= run.k(); ++i) {
            cur = transform_one_step(run.steps[i - 2], *cur);
            if (!cur) {
                ++res.undefined;
                break;
            }
            const Fan& f = run_fan(run, i);
            const RationalVector cls = cycle_class(f, *cur);
            std::vector<RationalVector> gens;
            for (const auto& v : span_in(i, g_label)) gens.push_back(to_rational(v));
            for (const auto& v : span_in(i, run.d_label)) gens.push_back(to_rational(v));
            ++res.checked;
            if (!in_span(gens, cls)) {
                if (res.failures++ == 0) {
                    std::ostringstream os;
                    os << "sample " << n << " G=" << g_label << " step " << i << " class " << to_string(cls);
                    res.first_failure = os.str();
                }
            }
        }
    }
    return res;
}

}  // namespace toricmmp
