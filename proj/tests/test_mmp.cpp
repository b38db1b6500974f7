#include "doctest.h"
#include "fixtures.hpp"
#include "toricmmp/mmp.hpp"

using namespace toricmmp;
using oracle::iv;

namespace {

std::vector<Fan> threefolds() {
    return {product(fixtures::s2(), fixtures::p1()), product(fixtures::bl1p2(), fixtures::p1()),
            product(fixtures::hexagon(), fixtures::p1()), product(fixtures::p1p1(), fixtures::p1()),
            product(fixtures::p2(), fixtures::p1()), star_subdivision(fixtures::p3(), {0, 1})};
}

bool all_pass(const std::vector<CheckResult>& cs) {
    for (const auto& c : cs)
        if (!c.pass) {
            MESSAGE(c.name << ": " << c.witness);
            return false;
        }
    return true;
}

}  // namespace

TEST_CASE("special MMP on the blow-up of P2 at two points") {
    const Fan s2 = fixtures::s2();
    const auto runs = special_mmp(s2, 2, MmpStrategy::first);
    REQUIRE(runs.size() == 1);
    const MmpRun& run = runs[0];
    CHECK(run.k() == 2);
    REQUIRE(run.steps.size() == 1);
    const MmpStep& s = run.steps[0];
    CHECK(s.kind == ContractionKind::divisorial);
    CHECK(s.removed_label == 5);
    CHECK(s.center == LabelSet{2, 3});
    CHECK(s.d_degree == 1);
    CHECK(s.k_degree == 1);
    CHECK(s.special);
    CHECK(s.smooth_codim2);
    CHECK(run.x_k == fixtures::bl1p2());
    CHECK(run.fiber_ray.generator == iv({0, 0, 1, 1}));
    CHECK(run.fiber_d_degree == 1);
    CHECK(run.y().dim == 1);
    CHECK(run.y().num_rays() == 2);
    CHECK(all_pass(step_invariants(run)));

    const auto cls = classify_run(run);
    CHECK(cls.type == RunType::b);
    CHECK(cls.c_d == 2);
    CHECK(cls.c_dk == 1);
    CHECK(cls.special_indices == std::vector<std::size_t>{1});

    const auto tb = type_b_structure(run, cls);
    CHECK(tb.i1 == 1);
    CHECK(tb.e_label == 5);
    CHECK(tb.e_hat_label == 2);
    CHECK(tb.e == iv({0, 1, 1, 0, -1}));
    CHECK(tb.e_hat == iv({0, -1, 0, 1, 1}));
    CHECK(tb.ell == iv({0, 0, 1, 1, 0}));
    CHECK(tb.e_dot_e_hat == 1);
    CHECK(tb.e_hat_dot_e == 1);
    CHECK(tb.e_dot_ell == 0);
    CHECK(tb.e_hat_dot_ell == 0);
    CHECK(tb.ell_is_sum);
    CHECK(tb.xk_smooth);
    CHECK(tb.y_smooth);
    CHECK(tb.conic_bundle_smooth);
    CHECK(tb.discriminant_walls.empty());
    CHECK(tb.a_cone == LabelSet{2, 3});
    CHECK(all_pass(tb.checks));
    CHECK_THROWS_AS(type_a_structure(run, cls), MmpError);
}

TEST_CASE("special MMP on P2 ends immediately") {
    const auto runs = special_mmp(fixtures::p2(), 0, MmpStrategy::first);
    REQUIRE(runs.size() == 1);
    CHECK(runs[0].k() == 1);
    CHECK(runs[0].y().dim == 0);
    CHECK(runs[0].fiber_ray.generator == iv({1, 1, 1}));
    CHECK_THROWS_AS(classify_run(runs[0]), MmpError);
}

TEST_CASE("strategy all contains the first run") {
    const Fan s2 = fixtures::s2();
    const auto first = special_mmp(s2, 2, MmpStrategy::first);
    const auto all = special_mmp(s2, 2, MmpStrategy::all);
    REQUIRE(!all.empty());
    bool found = false;
    for (const auto& r : all) {
        CHECK(all_pass(step_invariants(r)));
        if (r.steps.size() == first[0].steps.size() && r.x_k == first[0].x_k &&
            r.fiber_ray.generator == first[0].fiber_ray.generator)
            found = true;
    }
    CHECK(found);
}

TEST_CASE("transform of one-cycles") {
    const Fan s2 = fixtures::s2();
    const MmpRun run = special_mmp(s2, 2, MmpStrategy::first)[0];
    // e^ = wall at v2, l = wall at v1, e = wall at v5
    const OneCycle e_hat{{{2}, Rational(1)}};
    auto t = transform_class(run, e_hat, 1, 2);
    REQUIRE(t);
    CHECK(cycle_class(run.x_k, *t) == to_rational(iv({0, 0, 1, 1})));
    const OneCycle ell{{{1}, Rational(1)}};
    t = transform_class(run, ell, 1, 2);
    REQUIRE(t);
    CHECK(cycle_class(run.x_k, *t) == to_rational(iv({0, 0, 1, 1})));
    const OneCycle e{{{5}, Rational(3)}};
    t = transform_class(run, e, 1, 2);
    REQUIRE(t);
    CHECK(t->empty());
    t = transform_class(run, e, 1, 1);
    REQUIRE(t);
    CHECK(cycle_class(s2, *t) == to_rational(iv({0, 3, 3, 0, -3})));
}

TEST_CASE("transform across a flip") {
    const Fan f = fixtures::circuit3();
    const auto ray = ray_of_class(f, iv({-1, -1, 1, 1, 0, 0, 0}));
    MmpRun run;
    run.x = f;
    run.d_label = 3;
    MmpStep s;
    s.index = 1;
    s.before = f;
    s.ray = ray;
    s.kind = ContractionKind::small;
    s.j_plus = {3, 4};
    s.j_minus = {1, 2};
    s.after = flip(f, ray);
    run.steps.push_back(s);
    run.x_k = s.after;
    CHECK_FALSE(transform_class(run, OneCycle{{{1, 2}, Rational(1)}}, 1, 2));
    const auto t = transform_class(run, OneCycle{{{1, 3}, Rational(2)}}, 1, 2);
    REQUIRE(t);
    REQUIRE(t->size() == 1);
    CHECK((*t)[0].ridge == LabelSet{1, 3});
    const auto rel = wall_relation_by_labels(run.x_k, {1, 3});
    REQUIRE(rel);
    CHECK(cycle_class(run.x_k, *t) == to_rational(IntVector{2 * (*rel)[0], 2 * (*rel)[1], 2 * (*rel)[2], 2 * (*rel)[3],
                                                            2 * (*rel)[4], 2 * (*rel)[5], 2 * (*rel)[6]}));
}

TEST_CASE("exceptional P1-bundle certificates") {
    const Fan s2 = fixtures::s2();
    CHECK(is_exceptional_p1_bundle(s2, 4, iv({0, 1, 1, 0, -1})));
    CHECK_FALSE(is_exceptional_p1_bundle(s2, 0, iv({0, 0, 1, 1, 0})));
    CHECK_FALSE(is_exceptional_p1_bundle(fixtures::p3(), 0, iv({-1, 1, 1, 1})));
    CHECK(elementary_span_identity(s2, 4, 2, iv({0, 1, 1, 0, -1})));
}

TEST_CASE("special MMPs on product threefolds") {
    for (const auto& f : threefolds()) {
        const auto rep = lefschetz_defect(f);
        for (std::size_t v = 0; v < f.num_rays(); ++v) {
            if (rep.c_values[v] < 1) continue;
            const auto runs = special_mmp(f, v, MmpStrategy::all);
            REQUIRE(!runs.empty());
            for (const auto& run : runs) {
                CHECK(all_pass(step_invariants(run)));
                const auto cls = classify_run(run);
                CHECK(cls.special_indices.size() == cls.c_d - cls.c_dk);
                if (rep.c_x == 2 && rep.c_values[v] == 2) {
                    if (cls.type == RunType::b)
                        CHECK(all_pass(type_b_structure(run, cls).checks));
                    else
                        CHECK(all_pass(type_a_structure(run, cls).checks));
                }
                const auto fp = check_flips_property(run, 100, 7);
                CHECK(fp.failures == 0);
            }
        }
    }
}
