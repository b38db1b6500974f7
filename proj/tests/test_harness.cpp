#include "doctest.h"
#include "fixtures.hpp"
#include "toricmmp/harness.hpp"

#include <cstdio>
#include <fstream>

using namespace toricmmp;
using oracle::iv;

namespace {

const std::string data_dir = TORICMMP_DATA_DIR;

const ClaimResult& find_claim(const VerificationReport& r, const std::string& id) {
    for (const auto& c : r.checks)
        if (c.claim == id) return c;
    FAIL("claim missing: " << id);
    return r.checks.front();
}

}  // namespace

TEST_CASE("ingest the bundled del Pezzo surfaces") {
    const auto recs = ingest(data_dir + "/del_pezzo_surfaces.txt");
    REQUIRE(recs.size() == 5);
    for (const auto& r : recs) {
        REQUIRE(r.valid());
        CHECK(r.mode == "fan");
        CHECK(r.dim == 2);
        CHECK(r.diagnostic.empty());
    }
    CHECK(recs[3].id == "bl2p2");
    CHECK(recs[3].fan->rays == fixtures::s2().rays);
    CHECK(recs[3].fan->cones == fixtures::s2().cones);
}

TEST_CASE("ingest diagnostics") {
    SUBCASE("empty input") {
        CHECK(ingest_text("", "empty").empty());
        CHECK(ingest_text("# only a comment\n\n", "empty").empty());
    }
    SUBCASE("non-primitive ray is quarantined with a line number") {
        const auto recs = ingest_text("id=bad dim=2 rays=3\n2 0\n0 1\n-1 -1\n\nid=ok dim=2 rays=3\n1 0\n0 1\n-1 -1\n",
                                      "mem");
        REQUIRE(recs.size() == 2);
        CHECK_FALSE(recs[0].valid());
        CHECK(recs[0].id == "bad");
        CHECK(recs[0].diagnostic.rfind("mem:2:", 0) == 0);
        CHECK(recs[1].valid());
    }
    SUBCASE("singular and non-Fano inputs are quarantined") {
        const auto recs = ingest_text(
            "id=sing dim=2 rays=3\n1 0\n1 2\n-1 -1\n\n"
            "id=f2 dim=2 rays=4 mode=fan\n1 0\n0 1\n-1 2\n0 -1\ncones\n1 2\n2 3\n3 4\n4 1\n",
            "mem");
        REQUIRE(recs.size() == 2);
        CHECK_FALSE(recs[0].valid());
        CHECK(recs[0].diagnostic.find("not smooth") != std::string::npos);
        CHECK_FALSE(recs[1].valid());
        CHECK(recs[1].diagnostic.find("not Fano") != std::string::npos);
    }
    SUBCASE("malformed blocks") {
        const auto recs = ingest_text("id=x dim=2 rays=3\n1 0\n0 1\n\nid=y dim=2\n1 0\n", "mem");
        REQUIRE(recs.size() == 2);
        CHECK_FALSE(recs[0].valid());
        CHECK_FALSE(recs[1].valid());
        CHECK(recs[1].diagnostic.find("missing rays") != std::string::npos);
    }
    SUBCASE("duplicate ids are an error") {
        CHECK_THROWS_AS(ingest_text("id=a dim=1 rays=2\n1\n-1\n\nid=a dim=1 rays=2\n1\n-1\n", "mem"), IoError);
    }
    SUBCASE("missing file") { CHECK_THROWS_AS(ingest("/nonexistent/records.txt"), IoError); }
}

TEST_CASE("anticanonical polytope of the two-point blow-up is reflexive") {
    const Fan f = fixtures::s2();
    const auto verts = anticanonical_polytope_vertices(f);
    CHECK(verts.size() == 5);
    for (const auto& m : verts) {
        std::size_t tight = 0;
        for (const auto& u : f.rays) {
            Rational s = 0;
            for (std::size_t i = 0; i < u.size(); ++i) s += m[i] * Rational(u[i]);
            CHECK(s >= -1);
            if (s == -1) ++tight;
            CHECK(s.get_den() == 1);
        }
        CHECK(tight == 2);
    }
}

TEST_CASE("claims on small varieties") {
    SUBCASE("two-point blow-up of P2") {
        const auto rep = verify_all(fixtures::s2(), "s2", {});
        CHECK(rep.c_x == 2);
        CHECK_FALSE(rep.any_fail());
        CHECK(find_claim(rep, claims::main_dichotomy).status == ClaimStatus::pass);
        const auto& tp = find_claim(rep, claims::toric_prop);
        CHECK(tp.status == ClaimStatus::pass);
        CHECK(tp.detail.find("rho_Y=1") != std::string::npos);
        CHECK(rep.counters.at("runs") > 0);
    }
    SUBCASE("P3 has nothing to check beyond the bound") {
        const auto rep = verify_all(fixtures::p3(), "p3", {});
        CHECK(find_claim(rep, claims::codim_bound).status == ClaimStatus::pass);
        CHECK(find_claim(rep, claims::main_dichotomy).status == ClaimStatus::not_applicable);
        CHECK(find_claim(rep, claims::toric_prop).status == ClaimStatus::not_applicable);
        CHECK(find_claim(rep, claims::codim_dp4).status == ClaimStatus::not_applicable);
    }
    SUBCASE("hexagon times P1 fibres over P1 with a del Pezzo fibre") {
        const Fan f = product(fixtures::hexagon(), fixtures::p1());
        const auto rep = verify_all(f, "hex", {claims::codim_dp4});
        REQUIRE(rep.checks.size() == 1);
        CHECK(rep.c_x == 3);
        CHECK(rep.checks[0].status == ClaimStatus::pass);
    }
    SUBCASE("claim selection") {
        const auto rep = verify_all(fixtures::p2(), "p2", {claims::codim_bound, claims::dim_smallfacts});
        REQUIRE(rep.checks.size() == 2);
        CHECK(rep.checks[0].claim == claims::codim_bound);
        CHECK(rep.checks[1].claim == claims::dim_smallfacts);
    }
}

TEST_CASE("del Pezzo fibration of S2 x P1") {
    const Fan f = product(fixtures::s2(), fixtures::p1());
    const auto fib = find_del_pezzo_fibration(f, 3);
    REQUIRE(fib.has_value());
    CHECK(fib->equidimensional);
    CHECK(fib->fiber.dim == 2);
    CHECK(fib->fiber.num_rays() == 5);
    CHECK(fib->base.dim == 1);
    CHECK(fib->base_smooth);
    CHECK(fib->base_fano);
    CHECK_FALSE(find_del_pezzo_fibration(fixtures::p3(), 3).has_value());
}

TEST_CASE("reports") {
    const auto recs = ingest(data_dir + "/del_pezzo_surfaces.txt");
    const auto serial = run_suite(recs, {});
    const auto parallel = run_suite_parallel(recs, {}, 3);
    REQUIRE(serial.size() == 5);
    CHECK(format_report(serial, ReportFormat::json_lines) == format_report(parallel, ReportFormat::json_lines));
    CHECK(serial.front().id == "bl1p2");

    const std::string summary = format_report(serial, ReportFormat::text_summary);
    CHECK(summary.find("varieties: 5\n") == 0);
    CHECK(summary.find("codim.bound: 5 pass / 0 fail / 0 n.a.") != std::string::npos);
    CHECK(summary.find("main.dichotomy: 1 pass / 0 fail / 4 n.a.") != std::string::npos);

    const auto line = nlohmann::json::parse(format_report({serial.front()}, ReportFormat::json_lines));
    CHECK(line["id"] == "bl1p2");
    CHECK(line["rho"] == 2);
    CHECK(line["checks"].size() == all_claim_ids().size());

    const std::string path = "report_test_output.jsonl";
    emit_report(serial, ReportFormat::json_lines, path);
    std::ifstream in(path);
    std::size_t lines = 0;
    for (std::string s; std::getline(in, s);) ++lines;
    CHECK(lines == 5);
    std::remove(path.c_str());
    CHECK_THROWS_AS(emit_report(serial, ReportFormat::json_lines, "/nonexistent/dir/out.jsonl"), IoError);
}
