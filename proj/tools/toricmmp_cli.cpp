// Command-line front end: validation, invariants, MMP traces and batch
// verification of toric Fano databases.
//
// Exit codes: 0 all checks pass or are not applicable, 1 some claim fails,
// 2 input or system error. TORICMMP_LOG sets the log level (trace, debug,
// info, warn, error, off; default warn).

#include "CLI11.hpp"
#include "toricmmp/harness.hpp"

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace toricmmp;
using nlohmann::json;

namespace {

struct Options {
    std::string file;
    std::string out;
    std::string format = "json-lines";
    int workers = 0;
    std::size_t step_bound = 0;
    std::vector<std::string> claims;
    std::string id;
    int divisor = 0;
    std::string strategy = "first";
};

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("toricmmp");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");
    const char* env = std::getenv("TORICMMP_LOG");
    spdlog::set_level(env ? spdlog::level::from_str(env) : spdlog::level::warn);
}

void write_text(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << text;
}

std::vector<VarietyRecord> load(const Options& o) {
    auto recs = ingest(o.file);
    std::size_t bad = 0;
    for (const auto& r : recs)
        if (!r.valid()) {
            ++bad;
            spdlog::warn("quarantined {}", r.diagnostic);
        }
    spdlog::info("{}: {} records, {} quarantined", o.file, recs.size(), bad);
    return recs;
}

int cmd_check(const Options& o) {
    const auto recs = load(o);
    std::ostringstream os;
    bool bad = false;
    for (const auto& r : recs) {
        if (r.valid())
            os << r.id << ": ok dim=" << r.dim << " rays=" << r.fan->num_rays() << "\n";
        else {
            os << (r.id.empty() ? "?" : r.id) << ": quarantined " << r.diagnostic << "\n";
            bad = true;
        }
    }
    write_text(os.str(), o.out);
    return bad ? 2 : 0;
}

int cmd_invariants(const Options& o) {
    const auto recs = load(o);
    std::ostringstream os;
    for (const auto& r : recs) {
        if (!r.valid() || (!o.id.empty() && r.id != o.id)) continue;
        const auto lr = lefschetz_defect_parallel(*r.fan);
        if (o.format == "json-lines") {
            json c = json::object();
            for (std::size_t v = 0; v < lr.c_values.size(); ++v) c[std::to_string(r.fan->labels[v])] = lr.c_values[v];
            os << json{{"id", r.id}, {"dim", r.dim}, {"rho", lr.rho}, {"c", c}, {"c_x", lr.c_x}}.dump() << "\n";
        } else {
            os << r.id << ": rho=" << lr.rho << " c_X=" << lr.c_x << " c=(";
            for (std::size_t v = 0; v < lr.c_values.size(); ++v) os << (v ? "," : "") << lr.c_values[v];
            os << ")\n";
        }
    }
    write_text(os.str(), o.out);
    return 0;
}

int cmd_mmp(const Options& o) {
    const auto recs = load(o);
    const VarietyRecord* rec = nullptr;
    for (const auto& r : recs)
        if (r.id == o.id) rec = &r;
    if (!rec) throw IoError("no record with id '" + o.id + "'");
    if (!rec->valid()) throw IoError("record is quarantined: " + rec->diagnostic);
    const Fan& f = *rec->fan;
    const std::size_t d = f.index_of_label(o.divisor);
    if (d == f.num_rays()) throw IoError("no ray " + std::to_string(o.divisor));
    const auto strategy = o.strategy == "all" ? MmpStrategy::all : MmpStrategy::first;
    const auto runs = special_mmp(f, d, strategy, o.step_bound);
    spdlog::info("{} runs", runs.size());
    bool fail = false;
    std::ostringstream os;
    for (const auto& run : runs) {
        json j = to_json(run);
        j["id"] = rec->id;
        json inv = json::array();
        for (const auto& c : step_invariants(run)) {
            inv.push_back({{"name", c.name}, {"pass", c.pass}, {"witness", c.witness}});
            if (!c.pass) fail = true;
        }
        j["invariants"] = inv;
        try {
            const auto cls = classify_run(run);
            j["type"] = to_string(cls.type);
            j["special_indices"] = cls.special_indices;
            j["c_dk"] = cls.c_dk;
            if (cls.c_d == 2 && lefschetz_defect(f).c_x == 2) {
                if (cls.type == RunType::b) {
                    const auto tb = type_b_structure(run, cls);
                    j["type_b"] = to_json(tb);
                    fail = fail || !tb.all_pass();
                } else {
                    const auto ta = type_a_structure(run, cls);
                    j["type_a"] = to_json(ta);
                    fail = fail || !ta.all_pass();
                }
            }
        } catch (const MmpError& e) {
            j["classification_error"] = e.what();
        }
        if (o.format == "json-lines")
            os << j.dump() << "\n";
        else
            os << j.dump(2) << "\n";
    }
    write_text(os.str(), o.out);
    return fail ? 1 : 0;
}

int cmd_verify(const Options& o) {
    for (const auto& c : o.claims) {
        const auto& ids = all_claim_ids();
        if (std::find(ids.begin(), ids.end(), c) == ids.end()) throw IoError("unknown claim id '" + c + "'");
    }
    const auto recs = load(o);
    VerifyOptions vo;
    vo.step_bound = o.step_bound;
    const auto reports = run_suite_parallel(recs, o.claims, o.workers, vo);
    for (const auto& r : reports) spdlog::debug("{}: {:.3f} s", r.id, r.seconds);
    emit_report(reports, o.format == "text-summary" ? ReportFormat::text_summary : ReportFormat::json_lines, o.out);
    const bool fail = std::any_of(reports.begin(), reports.end(), [](const auto& r) { return r.any_fail(); });
    return fail ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    setup_logging();
    CLI::App app{"Special MMPs and Lefschetz defects of smooth toric Fano varieties"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("file", o.file, "record file")->required();
        sub->add_option("--out", o.out, "output path (stdout if omitted)");
        sub->add_option("--format", o.format, "json-lines or text-summary")
            ->check(CLI::IsMember({"json-lines", "text-summary"}));
        sub->add_option("--workers", o.workers, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
        sub->add_option("--step-bound", o.step_bound, "MMP step bound (0 = 10 * rho)");
    };
    auto* check = app.add_subcommand("check", "validate a record file");
    common(check);
    auto* inv = app.add_subcommand("invariants", "rho, c(D) per ray and c_X");
    common(inv);
    inv->add_option("--id", o.id, "only this record");
    auto* mmp = app.add_subcommand("mmp", "run special MMPs for -D");
    common(mmp);
    mmp->add_option("--id", o.id, "record id")->required();
    mmp->add_option("--divisor", o.divisor, "ray label of D (1-based)")->required();
    mmp->add_option("--strategy", o.strategy, "first or all")->check(CLI::IsMember({"first", "all"}));
    auto* ver = app.add_subcommand("verify", "verify claims on every record");
    common(ver);
    ver->add_option("--claims", o.claims, "claim ids (comma separated)")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    try {
        if (*check) return cmd_check(o);
        if (*inv) return cmd_invariants(o);
        if (*mmp) return cmd_mmp(o);
        return cmd_verify(o);
    } catch (const IoError& e) {
        spdlog::error("{}", e.what());
        return 2;
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return 2;
    }
}
