#include "toricmmp/harness.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace toricmmp {

using nlohmann::json;

namespace {

json num(const Integer& x) {
    if (x.fits_slong_p()) return x.get_si();
    return x.get_str();
}


json vec(const IntVector& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(num(x));
    return a;
}

json checks_json(const std::vector<CheckResult>& cs) {
    json a = json::array();
    for (const auto& c : cs) a.push_back({{"name", c.name}, {"pass", c.pass}, {"witness", c.witness}});
    return a;
}

VerificationReport verify_record(const VarietyRecord& r, const std::vector<std::string>& claim_ids,
                                 const VerifyOptions& opt) {
    try {
        return verify_all(*r.fan, r.id, claim_ids, opt);
    } catch (const std::exception& e) {
        VerificationReport rep;
        rep.id = r.id;
        rep.dim = r.dim;
        rep.checks.push_back(ClaimResult{"harness.error", ClaimStatus::fail, e.what(), {to_string(*r.fan)}});
        return rep;
    }
}

void sort_by_id(std::vector<VerificationReport>& reps) {
    std::stable_sort(reps.begin(), reps.end(),
                     [](const VerificationReport& a, const VerificationReport& b) { return a.id < b.id; });
}

}  // namespace

std::vector<VerificationReport> run_suite(const std::vector<VarietyRecord>& records,
                                          const std::vector<std::string>& claim_ids, const VerifyOptions& opt) {
    std::vector<VerificationReport> out;
    for (const auto& r : records)
        if (r.valid()) out.push_back(verify_record(r, claim_ids, opt));
    sort_by_id(out);
    return out;
}

std::vector<VerificationReport> run_suite_parallel(const std::vector<VarietyRecord>& records,
                                                   const std::vector<std::string>& claim_ids, int workers,
                                                   const VerifyOptions& opt) {
    std::vector<const VarietyRecord*> valid;
    for (const auto& r : records)
        if (r.valid()) valid.push_back(&r);
    std::vector<VerificationReport> out(valid.size());
    const long n = static_cast<long>(valid.size());
    const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long i = 0; i < n; ++i) out[i] = verify_record(*valid[i], claim_ids, opt);
    sort_by_id(out);
    return out;
}

json to_json(const Fan& f) {
    json rays = json::array();
    for (const auto& r : f.rays) rays.push_back(vec(r));
    json cones = json::array();
    for (const auto& c : f.cones) {
        json cj = json::array();
        for (auto i : c) cj.push_back(f.labels[i]);
        cones.push_back(cj);
    }
    return {{"dim", f.dim}, {"labels", f.labels}, {"rays", rays}, {"cones", cones}};
}

json to_json(const VerificationReport& r) {
    json checks = json::array();
    json witnesses = json::array();
    for (const auto& c : r.checks) {
        checks.push_back({{"claim", c.claim}, {"status", to_string(c.status)}, {"detail", c.detail}});
        for (const auto& w : c.witnesses) witnesses.push_back({{"claim", c.claim}, {"witness", w}});
    }
    json counters = json::object();
    for (const auto& [k, v] : r.counters) counters[k] = v;
    return {{"id", r.id},         {"dim", r.dim},           {"rho", r.rho},          {"c_x", r.c_x},
            {"checks", checks},   {"witnesses", witnesses}, {"counters", counters}};
}

json to_json(const MmpRun& run) {
    json steps = json::array();
    for (const auto& s : run.steps) {
        json j = {{"index", s.index},
                  {"kind", to_string(s.kind)},
                  {"generator", vec(s.ray.generator)},
                  {"d_degree", num(s.d_degree)},
                  {"k_degree", num(s.k_degree)},
                  {"special", s.special},
                  {"c_before", s.c_before},
                  {"terminal_after", s.terminal_after},
                  {"fan_after", to_json(s.after)}};
        if (s.kind == ContractionKind::divisorial) {
            j["removed_label"] = s.removed_label;
            j["center"] = s.center;
            j["smooth_codim2"] = s.smooth_codim2;
        } else {
            j["j_plus"] = s.j_plus;
            j["j_minus"] = s.j_minus;
        }
        steps.push_back(j);
    }
    return {{"d_label", run.d_label},
            {"k", run.k()},
            {"steps", steps},
            {"x_k", to_json(run.x_k)},
            {"fiber",
             {{"generator", vec(run.fiber_ray.generator)},
              {"d_degree", num(run.fiber_d_degree)},
              {"k_degree", num(run.fiber_k_degree)}}},
            {"y", to_json(run.y())},
            {"flip_debris", run.flip_debris}};
}

json to_json(const TypeBReport& r) {
    return {{"i1", r.i1},
            {"e_label", r.e_label},
            {"e_hat_label", r.e_hat_label},
            {"e", vec(r.e)},
            {"e_hat", vec(r.e_hat)},
            {"ell", vec(r.ell)},
            {"a_cone", r.a_cone},
            {"z_ray", r.z_ray},
            {"conic_bundle_smooth", r.conic_bundle_smooth},
            {"discriminant_walls", r.discriminant_walls},
            {"checks", checks_json(r.checks)}};
}

json to_json(const TypeAReport& r) {
    return {{"i1", r.i1},
            {"i2", r.i2},
            {"e1_label", r.e1_label},
            {"e2_label", r.e2_label},
            {"e1", vec(r.e1)},
            {"e2", vec(r.e2)},
            {"checks", checks_json(r.checks)}};
}

std::string format_report(const std::vector<VerificationReport>& reports, ReportFormat format) {
    std::ostringstream os;
    if (format == ReportFormat::json_lines) {
        for (const auto& r : reports) os << to_json(r).dump() << "\n";
        return os.str();
    }
    std::map<std::string, std::array<long, 3>> counts;
    for (const auto& r : reports)
        for (const auto& c : r.checks) ++counts[c.claim][static_cast<int>(c.status)];
    std::vector<std::string> order = all_claim_ids();
    for (const auto& [k, v] : counts)
        if (std::find(order.begin(), order.end(), k) == order.end()) order.push_back(k);
    os << "varieties: " << reports.size() << "\n";
    for (const auto& k : order) {
        auto it = counts.find(k);
        if (it == counts.end()) continue;
        os << k << ": " << it->second[0] << " pass / " << it->second[1] << " fail / " << it->second[2] << " n.a.\n";
    }
    return os.str();
}

void emit_report(const std::vector<VerificationReport>& reports, ReportFormat format, const std::string& path) {
    const std::string text = format_report(reports, format);
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << text;
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace toricmmp
