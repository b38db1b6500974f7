#include "toricmmp/harness.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace toricmmp {

namespace {

struct Line {
    std::size_t number;
    std::string text;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& msg) : std::runtime_error(msg), line(line) {}
    std::size_t line;
};

std::vector<std::string> tokens(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    for (std::string t; is >> t;) out.push_back(t);
    return out;
}

long parse_long(const std::string& t, std::size_t line) {
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(t, &pos);
    } catch (const std::exception&) {
        throw ParseError(line, "not an integer: '" + t + "'");
    }
    if (pos != t.size()) throw ParseError(line, "not an integer: '" + t + "'");
    return v;
}

void parse_block(const std::vector<Line>& block, VarietyRecord& rec) {
    const Line& head = block.front();
    std::map<std::string, std::string> kv;
    for (const auto& t : tokens(head.text)) {
        const auto eq = t.find('=');
        if (eq == std::string::npos || eq == 0) throw ParseError(head.number, "malformed header field '" + t + "'");
        const std::string key = t.substr(0, eq);
        if (key != "id" && key != "dim" && key != "rays" && key != "mode")
            throw ParseError(head.number, "unknown header field '" + key + "'");
        if (!kv.emplace(key, t.substr(eq + 1)).second) throw ParseError(head.number, "repeated header field '" + key + "'");
    }
    if (!kv.count("id") || kv["id"].empty()) throw ParseError(head.number, "missing id");
    rec.id = kv["id"];
    if (!kv.count("dim")) throw ParseError(head.number, "missing dim");
    if (!kv.count("rays")) throw ParseError(head.number, "missing rays");
    const long dim = parse_long(kv["dim"], head.number);
    const long m = parse_long(kv["rays"], head.number);
    if (dim < 1) throw ParseError(head.number, "dim must be positive");
    if (m < 1) throw ParseError(head.number, "rays must be positive");
    rec.dim = static_cast<std::size_t>(dim);
    rec.mode = kv.count("mode") ? kv["mode"] : "polytope";
    if (rec.mode != "polytope" && rec.mode != "fan") throw ParseError(head.number, "unknown mode '" + rec.mode + "'");

    std::size_t pos = 1;
    for (long i = 0; i < m; ++i, ++pos) {
        if (pos >= block.size()) throw ParseError(block.back().number, "expected " + std::to_string(m) + " rays");
        const auto ts = tokens(block[pos].text);
        if (ts.size() != rec.dim)
            throw ParseError(block[pos].number, "expected " + std::to_string(rec.dim) + " coordinates");
        IntVector v;
        for (const auto& t : ts) v.push_back(Integer(parse_long(t, block[pos].number)));
        if (is_zero(v) || !is_primitive(v)) throw ParseError(block[pos].number, "non-primitive ray " + to_string(v));
        rec.rays.push_back(v);
    }
    if (rec.mode == "fan") {
        if (pos >= block.size() || trim(block[pos].text) != "cones")
            throw ParseError(pos < block.size() ? block[pos].number : block.back().number, "expected 'cones'");
        for (++pos; pos < block.size(); ++pos) {
            const auto ts = tokens(block[pos].text);
            if (ts.size() != rec.dim)
                throw ParseError(block[pos].number, "a maximal cone needs " + std::to_string(rec.dim) + " rays");
            Cone c;
            for (const auto& t : ts) {
                const long k = parse_long(t, block[pos].number);
                if (k < 1 || k > m) throw ParseError(block[pos].number, "ray index out of range: " + t);
                c.push_back(static_cast<std::size_t>(k - 1));
            }
            rec.cones.push_back(c);
        }
        if (rec.cones.empty()) throw ParseError(block.back().number, "no cones");
    } else if (pos != block.size()) {
        throw ParseError(block[pos].number, "unexpected line after the rays");
    }

    Fan f;
    try {
        f = rec.mode == "fan" ? make_fan(rec.dim, rec.rays, rec.cones) : fan_from_polytope(rec.rays);
    } catch (const std::exception& e) {
        throw ParseError(head.number, e.what());
    }
    const auto p = local_properties(f);
    if (!p.smooth) throw ParseError(head.number, "fan is not smooth");
    if (!p.fano) throw ParseError(head.number, "fan is not Fano");
    rec.fan = std::move(f);
}

}  // namespace

std::vector<VarietyRecord> ingest_text(const std::string& text, const std::string& source) {
    std::vector<std::vector<Line>> blocks(1);
    std::istringstream is(text);
    std::size_t number = 0;
    for (std::string raw; std::getline(is, raw);) {
        ++number;
        const std::string t = trim(raw);
        if (!t.empty() && t[0] == '#') continue;
        const std::string body = trim(t.substr(0, t.find('#')));
        if (body.empty()) {
            if (!blocks.back().empty()) blocks.emplace_back();
            continue;
        }
        blocks.back().push_back(Line{number, body});
    }
    if (blocks.back().empty()) blocks.pop_back();

    std::vector<VarietyRecord> out;
    std::set<std::string> ids;
    for (const auto& b : blocks) {
        VarietyRecord rec;
        rec.source = source;
        rec.first_line = b.front().number;
        rec.last_line = b.back().number;
        try {
            parse_block(b, rec);
        } catch (const ParseError& e) {
            rec.fan.reset();
            rec.diagnostic = source + ":" + std::to_string(e.line) + ": " + e.what();
        }
        if (!rec.id.empty() && !ids.insert(rec.id).second)
            throw IoError(source + ":" + std::to_string(rec.first_line) + ": duplicate id '" + rec.id + "'");
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<VarietyRecord> ingest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ingest_text(ss.str(), path);
}

}  // namespace toricmmp
