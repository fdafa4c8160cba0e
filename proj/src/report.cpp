#include "nhlab/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace nhlab {

namespace {

json number(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

std::string csv_cell(const json& v) {
    if (v.is_null()) return "";
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number()) return format_number(v.get<double>());
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    }
    return csv_cell(json(v.dump()));
}

// complex values become (re, im); scalars put their value in re
std::pair<json, json> split(const json& v) {
    if (v.is_object() && v.contains("re")) return {v["re"], v["im"]};
    if (v.is_number() || v.is_null() || v.is_boolean()) return {v, nullptr};
    return {json(v.dump()), nullptr};
}

} // namespace

json to_json(cplx v) { return {{"re", number(v.real())}, {"im", number(v.imag())}}; }

json to_json(const ModelParams& p) {
    return {{"model", to_string(p.model)}, {"alpha", to_json(p.alpha)}, {"beta", p.beta}, {"z", to_json(p.z)},
            {"n", p.n}};
}

Record check_close(std::string id, std::string anchor, cplx computed, cplx target, double tol, std::string note) {
    const double d = std::abs(computed - target);
    return {std::move(id), std::move(anchor), to_json(computed), to_json(target), tol, d <= tol, std::move(note)};
}

Record check_close(std::string id, std::string anchor, double computed, double target, double tol, std::string note) {
    const double d = std::abs(computed - target);
    return {std::move(id), std::move(anchor), number(computed), target, tol, d <= tol, std::move(note)};
}

Record check_below(std::string id, std::string anchor, double computed, double bound, std::string note) {
    Record r{std::move(id), std::move(anchor), number(computed), 0.0, bound, computed < bound, std::move(note)};
    return r;
}

Record check_at_least(std::string id, std::string anchor, double computed, double bound, std::string note) {
    if (!note.empty()) note += "; ";
    note += "lower bound";
    return {std::move(id), std::move(anchor), number(computed), bound, 0.0, computed >= bound, std::move(note)};
}

Record check_true(std::string id, std::string anchor, bool ok, std::string note) {
    return {std::move(id), std::move(anchor), ok, true, 0.0, ok, std::move(note)};
}

Record info(std::string id, std::string anchor, json computed, std::string note) {
    return {std::move(id), std::move(anchor), std::move(computed), nullptr, nullptr, true, std::move(note)};
}

Record failure(std::string id, std::string anchor, const std::exception& e) {
    std::string kind = "exception";
    if (auto* ne = dynamic_cast<const Error*>(&e)) kind = ne->kind();
    return {std::move(id), std::move(anchor), nullptr, nullptr, nullptr, false, kind + ": " + e.what()};
}

std::string Table::csv() const {
    std::string out;
    for (size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + csv_cell(columns[i]);
    out += "\n";
    for (auto& r : rows) {
        for (size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + csv_cell(r[i]);
        out += "\n";
    }
    return out;
}

bool Suite::pass() const { return failures() == 0; }

int Suite::failures() const {
    int n = 0;
    for (auto& r : records) n += !r.pass;
    return n;
}

bool Report::pass() const { return failures() == 0; }

int Report::checks() const {
    int n = 0;
    for (auto& s : suites) n += static_cast<int>(s.records.size());
    return n;
}

int Report::failures() const {
    int n = 0;
    for (auto& s : suites) n += s.failures();
    return n;
}

json Report::to_json(bool with_runtime) const {
    json j;
    j["schema"] = 1;
    j["command"] = command;
    j["config"] = config;
    j["pass"] = pass();
    j["checks"] = checks();
    j["failures"] = failures();
    json suites_j = json::array();
    for (auto& s : suites) {
        json sj;
        sj["name"] = s.name;
        sj["pass"] = s.pass();
        json recs = json::array();
        for (auto& r : s.records) {
            json rj;
            rj["id"] = r.id;
            rj["anchor"] = r.anchor;
            rj["computed"] = r.computed;
            rj["target"] = r.target;
            rj["tolerance"] = r.tolerance;
            rj["pass"] = r.pass;
            if (!r.note.empty()) rj["note"] = r.note;
            recs.push_back(rj);
        }
        sj["records"] = recs;
        json tabs = json::array();
        for (auto& t : s.tables) tabs.push_back({{"columns", t.columns}, {"rows", t.rows}});
        if (!s.tables.empty()) sj["tables"] = tabs;
        if (with_runtime) sj["runtime_s"] = s.runtime;
        suites_j.push_back(sj);
    }
    j["suites"] = suites_j;
    if (with_runtime) j["runtime_s"] = runtime;
    return j;
}

std::string Report::csv() const {
    Table t;
    t.columns = {"suite", "id", "anchor", "computed_re", "computed_im", "target_re", "target_im", "tolerance",
                 "pass", "note"};
    for (auto& s : suites)
        for (auto& r : s.records) {
            auto [cr, ci] = split(r.computed);
            auto [tr, ti] = split(r.target);
            t.rows.push_back({s.name, r.id, r.anchor, cr, ci, tr, ti, r.tolerance, r.pass, r.note});
        }
    return t.csv();
}

std::string Report::summary() const {
    std::ostringstream os;
    os << command << ": " << (pass() ? "PASS" : "FAIL") << " (" << checks() - failures() << "/" << checks()
       << " checks";
    if (failures()) {
        os << "; failing:";
        int shown = 0;
        for (auto& s : suites)
            for (auto& r : s.records)
                if (!r.pass && shown++ < 5) os << " " << s.name << "/" << r.id;
        if (shown > 5) os << " …";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", runtime);
    os << ") in " << buf << " s";
    return os.str();
}

std::string format_number(double v) {
    if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw std::runtime_error("cannot rename onto " + target.string() + ": " + ec.message());
    }
}

} // namespace nhlab
