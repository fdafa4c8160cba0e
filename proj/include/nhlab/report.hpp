#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "nhlab/model.hpp"

namespace nhlab {

using json = nlohmann::json;

json to_json(cplx v); // {"re": …, "im": …}
json to_json(const ModelParams& p);

// One check.  tolerance = null marks an informational record, which passes.
struct Record {
    std::string id;
    std::string anchor; // stable topic key, e.g. "jordan-bound/binorm"
    json computed;
    json target;
    json tolerance;
    bool pass = true;
    std::string note;
};

Record check_close(std::string id, std::string anchor, cplx computed, cplx target, double tol, std::string note = {});
Record check_close(std::string id, std::string anchor, double computed, double target, double tol,
                   std::string note = {});
Record check_below(std::string id, std::string anchor, double computed, double bound, std::string note = {});
Record check_at_least(std::string id, std::string anchor, double computed, double bound, std::string note = {});
Record check_true(std::string id, std::string anchor, bool ok, std::string note = {});
Record info(std::string id, std::string anchor, json computed, std::string note = {});
Record failure(std::string id, std::string anchor, const std::exception& e);

// rows of plot data; cells are numbers, strings or booleans
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;

    std::string csv() const;
};

struct Suite {
    std::string name;
    std::vector<Record> records;
    std::vector<Table> tables;
    double runtime = 0.0;

    bool pass() const;
    int failures() const;
    void add(Record r) { records.push_back(std::move(r)); }
};

struct Report {
    std::string command;
    json config = json::object();
    std::vector<Suite> suites;
    double runtime = 0.0;

    bool pass() const;
    int checks() const;
    int failures() const;
    json to_json(bool with_runtime = true) const;
    std::string csv() const; // one line per record
    std::string summary() const;
};

// locale-independent shortest round-trip formatting
std::string format_number(double v);

// write to a temporary sibling, then rename over the target
void write_atomic(const std::string& path, const std::string& content);

} // namespace nhlab
