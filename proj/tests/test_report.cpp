#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "nhlab/report.hpp"

using namespace nhlab;

TEST_CASE("complex numbers serialize as re/im") {
    json j = to_json(cplx(1.5, -2.0));
    CHECK(j["re"] == 1.5);
    CHECK(j["im"] == -2.0);
}

TEST_CASE("records") {
    CHECK(check_close("a", "x", cplx(1.0), cplx(1.0 + 1e-9), 1e-8).pass);
    CHECK_FALSE(check_close("a", "x", 1.0, 1.1, 1e-2).pass);
    CHECK(check_below("b", "x", 1e-9, 1e-8).pass);
    CHECK_FALSE(check_below("b", "x", 1e-7, 1e-8).pass);
    CHECK(check_at_least("c", "x", 0.9, 0.8).pass);
    Record i = info("d", "x", 3.0);
    CHECK(i.pass);
    CHECK(i.tolerance.is_null());
    Record f = failure("e", "x", ToleranceNotMet("no"));
    CHECK_FALSE(f.pass);
    CHECK(f.note == "ToleranceNotMet: no");
}

TEST_CASE("overall pass needs every record") {
    Report r;
    r.command = "t";
    Suite s;
    s.name = "s";
    s.add(check_true("one", "x", true));
    r.suites.push_back(s);
    CHECK(r.pass());
    r.suites[0].add(check_true("two", "x", false));
    CHECK_FALSE(r.pass());
    CHECK(r.failures() == 1);
    CHECK(r.checks() == 2);
    json j = r.to_json();
    CHECK(j["schema"] == 1);
    CHECK(j["pass"] == false);
    CHECK(j["suites"][0]["records"][1]["anchor"] == "x");
    CHECK_FALSE(r.to_json(false).contains("runtime_s"));
}

TEST_CASE("numbers are written without locale") {
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(-1e-300) == "-1e-300");
    Table t;
    t.columns = {"a", "b"};
    t.rows = {{0.25, "x,y"}};
    CHECK(t.csv() == "a,b\n0.25,\"x,y\"\n");
}

TEST_CASE("atomic write") {
    auto dir = std::filesystem::temp_directory_path() / "nhlab_report_test";
    std::filesystem::create_directories(dir);
    auto path = (dir / "r.json").string();
    write_atomic(path, "one");
    write_atomic(path, "two");
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == "two");
    int files = 0;
    for (auto& e : std::filesystem::directory_iterator(dir)) files += e.is_regular_file();
    CHECK(files == 1);
    std::filesystem::remove_all(dir);
}
