#include <doctest.h>

#include <nctorus/algebra.hpp>
#include <nctorus/energy.hpp>
#include <nctorus/flow.hpp>
#include <nctorus/io.hpp>
#include <nctorus/verify.hpp>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

using namespace nctorus;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    auto d = fs::temp_directory_path() / "nctorus_io_test";
    fs::create_directories(d);
    return d;
}

} // namespace

TEST_CASE("element serialization round-trips bit for bit") {
    auto a = random_element(0.7071067811, 3, 0.1, 99);
    auto path = (temp_dir() / "elem.json").string();
    save_element(path, a);
    auto b = load_element(path);

    CHECK(b.theta() == a.theta());
    CHECK(b.bandwidth() == a.bandwidth());
    for (int m = -3; m <= 3; ++m)
        for (int n = -3; n <= 3; ++n)
            CHECK(b.coeff(m, n) == a.coeff(m, n));
}

TEST_CASE("element json only lists nonzero entries") {
    auto u = monomial(0.3, 1, -2, cplx(0.5, 0.25), TruncationPolicy{4, ClipMode::track_spill, 0.0});
    auto j = nlohmann::json::parse(element_to_json(u));
    CHECK(j.at("theta").get<double>() == 0.3);
    CHECK(j.at("bandwidth").get<int>() == 4);
    REQUIRE(j.at("entries").size() == 1);
    auto e = j.at("entries").at(0);
    CHECK(e.at(0).get<int>() == 1);
    CHECK(e.at(1).get<int>() == -2);
    CHECK(e.at(2).get<double>() == 0.5);
    CHECK(e.at(3).get<double>() == 0.25);
}

TEST_CASE("malformed element files are rejected") {
    CHECK_THROWS_AS(load_element("/nonexistent/elem.json"), std::runtime_error);
    CHECK_THROWS_AS(element_from_json("not json"), std::runtime_error);
    CHECK_THROWS_AS(element_from_json("{\"theta\": 0.3}"), std::runtime_error);
    CHECK_THROWS_AS(element_from_json(
                        "{\"theta\": 0.3, \"bandwidth\": 4, \"entries\": [[1, 2, 3]]}"),
                    std::runtime_error);
    CHECK_THROWS_AS(element_from_json(
                        "{\"theta\": 0.3, \"bandwidth\": 4, \"entries\": [[9, 0, 1.0, 0.0]]}"),
                    std::runtime_error);
    CHECK_THROWS_AS(element_from_json(
                        "{\"theta\": 0.3, \"bandwidth\": 0, \"entries\": []}"),
                    std::runtime_error);
}

TEST_CASE("flow traces serialize one record per line") {
    auto u = monomial(0.3, 1, 0, 1.0, TruncationPolicy{8, ClipMode::track_spill, 0.0});
    FlowConfig fc;
    fc.step_size = 3.5e-4;
    auto tr = flow(u, fc);
    auto text = flow_trace_to_jsonl(tr);

    std::vector<nlohmann::json> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        REQUIRE(nl != std::string::npos);
        lines.push_back(nlohmann::json::parse(text.substr(pos, nl - pos)));
        pos = nl + 1;
    }
    REQUIRE(lines.size() == tr.records.size() + 1);
    CHECK(lines.front().at("iter").get<long>() == 0);
    CHECK(lines.front().contains("energy"));
    CHECK(lines.front().contains("grad_norm"));
    CHECK(lines.front().contains("winding1"));
    CHECK(lines.front().contains("unitarity_defect"));
    CHECK(lines.front().contains("spill_mass"));
    CHECK(lines.back().at("status").get<std::string>() == "converged");
    CHECK(lines.back().at("iters").get<long>() == 0);
}

TEST_CASE("atomic writes leave no temp files and create directories") {
    auto dir = temp_dir() / "nested" / "deeper";
    fs::remove_all(temp_dir() / "nested");
    auto path = (dir / "out.txt").string();
    write_text_atomic(path, "payload");

    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "payload");
    CHECK(!fs::exists(path + ".tmp"));
}

TEST_CASE("summary reports write a csv twin when tabular") {
    auto rep = verify_endo_bound(0.5, 1);
    auto path = (temp_dir() / "endo.json").string();
    write_report_with_csv(path, rep);

    auto j = nlohmann::json::parse(std::ifstream(path));
    CHECK(j.at("harness").get<std::string>() == rep.harness);
    CHECK(j.at("pass").get<bool>() == rep.pass);
    CHECK(j.at("checks").size() == rep.checks.size());

    auto csv_path = (temp_dir() / "endo.csv").string();
    REQUIRE(fs::exists(csv_path));
    std::ifstream csv(csv_path);
    std::string header;
    std::getline(csv, header);
    CHECK(header == "a,b,c,d,det,energy");
    std::size_t rows = 0;
    std::string row;
    while (std::getline(csv, row))
        if (!row.empty()) ++rows;
    CHECK(rows == rep.table.size());
}

TEST_CASE("csv cells with commas are quoted") {
    SummaryReport r;
    r.harness = "demo";
    r.table_header = {"name", "note"};
    r.table.push_back({"x", "a,b \"quoted\""});
    auto csv = summary_to_csv(r);
    CHECK(csv == "name,note\nx,\"a,b \"\"quoted\"\"\"\n");
}

TEST_CASE("lemma reports serialize slacks by name") {
    auto pol = TruncationPolicy{8, ClipMode::track_spill, 0.0};
    auto rep = lemma_chain(monomial(0.3, 1, 0, 1.0, pol),
                           monomial(0.3, 0, 1, 1.0, pol));
    auto j = nlohmann::json::parse(lemma_report_to_json(rep));
    CHECK(j.at("t").get<double>() == rep.t);
    CHECK(j.at("region").get<std::string>() == "interior");
    bool saw_final = false;
    for (const auto& s : j.at("slacks")) {
        if (s.at("name").get<std::string>() == "final_bound") {
            saw_final = true;
            CHECK(s.at("diff").get<double>() < 0.0);
        }
    }
    CHECK(saw_final);
}
