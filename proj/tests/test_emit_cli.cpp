#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"

#include "ctl/classify.hpp"
#include "ctl/emit.hpp"
#include "ctl/version.hpp"

using namespace ctl;

namespace {

struct CliResult {
    int exit_code;
    std::string out;
};

CliResult run_cli(const std::string& args, const std::string& env = "") {
    std::string cmd = env + " " + std::string(CTL_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    int status = pclose(pipe);
    return CliResult{WEXITSTATUS(status), out};
}

std::filesystem::path fresh_temp_dir(const std::string& tag) {
    auto dir = std::filesystem::temp_directory_path() / ("ctl-test-" + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

int count_occurrences(const std::string& hay, const std::string& needle) {
    int n = 0;
    for (size_t at = hay.find(needle); at != std::string::npos; at = hay.find(needle, at + 1)) ++n;
    return n;
}

} // namespace

TEST_CASE("DOT and JSON emission are byte-stable and structurally right") {
    auto cc = ClusterCategory::get(QuiverSpec{DynkinType(Family::A, 3)});
    std::vector<int> marked;
    for (const char* name : {"m:111", "m:100", "m:001"})
        marked.push_back(cc->index_of(CObject::parse(name, 3)));
    CQuiver cq = cc->ar_quiver(marked);

    std::string dot = quiver_to_dot(cq, "C(A3)");
    CHECK(dot == quiver_to_dot(cc->ar_quiver(marked), "C(A3)"));
    CHECK(count_occurrences(dot, "pos=") == 9);
    CHECK(count_occurrences(dot, " -> ") == 12);
    CHECK(count_occurrences(dot, "xlabel=\"*\"") == 3);
    CHECK(count_occurrences(dot, "seam") >= 1);

    std::string js = quiver_to_json(cq, "C(A3)");
    auto doc = nlohmann::json::parse(js);
    CHECK(doc["schema_version"] == kSchemaVersion);
    CHECK(doc["vertices"].size() == 9);
    CHECK(doc["arrows"].size() == 12);
    CHECK(doc["seam_twist"] == true);
}

TEST_CASE("classification JSON: schema round-trip and determinism across jobs") {
    QuiverSpec q{DynkinType(Family::D, 4)};
    ClassifyOptions opts;
    opts.use_cache = false;
    std::string a = report_to_json(classify(q, opts));
    opts.jobs = 2;
    std::string b = report_to_json(classify(q, opts));
    CHECK(a == b);

    auto doc = nlohmann::ordered_json::parse(a);
    CHECK(doc["schema_version"] == kSchemaVersion);
    CHECK(doc["kind"] == "classification");
    CHECK(doc["counts"]["cluster_tilting"] == 50);
    CHECK(doc["finalists"].size() == 6);
    for (const auto& f : doc["finalists"]) CHECK(f["self_injective"] == true);
    // Round-trip through the parser.
    CHECK(doc.dump(1) + "\n" == a);
}

TEST_CASE("classification cache hits are byte-identical to fresh runs") {
    auto dir = fresh_temp_dir("cache");
    QuiverSpec q{DynkinType(Family::A, 3)};
    ClassifyOptions cached;
    cached.cache_dir_override = dir.string();
    ClassifyOptions fresh;
    fresh.use_cache = false;

    bool hit = true;
    std::string first = classify_json_cached(q, cached, &hit);
    CHECK(!hit);
    std::string second = classify_json_cached(q, cached, &hit);
    CHECK(hit);
    std::string uncached = classify_json_cached(q, fresh, nullptr);
    CHECK(first == second);
    CHECK(first == uncached);
    std::filesystem::remove_all(dir);
}

TEST_CASE("cli: classify JSON output, cache agreement, exit codes") {
    auto dir = fresh_temp_dir("cli-cache");
    std::string env = "CTL_CACHE_DIR=" + dir.string();
    CliResult first = run_cli("classify --type A --rank 3", env);
    CHECK(first.exit_code == 0);
    CliResult second = run_cli("classify --type A --rank 3", env);
    CHECK(second.exit_code == 0);
    CliResult no_cache = run_cli("classify --type A --rank 3 --no-cache", env);
    CHECK(no_cache.exit_code == 0);
    CHECK(first.out == second.out);
    CHECK(first.out == no_cache.out);
    auto doc = nlohmann::json::parse(first.out);
    CHECK(doc["type"] == "A");
    CHECK(doc["counts"]["tau2_fixed_candidates"] == 2);
    std::filesystem::remove_all(dir);

    CHECK(run_cli("classify --type A --rank 3 --format text", env).exit_code == 0);
    CHECK(run_cli("classify").exit_code == 2);
    CHECK(run_cli("classify --type Q --rank 3").exit_code == 2);
    CHECK(run_cli("classify --type E --rank 9").exit_code == 2);
    CHECK(run_cli("nonsense").exit_code == 2);
}

TEST_CASE("cli: orbits, ar-quiver, tilting") {
    CliResult orbits = run_cli("orbits --type A --rank 3 --format json");
    CHECK(orbits.exit_code == 0);
    auto odoc = nlohmann::json::parse(orbits.out);
    std::multiset<size_t> lens;
    for (const auto& o : odoc["orbits"]) lens.insert(o["length"].get<size_t>());
    CHECK(lens == std::multiset<size_t>{3, 6});

    CliResult dot = run_cli("ar-quiver A 3 --mark m:111,m:100,m:001");
    CHECK(dot.exit_code == 0);
    CHECK(count_occurrences(dot.out, " -> ") == 12);

    CliResult mg = run_cli("ar-quiver A 3 --mode mod-gamma --mark m:111,m:100,m:001 --format json");
    CHECK(mg.exit_code == 0);
    auto mdoc = nlohmann::json::parse(mg.out);
    CHECK(mdoc["vertices"].size() == 6);

    CHECK(run_cli("ar-quiver A 3 --mode mod-gamma --mark m:111,m:100,m:010").exit_code == 2);
    CHECK(run_cli("ar-quiver A 3 --mark m:999").exit_code == 2);

    CliResult tilts = run_cli("tilting --type A --rank 3");
    CHECK(tilts.exit_code == 0);
    auto tdoc = nlohmann::json::parse(tilts.out);
    CHECK(tdoc["count"] == 14);
    CHECK(tdoc["objects"].size() == 14);
    CliResult si = run_cli("tilting --type A --rank 3 --selfinjective-only");
    auto sdoc = nlohmann::json::parse(si.out);
    CHECK(sdoc["count"] == 2);
}

TEST_CASE("degenerate ranks classify cleanly") {
    ClassifyOptions opts;
    opts.use_cache = false;

    // Rank 1: both objects are tau_c^2-fixed singletons with semisimple
    // endomorphism rings.
    ClassificationReport a1 = classify(QuiverSpec{DynkinType(Family::A, 1)}, opts);
    CHECK(a1.tilting_count == 2);
    CHECK(a1.finalists.size() == 2);
    for (const auto& f : a1.finalists) {
        CHECK(f.dimension == 1);
        CHECK(f.family == "serial-nakayama");
        REQUIRE(f.kupisch.has_value());
        CHECK(*f.kupisch == std::vector<int>{1});
    }

    // A_2: the pentagon has odd orbit length, so no candidates at all.
    CHECK(classify(QuiverSpec{DynkinType(Family::A, 2)}, opts).finalists.empty());

    // D_3 is the A_3 diagram; the classifications agree.
    ClassificationReport d3 = classify(QuiverSpec{DynkinType(Family::D, 3)}, opts);
    ClassificationReport a3 = classify(QuiverSpec{DynkinType(Family::A, 3)}, opts);
    CHECK(d3.indecomposables == a3.indecomposables);
    CHECK(d3.orbit_lengths == a3.orbit_lengths);
    CHECK(d3.tilting_count == a3.tilting_count);
    CHECK(d3.finalists.size() == a3.finalists.size());
    for (size_t i = 0; i < d3.finalists.size(); ++i) {
        CHECK(d3.finalists[i].family == a3.finalists[i].family);
        CHECK(d3.finalists[i].dimension == a3.finalists[i].dimension);
        CHECK(d3.finalists[i].kupisch == a3.finalists[i].kupisch);
    }
}

TEST_CASE("classification is orientation-independent, finalists included") {
    ClassifyOptions opts;
    opts.use_cache = false;
    DynkinType t(Family::D, 5);
    auto summary = [](const ClassificationReport& r) {
        std::multiset<std::pair<std::string, long long>> s;
        for (const auto& f : r.finalists) s.insert({f.family, f.dimension});
        return s;
    };
    ClassificationReport base = classify(QuiverSpec{t}, opts);
    std::mt19937 rng(99);
    for (int rep = 0; rep < 2; ++rep) {
        std::vector<bool> dirs;
        for (size_t i = 0; i < QuiverSpec::diagram_edges(t).size(); ++i) dirs.push_back(rng() & 1);
        ClassificationReport r = classify(QuiverSpec(t, dirs), opts);
        CHECK(r.tilting_count == base.tilting_count);
        CHECK(r.candidate_count == base.candidate_count);
        CHECK(r.orbit_lengths == base.orbit_lengths);
        CHECK(summary(r) == summary(base));
    }
}

TEST_CASE("cli: selfcheck fast scope passes") {
    CliResult r = run_cli("selfcheck --scope fast");
    CHECK(r.exit_code == 0);
    CHECK(count_occurrences(r.out, "[FAIL]") == 0);
    CHECK(count_occurrences(r.out, "selfcheck OK") == 1);
}
