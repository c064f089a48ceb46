#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ctl/classify.hpp"
#include "ctl/emit.hpp"
#include "ctl/errors.hpp"
#include "ctl/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

struct TypeArgs {
    std::string type_flag, type_pos;
    int rank_flag = -1, rank_pos = -1;
    std::string orientation;
};

void add_type_options(CLI::App* cmd, TypeArgs& args) {
    cmd->add_option("--type", args.type_flag, "Dynkin family: A, D or E");
    cmd->add_option("--rank", args.rank_flag, "rank of the diagram");
    cmd->add_option("FAMILY", args.type_pos, "Dynkin family (positional alternative)");
    cmd->add_option("N", args.rank_pos, "rank (positional alternative)");
    cmd->add_option("--orientation", args.orientation,
                    "per-edge orientation, '+' toward the higher vertex (default all '+')");
}

ctl::QuiverSpec resolve_quiver(const TypeArgs& args) {
    std::string fam = !args.type_flag.empty() ? args.type_flag : args.type_pos;
    int rank = args.rank_flag >= 0 ? args.rank_flag : args.rank_pos;
    if (fam.empty() || rank < 0)
        throw std::invalid_argument("a Dynkin type is required: --type {A,D,E} --rank N");
    if (!args.type_flag.empty() && !args.type_pos.empty() && args.type_flag != args.type_pos)
        throw std::invalid_argument("conflicting positional and flag family");
    ctl::DynkinType t(ctl::family_from_char(fam[0]), rank);
    // Documented desk-scale ceilings.
    int cap = t.family == ctl::Family::D ? 9 : 8;
    if (t.rank > cap)
        throw std::invalid_argument("rank " + std::to_string(rank) +
                                    " exceeds the supported ceiling for " + fam);
    if (args.orientation.empty()) return ctl::QuiverSpec{t};
    return ctl::QuiverSpec::from_orientation_string(t, args.orientation);
}

std::vector<int> parse_mark(const ctl::ClusterCategory& cc, const std::string& mark) {
    std::vector<int> labels;
    size_t pos = 0;
    while (pos < mark.size()) {
        size_t comma = mark.find(',', pos);
        std::string item =
            mark.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (!item.empty()) {
            int idx = cc.index_of(ctl::CObject::parse(item, cc.n()));
            if (idx < 0) throw std::invalid_argument("label '" + item + "' does not name an object");
            labels.push_back(idx);
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return labels;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exhaustive verifier for self-injective cluster tilted algebras"};
    app.set_version_flag("--version", ctl::kToolVersion);
    app.require_subcommand(1);

    TypeArgs cl_args;
    std::string cl_format = "json";
    bool cl_no_cache = false;
    int cl_jobs = 1;
    CLI::App* cmd_classify = app.add_subcommand("classify", "run the full classification pipeline");
    add_type_options(cmd_classify, cl_args);
    cmd_classify->add_option("--format", cl_format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    cmd_classify->add_flag("--no-cache", cl_no_cache, "bypass the on-disk result cache");
    cmd_classify->add_option("--jobs", cl_jobs, "worker threads for the enumeration")
        ->check(CLI::PositiveNumber);

    TypeArgs orb_args;
    std::string orb_format = "text";
    CLI::App* cmd_orbits = app.add_subcommand("orbits", "print the tau_c orbit table");
    add_type_options(cmd_orbits, orb_args);
    cmd_orbits->add_option("--format", orb_format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));

    TypeArgs ar_args;
    std::string ar_format = "dot", ar_mode = "cluster", ar_mark;
    CLI::App* cmd_ar = app.add_subcommand("ar-quiver", "emit the Auslander-Reiten quiver");
    add_type_options(cmd_ar, ar_args);
    cmd_ar->add_option("--format", ar_format, "dot or json")->check(CLI::IsMember({"dot", "json"}));
    cmd_ar->add_option("--mode", ar_mode, "cluster or mod-gamma")
        ->check(CLI::IsMember({"cluster", "mod-gamma"}));
    cmd_ar->add_option("--mark", ar_mark,
                       "comma-separated labels (m:<digits> or sp:<vertex>) to star; required and "
                       "cluster-tilting in mod-gamma mode");

    TypeArgs ti_args;
    bool ti_selfinjective = false;
    int ti_jobs = 1;
    CLI::App* cmd_tilting = app.add_subcommand("tilting", "list all cluster-tilting objects as JSON");
    add_type_options(cmd_tilting, ti_args);
    cmd_tilting->add_flag("--selfinjective-only", ti_selfinjective,
                          "restrict to tau_c^2-fixed objects");
    cmd_tilting->add_option("--jobs", ti_jobs, "worker threads")->check(CLI::PositiveNumber);

    std::string sc_scope = "fast";
    int sc_jobs = 1;
    CLI::App* cmd_selfcheck = app.add_subcommand("selfcheck", "run the invariant suites");
    cmd_selfcheck->add_option("--scope", sc_scope, "fast or full")
        ->check(CLI::IsMember({"fast", "full"}));
    cmd_selfcheck->add_option("--jobs", sc_jobs, "worker threads")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help / --version
        app.exit(e);
        return kExitUsage;
    }

    try {
        auto started = std::chrono::steady_clock::now();
        auto elapsed_ms = [&] {
            return std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - started)
                .count();
        };

        if (cmd_classify->parsed()) {
            ctl::QuiverSpec q = resolve_quiver(cl_args);
            ctl::ClassifyOptions opts;
            opts.jobs = cl_jobs;
            opts.use_cache = !cl_no_cache;
            if (cl_format == "json") {
                bool hit = false;
                std::cout << ctl::classify_json_cached(q, opts, &hit);
                std::cerr << "classify " << q.type().name() << (hit ? " (cache hit)" : "") << " in "
                          << elapsed_ms() << " ms\n";
            } else {
                ctl::ClassificationReport report = ctl::classify(q, opts);
                std::cout << ctl::report_to_text(report);
                std::cerr << "elapsed " << elapsed_ms() << " ms\n";
            }
            return kExitOk;
        }

        if (cmd_orbits->parsed()) {
            ctl::QuiverSpec q = resolve_quiver(orb_args);
            auto cc = ctl::ClusterCategory::get(q);
            if (orb_format == "json") {
                std::cout << "{\n \"schema_version\": " << ctl::kSchemaVersion
                          << ",\n \"tool_version\": \"" << ctl::kToolVersion
                          << "\",\n \"kind\": \"tau-orbits\",\n \"type\": \""
                          << ctl::family_char(q.type().family) << "\",\n \"rank\": " << q.type().rank
                          << ",\n \"orbits\": [";
                for (size_t i = 0; i < cc->orbits().size(); ++i) {
                    const auto& orbit = cc->orbits()[i];
                    std::cout << (i ? ",\n  {" : "\n  {") << "\"length\": " << orbit.size()
                              << ", \"members\": [";
                    for (size_t k = 0; k < orbit.size(); ++k)
                        std::cout << (k ? ", " : "") << '"' << cc->label(orbit[k]).str() << '"';
                    std::cout << "]}";
                }
                std::cout << "\n ]\n}\n";
            } else {
                for (const auto& orbit : cc->orbits()) {
                    std::cout << "orbit length " << orbit.size() << ":";
                    for (int lbl : orbit) std::cout << " " << cc->label(lbl).str();
                    std::cout << "\n";
                }
            }
            return kExitOk;
        }

        if (cmd_ar->parsed()) {
            ctl::QuiverSpec q = resolve_quiver(ar_args);
            auto cc = ctl::ClusterCategory::get(q);
            std::vector<int> mark;
            if (!ar_mark.empty()) mark = parse_mark(*cc, ar_mark);
            ctl::CQuiver cq;
            if (ar_mode == "mod-gamma") {
                if (!cc->is_cluster_tilting_set(mark))
                    throw std::invalid_argument(
                        "--mark must name a cluster-tilting object in mod-gamma mode");
                cq = cc->mod_gamma_quiver(mark);
            } else {
                cq = cc->ar_quiver(mark);
            }
            std::string title = (ar_mode == "cluster" ? "C(" + q.type().name() + ")"
                                                      : "mod End(T), " + q.type().name());
            std::cout << (ar_format == "dot" ? ctl::quiver_to_dot(cq, title)
                                             : ctl::quiver_to_json(cq, title));
            return kExitOk;
        }

        if (cmd_tilting->parsed()) {
            ctl::QuiverSpec q = resolve_quiver(ti_args);
            auto cc = ctl::ClusterCategory::get(q);
            auto tilts = ctl::enumerate_cluster_tilting(*cc, ti_jobs);
            if (ti_selfinjective) tilts = ctl::selfinjective_candidates(*cc, tilts);
            ctl::emit_tilting_list(std::cout, *cc, tilts);
            std::cerr << "enumerated in " << elapsed_ms() << " ms\n";
            return kExitOk;
        }

        if (cmd_selfcheck->parsed()) {
            auto results = ctl::run_selfcheck(sc_scope == "full", sc_jobs);
            bool all = true;
            for (const auto& r : results) {
                std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name;
                if (!r.pass) std::cout << ": " << r.detail;
                std::cout << "\n";
                all = all && r.pass;
            }
            std::cout << (all ? "selfcheck OK" : "selfcheck FAILED") << " (" << results.size()
                      << " checks, " << elapsed_ms() << " ms)\n";
            return all ? kExitOk : kExitInternal;
        }
    } catch (const ctl::internal_error& e) {
        std::cerr << "internal consistency failure: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}
