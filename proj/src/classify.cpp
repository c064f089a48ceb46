#include "ctl/classify.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"

#include "ctl/errors.hpp"
#include "ctl/version.hpp"

namespace ctl {

namespace {

FinalistReport analyze_candidate(const ClusterCategory& cc, const std::vector<int>& t) {
    FinalistReport fr;
    fr.labels = t;
    for (int lbl : t) fr.label_names.push_back(cc.label(lbl).str());
    auto norm = normalize_to_module_rep(cc, t);
    check_internal(norm.has_value(), "candidate admits no module-only normalization");
    fr.norm = *norm;
    auto cat = ClusterCategory::get(fr.norm.quiver);
    BasicAlgebra g = build_end_algebra(*cat, fr.norm.labels);
    fr.dimension = g.dim();
    fr.cartan = g.cartan();
    fr.self_injective = is_self_injective(g);
    check_internal(fr.self_injective, "tau_c^2-fixed candidate is not self-injective");
    auto nu = nakayama_permutation(g);
    check_internal(nu.has_value(), "self-injective algebra without a Nakayama permutation");
    fr.nakayama_perm = *nu;
    fr.nakayama_orbit_count = permutation_orbit_count(*nu);
    {
        std::vector<bool> seen(fr.nakayama_perm.size(), false);
        for (size_t i = 0; i < fr.nakayama_perm.size(); ++i) {
            if (seen[i]) continue;
            int len = 0;
            for (size_t cur = i; !seen[cur]; cur = static_cast<size_t>(fr.nakayama_perm[cur])) {
                seen[cur] = true;
                ++len;
            }
            fr.nakayama_cycle_type.push_back(len);
        }
        std::sort(fr.nakayama_cycle_type.rbegin(), fr.nakayama_cycle_type.rend());
    }
    fr.kupisch = kupisch_series(g);
    fr.special_biserial = is_special_biserial(g);
    GabrielQuiver gq = gabriel_quiver(g);
    for (const auto& a : gq.arrows) fr.gabriel_arrows.emplace_back(a.src, a.tgt);

    int n = cc.n();
    int matched = 0;
    if (fr.kupisch) {
        int loewy = (*fr.kupisch)[0];
        PresentationTemplate tmpl = PresentationTemplate::nakayama_cycle(n, loewy);
        MatchReport mr = matches_presentation(g, tmpl);
        if (mr.matched) {
            ++matched;
            fr.family = "serial-nakayama";
            fr.template_name = tmpl.name();
            fr.relation_scalars = mr.scalars;
            fr.alpha_nilpotency = loewy;
        }
    }
    if (n % 2 == 0 && n >= 6) {
        PresentationTemplate tmpl = PresentationTemplate::biserial_d2m(n / 2);
        MatchReport mr = matches_presentation(g, tmpl);
        if (mr.matched) {
            ++matched;
            fr.family = "biserial-d2m";
            fr.template_name = tmpl.name();
            fr.relation_scalars = mr.scalars;
        }
    }
    check_internal(matched == 1, "finalist does not match exactly one template family");

    fr.trivext = trivial_extension_check(*cat, fr.norm.labels);
    check_internal(fr.trivext.dims_match && fr.trivext.cartan_match,
                   "trivial-extension cross-check failed");
    return fr;
}

} // namespace

ClassificationReport classify(const QuiverSpec& q, const ClassifyOptions& opts) {
    ClassificationReport report;
    report.type = q.type();
    report.orientation = q.orientation_string();
    auto cc = ClusterCategory::get(q);
    report.indecomposables = cc->label_count();
    for (const auto& orbit : cc->orbits()) report.orbit_lengths.push_back(orbit.size());
    std::sort(report.orbit_lengths.begin(), report.orbit_lengths.end());
    auto tilts = enumerate_cluster_tilting(*cc, opts.jobs);
    report.tilting_count = tilts.size();
    auto cands = selfinjective_candidates(*cc, tilts);
    report.candidate_count = cands.size();
    for (const auto& t : cands) report.finalists.push_back(analyze_candidate(*cc, t));
    return report;
}

namespace {

nlohmann::ordered_json int_matrix_json(const IntMat& m) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int i = 0; i < m.rows(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

std::string report_to_json(const ClassificationReport& report) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["tool_version"] = kToolVersion;
    doc["kind"] = "classification";
    doc["type"] = std::string(1, family_char(report.type.family));
    doc["rank"] = report.type.rank;
    doc["orientation"] = report.orientation;
    nlohmann::ordered_json counts;
    counts["indecomposables"] = report.indecomposables;
    counts["tau_orbit_lengths"] = report.orbit_lengths;
    counts["cluster_tilting"] = report.tilting_count;
    counts["tau2_fixed_candidates"] = report.candidate_count;
    doc["counts"] = std::move(counts);
    nlohmann::ordered_json finalists = nlohmann::ordered_json::array();
    for (const FinalistReport& fr : report.finalists) {
        nlohmann::ordered_json f;
        f["summands"] = fr.label_names;
        nlohmann::ordered_json norm;
        norm["orientation"] = fr.norm.quiver.orientation_string();
        norm["sink_flips"] = [&] {
            std::vector<int> flips;
            for (int v : fr.norm.flips) flips.push_back(v + 1);
            return flips;
        }();
        norm["tau_power"] = fr.norm.power;
        {
            auto cat = ClusterCategory::get(fr.norm.quiver);
            std::vector<std::string> names;
            for (int lbl : fr.norm.labels) names.push_back(cat->label(lbl).str());
            norm["module_summands"] = names;
        }
        f["normalization"] = std::move(norm);
        f["dimension"] = fr.dimension;
        f["cartan"] = int_matrix_json(fr.cartan);
        f["self_injective"] = fr.self_injective;
        f["nakayama_permutation"] = [&] {
            std::vector<int> p;
            for (int v : fr.nakayama_perm) p.push_back(v + 1);
            return p;
        }();
        f["nakayama_orbit_count"] = fr.nakayama_orbit_count;
        f["nakayama_cycle_type"] = fr.nakayama_cycle_type;
        if (fr.kupisch)
            f["kupisch_series"] = *fr.kupisch;
        else
            f["kupisch_series"] = nullptr;
        f["special_biserial"] = fr.special_biserial;
        f["family"] = fr.family;
        f["template"] = fr.template_name;
        f["relation_scalars"] = [&] {
            std::vector<std::string> ss;
            for (const Rat& c : fr.relation_scalars) ss.push_back(c.str());
            return ss;
        }();
        if (fr.family == "serial-nakayama")
            f["alpha_nilpotency"] = fr.alpha_nilpotency;
        else
            f["alpha_nilpotency"] = nullptr;
        nlohmann::ordered_json gabriel;
        gabriel["vertices"] = report.type.rank;
        gabriel["arrows"] = [&] {
            nlohmann::ordered_json arrows = nlohmann::ordered_json::array();
            for (auto [s, t] : fr.gabriel_arrows)
                arrows.push_back(std::vector<int>{s + 1, t + 1});
            return arrows;
        }();
        f["gabriel_quiver"] = std::move(gabriel);
        nlohmann::ordered_json te;
        te["dim_gamma"] = fr.trivext.gamma_dim;
        te["dim_tilted"] = fr.trivext.a_dim;
        te["dim_ext2_bimodule"] = fr.trivext.ext2_total;
        te["dims_match"] = fr.trivext.dims_match;
        te["cartan_match"] = fr.trivext.cartan_match;
        f["trivial_extension"] = std::move(te);
        finalists.push_back(std::move(f));
    }
    doc["finalists"] = std::move(finalists);
    return doc.dump(1) + "\n";
}

std::string report_to_text(const ClassificationReport& report) {
    std::ostringstream os;
    os << "type " << report.type.name() << " orientation " << report.orientation << "\n";
    os << "indecomposables in C(H): " << report.indecomposables << "\n";
    os << "tau_c orbit lengths:";
    for (size_t l : report.orbit_lengths) os << " " << l;
    os << "\ncluster-tilting objects: " << report.tilting_count << "\n";
    os << "tau_c^2-fixed candidates: " << report.candidate_count << "\n";
    os << "self-injective finalists: " << report.finalists.size() << "\n";
    for (size_t i = 0; i < report.finalists.size(); ++i) {
        const FinalistReport& fr = report.finalists[i];
        os << "  [" << i + 1 << "] family " << fr.family << ", dim " << fr.dimension << ", summands";
        for (const std::string& s : fr.label_names) os << " " << s;
        os << "\n      ";
        if (fr.kupisch) {
            os << "Kupisch (";
            for (size_t k = 0; k < fr.kupisch->size(); ++k)
                os << (k ? "," : "") << (*fr.kupisch)[k];
            os << "), ";
        }
        os << "Nakayama orbits " << fr.nakayama_orbit_count << ", template " << fr.template_name
           << "\n";
    }
    return os.str();
}

std::string cache_directory(const ClassifyOptions& opts) {
    if (!opts.cache_dir_override.empty()) return opts.cache_dir_override;
    if (const char* env = std::getenv("CTL_CACHE_DIR"); env && *env) return env;
    if (const char* home = std::getenv("HOME"); home && *home)
        return std::string(home) + "/.cache/ctl";
    return ".ctl-cache";
}

std::string classify_json_cached(const QuiverSpec& q, const ClassifyOptions& opts, bool* cache_hit) {
    if (cache_hit) *cache_hit = false;
    std::filesystem::path dir;
    std::filesystem::path file;
    if (opts.use_cache) {
        dir = cache_directory(opts);
        file = dir / ("classify-" + q.type().name() + "-" + q.orientation_string() + "-v" +
                      std::to_string(kSchemaVersion) + ".json");
        std::ifstream in(file);
        if (in) {
            std::ostringstream buf;
            buf << in.rdbuf();
            if (cache_hit) *cache_hit = true;
            return buf.str();
        }
    }
    std::string bytes = report_to_json(classify(q, opts));
    if (opts.use_cache) {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        std::filesystem::path tmp = file;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary);
            out << bytes;
        }
        std::filesystem::rename(tmp, file, ec);
        if (ec) std::filesystem::remove(tmp, ec);
    }
    return bytes;
}

// ---------------------------------------------------------------------------
// Selfcheck suites

namespace {

using Check = std::function<std::string()>; // empty string = pass

void run_one(std::vector<CheckResult>& out, const std::string& name, const Check& check) {
    CheckResult r;
    r.name = name;
    try {
        r.detail = check();
        r.pass = r.detail.empty();
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = e.what();
    }
    out.push_back(std::move(r));
}

std::string check_tables(const DynkinType& t) {
    QuiverSpec q{t};
    auto cc = ClusterCategory::get(q);
    size_t expect = positive_roots(q).size() + static_cast<size_t>(q.n());
    if (static_cast<size_t>(cc->label_count()) != expect) return "label count is off";
    size_t total = 0;
    for (const auto& o : cc->orbits()) total += o.size();
    if (total != static_cast<size_t>(cc->label_count())) return "orbit lengths do not sum up";
    for (int i = 0; i < cc->label_count(); ++i) {
        if (cc->hom_c(i, i) != 1) return "Hom diagonal is not 1";
        if (cc->ext_c(i, i) != 0) return "Ext diagonal is not 0";
        for (int j = 0; j < cc->label_count(); ++j)
            if (cc->ext_c(i, j) != cc->ext_c(j, i)) return "Ext table is not symmetric";
    }
    return {};
}

std::string check_hom_oracle(const DynkinType& t, int stride) {
    QuiverSpec q{t};
    auto cat = RepCatalogue::get(q);
    for (int i = 0; i < cat->count(); i += stride)
        for (int j = 0; j < cat->count(); ++j)
            if (cat->hom_table(i, j) != hom_dim(cat->rep(i), cat->rep(j)))
                return "mesh Hom table disagrees with the linear-system Hom at (" +
                       std::to_string(i) + "," + std::to_string(j) + ")";
    return {};
}

std::string check_reversed_duality(const DynkinType& t) {
    QuiverSpec q{t};
    auto cc = ClusterCategory::get(q);
    auto rev = ClusterCategory::get(q.reversed());
    for (int i = 0; i < cc->label_count(); ++i) {
        int ri = rev->index_of(cc->label(i));
        if (ri < 0) return "label missing under reversal";
        for (int j = 0; j < cc->label_count(); ++j) {
            int rj = rev->index_of(cc->label(j));
            if (rev->hom_c(ri, rj) != cc->hom_c(j, i)) return "reversed Hom table mismatch";
            if (rev->ext_c(ri, rj) != cc->ext_c(i, j)) return "reversed Ext table mismatch";
        }
    }
    return {};
}

std::string check_hammocks(const DynkinType& t) {
    QuiverSpec q{t};
    auto cc = ClusterCategory::get(q);
    auto cat = RepCatalogue::get(q);
    for (int a = 0; a < q.n(); ++a) {
        Representation pa = projective_rep(q, a);
        int cur = cat->projective_index(a);
        for (const HammockEntry& e : cc->hammock_sequence(a)) {
            if (e.hom_dim != hom_dim(pa, cat->rep(cur))) return "hammock value mismatch";
            if (e.target_injective != cat->is_injective(cur)) return "hammock flag mismatch";
            if (!e.target_injective) cur = cat->tau_inv(cur);
        }
    }
    return {};
}

std::string check_equivalence(const DynkinType& t, int sample, int jobs, unsigned seed) {
    QuiverSpec q{t};
    auto cc = ClusterCategory::get(q);
    auto tilts = enumerate_cluster_tilting(*cc, jobs);
    std::vector<size_t> picks;
    if (sample <= 0 || static_cast<size_t>(sample) >= tilts.size()) {
        for (size_t i = 0; i < tilts.size(); ++i) picks.push_back(i);
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<size_t> dist(0, tilts.size() - 1);
        std::set<size_t> chosen;
        while (static_cast<int>(chosen.size()) < sample) chosen.insert(dist(rng));
        picks.assign(chosen.begin(), chosen.end());
    }
    for (size_t p : picks) {
        const auto& obj = tilts[p];
        bool fixed = tau_c_image(*cc, obj, 2) == obj;
        auto norm = normalize_to_module_rep(*cc, obj);
        if (!norm) return "tilting object failed to normalize";
        auto cat = ClusterCategory::get(norm->quiver);
        BasicAlgebra g = build_end_algebra(*cat, norm->labels);
        if (is_self_injective(g) != fixed)
            return "self-injectivity and tau_c^2-fixedness disagree for an object of " + t.name();
    }
    return {};
}

std::string check_exclusion_soundness(const DynkinType& t) {
    // Interior vertices never carry summands: either the hammock parity
    // trigger fires for P(a), or the whole tau_c-orbit has odd length.
    QuiverSpec q{t};
    auto cc = ClusterCategory::get(q);
    for (int a = 0; a < q.n(); ++a) {
        if (q.is_leaf(a)) continue;
        size_t orbit_len =
            cc->orbits()[static_cast<size_t>(cc->orbit_of(cc->catalogue().projective_index(a)))].size();
        if (!cc->hammock_parity_trigger(a) && orbit_len % 2 == 0)
            return "interior vertex " + std::to_string(a + 1) + " of " + t.name() +
                   " escapes both exclusion arguments";
    }
    return {};
}

std::string check_clique_count(const DynkinType& t, size_t expect, int jobs) {
    auto cc = ClusterCategory::get(QuiverSpec{t});
    size_t got = enumerate_cluster_tilting(*cc, jobs).size();
    if (got != expect)
        return "tilting count " + std::to_string(got) + " != " + std::to_string(expect);
    return {};
}

std::string check_classification(const DynkinType& t, int serial, int biserial) {
    ClassificationReport report = classify(QuiverSpec{t}, ClassifyOptions{1, false, {}});
    int got_serial = 0, got_biserial = 0;
    for (const auto& f : report.finalists) {
        if (f.family == "serial-nakayama") ++got_serial;
        if (f.family == "biserial-d2m") ++got_biserial;
        if (!f.self_injective || !f.special_biserial) return "finalist flags are wrong";
    }
    if (got_serial != serial || got_biserial != biserial)
        return "family counts (" + std::to_string(got_serial) + "," + std::to_string(got_biserial) +
               ") differ from (" + std::to_string(serial) + "," + std::to_string(biserial) + ")";
    return {};
}

} // namespace

std::vector<CheckResult> run_selfcheck(bool full, int jobs) {
    std::vector<CheckResult> out;
    std::vector<DynkinType> fast_types = {DynkinType(Family::A, 2), DynkinType(Family::A, 3),
                                          DynkinType(Family::A, 4), DynkinType(Family::D, 4)};
    for (const auto& t : fast_types) {
        run_one(out, "tables/" + t.name(), [&] { return check_tables(t); });
        run_one(out, "hom-oracle/" + t.name(), [&] { return check_hom_oracle(t, 1); });
        run_one(out, "reversed-duality/" + t.name(), [&] { return check_reversed_duality(t); });
        run_one(out, "hammocks/" + t.name(), [&] { return check_hammocks(t); });
        run_one(out, "criterion-equivalence/" + t.name(),
                [&] { return check_equivalence(t, 0, jobs, 0); });
    }
    for (const auto& t : {DynkinType(Family::A, 4), DynkinType(Family::D, 4)})
        run_one(out, "exclusion-soundness/" + t.name(), [&] { return check_exclusion_soundness(t); });
    run_one(out, "tilting-count/A2", [&] { return check_clique_count(DynkinType(Family::A, 2), 5, jobs); });
    run_one(out, "tilting-count/A3", [&] { return check_clique_count(DynkinType(Family::A, 3), 14, jobs); });
    run_one(out, "tilting-count/A4", [&] { return check_clique_count(DynkinType(Family::A, 4), 42, jobs); });
    run_one(out, "tilting-count/D4", [&] { return check_clique_count(DynkinType(Family::D, 4), 50, jobs); });
    run_one(out, "classification/A3",
            [&] { return check_classification(DynkinType(Family::A, 3), 2, 0); });
    run_one(out, "classification/D4",
            [&] { return check_classification(DynkinType(Family::D, 4), 6, 0); });

    if (full) {
        std::vector<DynkinType> big = {DynkinType(Family::D, 5), DynkinType(Family::D, 6),
                                       DynkinType(Family::D, 7), DynkinType(Family::D, 8),
                                       DynkinType(Family::E, 6), DynkinType(Family::E, 7),
                                       DynkinType(Family::E, 8)};
        for (const auto& t : big) run_one(out, "tables/" + t.name(), [&] { return check_tables(t); });
        for (const auto& t : big)
            run_one(out, "exclusion-soundness/" + t.name(),
                    [&] { return check_exclusion_soundness(t); });
        for (int n = 5; n <= 8; ++n)
            run_one(out, "exclusion-soundness/A" + std::to_string(n),
                    [&] { return check_exclusion_soundness(DynkinType(Family::A, n)); });
        for (const auto& t : {DynkinType(Family::D, 5), DynkinType(Family::D, 6)})
            run_one(out, "reversed-duality/" + t.name(), [&] { return check_reversed_duality(t); });
        for (const auto& t : {DynkinType(Family::D, 7), DynkinType(Family::E, 7),
                              DynkinType(Family::E, 8)})
            run_one(out, "hom-oracle-sampled/" + t.name(), [&] { return check_hom_oracle(t, 9); });
        run_one(out, "criterion-equivalence/D5",
                [&] { return check_equivalence(DynkinType(Family::D, 5), 0, jobs, 0); });
        for (const auto& [t, seed] :
             std::vector<std::pair<DynkinType, unsigned>>{{DynkinType(Family::D, 6), 1},
                                                          {DynkinType(Family::D, 7), 2},
                                                          {DynkinType(Family::D, 8), 3},
                                                          {DynkinType(Family::E, 6), 4}})
            run_one(out, "criterion-equivalence-sampled/" + t.name(),
                    [&] { return check_equivalence(t, 100, jobs, seed); });
        run_one(out, "tilting-count/D5", [&] { return check_clique_count(DynkinType(Family::D, 5), 182, jobs); });
        run_one(out, "tilting-count/D6", [&] { return check_clique_count(DynkinType(Family::D, 6), 672, jobs); });
        run_one(out, "tilting-count/E6", [&] { return check_clique_count(DynkinType(Family::E, 6), 833, jobs); });
        run_one(out, "tilting-count/E7", [&] { return check_clique_count(DynkinType(Family::E, 7), 4160, jobs); });
        run_one(out, "tilting-count/E8", [&] { return check_clique_count(DynkinType(Family::E, 8), 25080, jobs); });
        run_one(out, "classification/D5",
                [&] { return check_classification(DynkinType(Family::D, 5), 2, 0); });
        run_one(out, "classification/D6",
                [&] { return check_classification(DynkinType(Family::D, 6), 2, 4); });
        run_one(out, "classification/D7",
                [&] { return check_classification(DynkinType(Family::D, 7), 2, 0); });
        run_one(out, "classification/D8",
                [&] { return check_classification(DynkinType(Family::D, 8), 2, 4); });
        run_one(out, "classification/E6",
                [&] { return check_classification(DynkinType(Family::E, 6), 0, 0); });
        run_one(out, "classification/E7",
                [&] { return check_classification(DynkinType(Family::E, 7), 0, 0); });
        run_one(out, "classification/E8",
                [&] { return check_classification(DynkinType(Family::E, 8), 0, 0); });
    }
    return out;
}

} // namespace ctl
