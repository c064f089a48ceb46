#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ctl/amodule.hpp"

namespace ctl {

struct ClassifyOptions {
    int jobs = 1;
    bool use_cache = true;
    std::string cache_dir_override; // empty = CTL_CACHE_DIR or the default
};

struct FinalistReport {
    std::vector<int> labels; // in the input orientation's category
    std::vector<std::string> label_names;
    Normalization norm;
    long long dimension = 0;
    IntMat cartan;
    bool self_injective = false;
    std::vector<int> nakayama_perm;
    int nakayama_orbit_count = 0;
    std::vector<int> nakayama_cycle_type; // cycle lengths, descending
    std::optional<std::vector<int>> kupisch;
    bool special_biserial = false;
    std::string family;   // "serial-nakayama" or "biserial-d2m"
    std::string template_name;
    std::vector<Rat> relation_scalars;
    int alpha_nilpotency = 0; // serial family: minimal vanishing arrow power
    std::vector<std::pair<int, int>> gabriel_arrows;
    TrivialExtensionCheck trivext;
};

struct ClassificationReport {
    DynkinType type{Family::A, 1};
    std::string orientation;
    int indecomposables = 0;
    std::vector<size_t> orbit_lengths; // sorted ascending
    size_t tilting_count = 0;
    size_t candidate_count = 0;
    std::vector<FinalistReport> finalists;
};

/// The full pipeline: tables, exhaustive tilting enumeration, tau_c^2-fixed
/// candidates, endomorphism algebras, self-injectivity, family recognition,
/// trivial-extension cross-check. Deterministic.
ClassificationReport classify(const QuiverSpec& q, const ClassifyOptions& opts = {});

std::string report_to_json(const ClassificationReport& report);
std::string report_to_text(const ClassificationReport& report);

/// Disk cache keyed by (type, rank, orientation, schema version). Returns
/// the JSON bytes, using the cache unless disabled; cache hits are
/// byte-identical to fresh computation by construction.
std::string classify_json_cached(const QuiverSpec& q, const ClassifyOptions& opts,
                                 bool* cache_hit = nullptr);
std::string cache_directory(const ClassifyOptions& opts);

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// The invariant suites behind `selfcheck`: fast covers A_2..A_4 and D_4
/// exhaustively, full adds D_5..D_8 and E_6..E_8 with fixed-seed sampling.
std::vector<CheckResult> run_selfcheck(bool full, int jobs = 1);

} // namespace ctl
