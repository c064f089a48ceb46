#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ctl/rep.hpp"

namespace ctl {

/// Label of an indecomposable object of the cluster category: an H-module
/// (by dimension vector) or a shifted projective P(a)[1].
struct CObject {
    enum class Kind { Module, ShiftedProj };
    Kind kind;
    IntVec dims; // Module only
    int vertex;  // ShiftedProj only, 0-based

    static CObject module(IntVec d) { return CObject{Kind::Module, std::move(d), -1}; }
    static CObject shifted_proj(int a) { return CObject{Kind::ShiftedProj, IntVec(), a}; }

    bool operator==(const CObject& o) const {
        if (kind != o.kind) return false;
        if (kind == Kind::ShiftedProj) return vertex == o.vertex;
        return dims == o.dims;
    }

    /// Compact form "m:110" / "sp:2" (vertices 1-based, digits are the
    /// dimension vector; all supported ranks have single-digit entries).
    std::string str() const;
    static CObject parse(const std::string& text, int n);
};

struct HammockEntry {
    int t;
    int hom_dim;
    bool target_injective;
};

/// A (possibly vertex-deleted) stable translation quiver with layout data,
/// ready for DOT/JSON emission.
struct CQuiver {
    int n_labels = 0;
    std::vector<std::string> names;
    std::vector<char> present;
    std::vector<std::pair<int, int>> arrows; // sorted, endpoints present
    std::vector<char> seam_arrow;            // parallel to arrows
    std::vector<int> translation;            // tau_c, -1 where undefined/deleted
    std::vector<int> x, y;                   // slice index, Delta-vertex row
    std::vector<char> starred;
    std::vector<char> proj_inj_mark;
    bool seam_twist = false;

    int present_count() const;
    int arrow_count() const { return static_cast<int>(arrows.size()); }
};

/// The cluster category C(H) over the fundamental domain mod H + {P(a)[1]}:
/// canonical labels, tau_c, Hom/Ext dimension tables, orbits, hammocks and
/// the AR quiver obtained by seeding plus mesh closure.
class ClusterCategory {
public:
    explicit ClusterCategory(QuiverSpec q, int jobs = 1);
    static std::shared_ptr<const ClusterCategory> get(const QuiverSpec& q);

    const QuiverSpec& quiver() const { return q_; }
    int n() const { return q_.n(); }
    const RepCatalogue& catalogue() const { return *cat_; }

    int label_count() const { return static_cast<int>(labels_.size()); }
    const CObject& label(int i) const { return labels_[static_cast<size_t>(i)]; }
    int index_of(const CObject& o) const; // -1 if absent
    int module_label(int rep_index) const { return rep_index; }
    int shifted_label(int vertex) const { return cat_->count() + vertex; }
    bool is_module(int i) const { return i < cat_->count(); }

    int tau_c(int i) const { return tau_[static_cast<size_t>(i)]; }
    int tau_c_inv(int i) const { return tau_inv_[static_cast<size_t>(i)]; }
    int tau_c_power(int i, long long k) const;

    /// Cycle decomposition of tau_c; each cycle starts at its least label,
    /// cycles sorted by that least label.
    const std::vector<std::vector<int>>& orbits() const { return orbits_; }
    int orbit_of(int label) const { return orbit_of_[static_cast<size_t>(label)]; }

    int hom_c(int i, int j) const { return hom_(i, j); }
    int ext_c(int i, int j) const { return ext_(i, j); }
    const IntMat& hom_table() const { return hom_; }
    const IntMat& ext_table() const { return ext_; }

    /// (t, dim Hom(P(a), tau^{-t} P(a)), is_injective) until the target is
    /// injective.
    std::vector<HammockEntry> hammock_sequence(int a) const;
    /// The exclusion trigger: some odd t with nonzero Hom and non-injective
    /// target.
    bool hammock_parity_trigger(int a) const;

    const std::vector<std::pair<int, int>>& ar_arrows() const { return c_arrows_; }

    CQuiver ar_quiver(const std::vector<int>& starred_labels = {}) const;
    /// AR quiver of mod End(T): delete the slice tau_c(T).
    CQuiver mod_gamma_quiver(const std::vector<int>& tilting_labels) const;

    bool is_cluster_tilting_set(const std::vector<int>& labels) const;

    /// Label permutation of the reflection equivalence C(Q) -> C(s_v Q) at a
    /// sink v: a module other than S(v) maps to its BGP reflection, S(v) to
    /// P(v)[1], P(v)[1] to S(v), every other shifted projective stays put.
    /// Verified on construction (bijective, tau_c-equivariant, Hom-preserving)
    /// and cached per (orientation, vertex).
    static const std::vector<int>& reflection_transport(const ClusterCategory& from, int v,
                                                        const ClusterCategory& to);

private:
    void build_labels();
    void build_tau();
    void build_tables(int jobs);
    void build_ar_quiver();
    void build_layout();
    CQuiver base_quiver() const;

    QuiverSpec q_;
    std::shared_ptr<const RepCatalogue> cat_;
    std::vector<CObject> labels_;
    std::vector<int> tau_, tau_inv_;
    std::vector<std::vector<int>> orbits_;
    std::vector<int> orbit_of_;
    IntMat hom_, ext_;
    std::vector<std::pair<int, int>> c_arrows_;
    std::vector<int> x_, y_;
    bool seam_twist_ = false;
};

} // namespace ctl
