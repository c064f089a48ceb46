#pragma once

#include <bitset>
#include <vector>

#include "ctl/cluster.hpp"

namespace ctl {

/// Rigidity graph: labels are adjacent iff distinct and Ext^1_C vanishes in
/// both directions (one suffices, the table being symmetric). The
/// cluster-tilting objects are exactly its n-cliques.
class CompatGraph {
public:
    static constexpr int kMaxVertices = 160;
    using Bits = std::bitset<kMaxVertices>;

    explicit CompatGraph(const ClusterCategory& cc);

    int vertex_count() const { return n_; }
    bool adjacent(int i, int j) const { return adj_[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
    const Bits& neighbors(int i) const { return adj_[static_cast<size_t>(i)]; }
    int edge_count() const;
    int degree(int i) const { return static_cast<int>(adj_[static_cast<size_t>(i)].count()); }

private:
    int n_;
    std::vector<Bits> adj_;
};

/// All cluster-tilting objects: every n-element pairwise-compatible label
/// set, each sorted ascending, the list in lexicographic order. The search
/// asserts along the way that every maximal clique it encounters has exactly
/// n vertices and raises internal_error otherwise (a table bug, never data).
std::vector<std::vector<int>> enumerate_cluster_tilting(const ClusterCategory& cc, int jobs = 1);

bool is_cluster_tilting(const ClusterCategory& cc, const std::vector<int>& labels);

/// The tau_c-image of a tilting object, as a sorted label set.
std::vector<int> tau_c_image(const ClusterCategory& cc, const std::vector<int>& t, long long power = 1);

/// Those T with tau_c^2 T = T as label sets.
std::vector<std::vector<int>> selfinjective_candidates(const ClusterCategory& cc,
                                                       const std::vector<std::vector<int>>& tiltings);

} // namespace ctl
