#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ctl/linalg.hpp"

namespace ctl {

enum class Family { A, D, E };

char family_char(Family f);
Family family_from_char(char c);

/// Simply-laced Dynkin type. Rank bounds are enforced at construction:
/// A_n (n >= 1), D_n (n >= 3, D_3 being the A_3 diagram), E_6/E_7/E_8.
struct DynkinType {
    Family family;
    int rank;

    DynkinType(Family f, int n);

    std::string name() const;
    int coxeter_number() const;
    /// Closed-form root count; kept as documentation cross-reference. The
    /// tests derive the same numbers from the reflection-closure oracle.
    std::size_t positive_root_count() const;

    bool operator==(const DynkinType& o) const { return family == o.family && rank == o.rank; }
};

struct Arrow {
    int src;
    int tgt;
    bool operator==(const Arrow& o) const { return src == o.src && tgt == o.tgt; }
};

/// A Dynkin diagram with an acyclic orientation. Vertices are 0-based in
/// code; all user-facing output converts to the 1-based numbering
/// (A_n path 1-2-...-n; D_n short-arm leaves 1,2 joined to 3; E_n Bourbaki).
class QuiverSpec {
public:
    QuiverSpec() : QuiverSpec(DynkinType(Family::A, 1)) {}
    explicit QuiverSpec(DynkinType t);
    QuiverSpec(DynkinType t, const std::vector<bool>& edge_toward_higher);

    static std::vector<std::pair<int, int>> diagram_edges(DynkinType t);
    static QuiverSpec from_orientation_string(DynkinType t, const std::string& spec);

    const DynkinType& type() const { return type_; }
    int n() const { return n_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    const std::vector<int>& arrows_out_of(int v) const { return out_[static_cast<size_t>(v)]; }
    const std::vector<int>& arrows_into(int v) const { return in_[static_cast<size_t>(v)]; }
    const std::vector<int>& neighbors(int v) const { return adj_[static_cast<size_t>(v)]; }

    bool is_sink(int v) const { return out_[static_cast<size_t>(v)].empty(); }
    bool is_source(int v) const { return in_[static_cast<size_t>(v)].empty(); }
    bool is_leaf(int v) const { return adj_[static_cast<size_t>(v)].size() == 1; }
    std::optional<int> branch_vertex() const;

    /// '+' per edge oriented toward the higher vertex index, '-' otherwise.
    std::string orientation_string() const;

    QuiverSpec reversed() const;
    QuiverSpec reflected_at(int v) const;

    bool same_quiver(const QuiverSpec& o) const {
        return type_ == o.type_ && arrows_ == o.arrows_;
    }

    /// <d,e> = sum_v d_v e_v - sum_{arrows s->t} d_s e_t.
    long long euler_form(const IntVec& d, const IntVec& e) const;
    /// 2*I minus the diagram adjacency matrix.
    IntMat symmetrized_euler() const;

    IntVec simple_reflection(int v, IntVec d) const;
    /// Sink-peeling order: i_1 is a sink, each i_k a sink after reversing at
    /// the earlier ones. Smallest admissible index is chosen at every step.
    std::vector<int> admissible_sink_order() const;
    std::vector<int> admissible_source_order() const;

    /// Dimension-vector shadow of tau: simple reflections composed along the
    /// admissible sink order. For dim P(a) the image leaves the positive cone.
    IntVec coxeter_transform(const IntVec& d) const;
    IntVec coxeter_transform_inverse(const IntVec& d) const;

    /// Number of vertices on the minimal path from leaf a to the branch
    /// vertex, both endpoints included (p = 2 for a leaf adjacent to the
    /// branch vertex). nullopt for non-leaves; invalid for family A.
    std::optional<int> arm_distance(int a) const;

private:
    void build(std::vector<Arrow> arrows);

    DynkinType type_;
    int n_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<Arrow> arrows_;
    std::vector<std::vector<int>> out_, in_, adj_;
};

IntVec unit_vector(int n, int v);
bool is_positive_vector(const IntVec& d);
bool lex_less(const IntVec& a, const IntVec& b);

/// All positive roots of the underlying diagram: simple roots closed under
/// simple reflections, lexicographically sorted.
std::vector<IntVec> positive_roots(const QuiverSpec& q);

} // namespace ctl
