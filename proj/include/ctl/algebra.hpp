#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctl/cluster.hpp"
#include "ctl/tilting.hpp"

namespace ctl {

struct BasisElem {
    int src;
    int tgt;
    int degree; // 0 or 1
};

/// A finite-dimensional basic algebra by basis and structure constants.
/// The first n basis elements are the idempotents e_0..e_{n-1}; every other
/// element is tagged with (source, target, degree) and lies in e_tgt A e_src.
/// Diagonal blocks are one-dimensional (spanned by the idempotent); this is
/// asserted by validate() and holds for every algebra built here, endomorphism
/// algebras of directed summand sets and the presentation templates alike.
class BasicAlgebra {
public:
    using Term = std::pair<int, Rat>;
    using Sparse = std::vector<Term>;
    using Vec = std::map<int, Rat>;

    BasicAlgebra(int n_idem, std::vector<BasisElem> elems);

    int idempotent_count() const { return n_; }
    int dim() const { return static_cast<int>(elems_.size()); }
    const BasisElem& elem(int k) const { return elems_[static_cast<size_t>(k)]; }

    /// product(a, b) = x_a . x_b (b acts first). Empty when zero or not
    /// composable.
    const Sparse& product(int a, int b) const {
        return products_[static_cast<size_t>(a) * elems_.size() + static_cast<size_t>(b)];
    }
    void set_product(int a, int b, Sparse terms);

    Vec mult(const Vec& x, const Vec& y) const;

    const std::vector<int>& block(int src, int tgt) const {
        return blocks_[static_cast<size_t>(src) * static_cast<size_t>(n_) + static_cast<size_t>(tgt)];
    }
    /// cartan(i, j) = dim of the Hom block from summand i to summand j.
    IntMat cartan() const;
    std::vector<int> radical_elems() const;
    bool is_connected() const;

    /// Idempotent axioms, block tags, associativity over all composable
    /// triples, degree-1 products vanishing, one-dimensional diagonal blocks,
    /// nilpotency of the radical. Throws internal_error on any failure.
    void validate() const;

private:
    void index_blocks();

    int n_;
    std::vector<BasisElem> elems_;
    std::vector<Sparse> products_;
    std::vector<std::vector<int>> blocks_;
};

// --- endomorphism algebras -------------------------------------------------

/// tau_c^k T and, when needed, the orientation change that turns T into a
/// module-only object. Orientations are searched breadth-first along
/// sink-reflection equivalences (the original orientation first, so a plain
/// tau_c power is preferred); if nothing works across all orientations and
/// powers the operation reports failure instead of guessing.
struct Normalization {
    QuiverSpec quiver;       // orientation in which the labels live
    std::vector<int> flips;  // sink-reflection sequence from the input orientation
    long long power = 0;     // tau_c power applied after the transport
    std::vector<int> labels; // module-only, sorted
};
std::optional<Normalization> normalize_to_module_rep(const ClusterCategory& cc,
                                                     const std::vector<int>& tilting_labels);

/// End_C(T) for a module-only cluster-tilting object, with explicit structure
/// constants: degree-0 parts Hom_H(T_i, T_j), degree-1 parts
/// Ext^1_H(T_i, tau^- T_j), products by composition, pullback and
/// tau^- -pushforward, and degree-1 squares vanishing.
BasicAlgebra build_end_algebra(const ClusterCategory& cc, const std::vector<int>& module_labels,
                               bool degree0_only = false);

// --- predicates and invariants ----------------------------------------------

/// Dual-is-projective test: the projective cover of top(D Gamma) has the
/// dimension of Gamma exactly when Gamma is self-injective.
bool is_self_injective(const BasicAlgebra& g);

/// nu with soc P(i) = S(nu(i)); nullopt when not self-injective.
std::optional<std::vector<int>> nakayama_permutation(const BasicAlgebra& g);
int permutation_orbit_count(const std::vector<int>& perm);

/// Cyclically ordered Loewy lengths when the algebra is serial (all left and
/// right projectives uniserial); nullopt otherwise. Ordering convention: the
/// top of rad P(i) is S(next(i)).
std::optional<std::vector<int>> kupisch_series(const BasicAlgebra& g);

bool is_special_biserial(const BasicAlgebra& g);

struct GabrielQuiver {
    IntMat arrow_counts; // (i, j) = number of arrows i -> j
    struct GArrow {
        int src;
        int tgt;
        BasicAlgebra::Vec rep; // radical representative, pivoted choice
    };
    std::vector<GArrow> arrows;
};
GabrielQuiver gabriel_quiver(const BasicAlgebra& g);

// --- presentation templates ---------------------------------------------------

/// The two output families: a cyclic Nakayama presentation (n vertices, all
/// paths of length loewy vanish) and the biserial family on 2m vertices with
/// relations alpha.beta = beta.alpha = 0 and alpha^{m-1} = beta^2.
struct PresentationTemplate {
    enum class Kind { NakayamaCycle, BiserialD2m } kind;
    int n = 0;     // NakayamaCycle: number of vertices
    int loewy = 0; // NakayamaCycle: Loewy length
    int m = 0;     // BiserialD2m parameter (2m vertices)

    static PresentationTemplate nakayama_cycle(int n, int loewy);
    static PresentationTemplate biserial_d2m(int m);

    std::string name() const;
    int vertex_count() const;
    struct TArrow {
        int src;
        int tgt;
    };
    std::vector<TArrow> arrows() const;
    /// Paths stored source-first: {a0, a1, ...} means ... . x_{a1} . x_{a0}.
    std::vector<std::vector<int>> zero_relations() const;
    std::vector<std::pair<std::vector<int>, std::vector<int>>> scalar_relations() const;
    /// Independent path count (word enumeration under the rewriting rules).
    long long expected_dimension() const;
};

/// The template as a concrete algebra (basis of nonzero path classes).
BasicAlgebra template_algebra(const PresentationTemplate& t);

struct MatchReport {
    bool matched = false;
    std::vector<int> vertex_map; // template vertex -> algebra vertex
    std::vector<Rat> scalars;    // one per scalar relation, all nonzero
    std::string reason;          // when unmatched
};
MatchReport matches_presentation(const BasicAlgebra& g, const PresentationTemplate& t);

} // namespace ctl
