#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "ctl/dynkin.hpp"
#include "ctl/linalg.hpp"

namespace ctl {

/// A representation of a quiver over exact rationals: one vector space
/// dimension per vertex, one matrix per arrow (shape dims[tgt] x dims[src]).
struct Representation {
    QuiverSpec quiver;
    IntVec dims;
    std::vector<RatMat> arrow_maps;

    int total_dim() const {
        int s = 0;
        for (int v = 0; v < dims.size(); ++v) s += dims(v);
        return s;
    }
    bool is_zero() const { return total_dim() == 0; }
};

Representation zero_rep(const QuiverSpec& q);
Representation simple_rep(const QuiverSpec& q, int v);

/// P(a): dims[v] = number of paths a~>v (0 or 1 on a tree), arrow maps the
/// path-concatenation 0/1 maps.
Representation projective_rep(const QuiverSpec& q, int a);
/// I(a): dually, dims[v] = number of paths v~>a.
Representation injective_rep(const QuiverSpec& q, int a);

/// Whether d is the dimension vector of an indecomposable, i.e. a positive
/// root (Tits form 1).
bool is_root_vector(const QuiverSpec& q, const IntVec& d);

struct Morphism {
    Representation source;
    Representation target;
    std::vector<RatMat> vertex_maps; // one per vertex, target.dims[v] x source.dims[v]

    bool is_commuting() const;
    bool is_zero() const;
};

Morphism zero_morphism(const Representation& x, const Representation& y);
Morphism identity_morphism(const Representation& x);
Morphism compose(const Morphism& g, const Morphism& f); // g after f
Morphism morphism_add(const Morphism& a, const Morphism& b);
Morphism morphism_scale(const Rat& c, const Morphism& f);

/// Stacks the vertex maps column-major into one coordinate vector.
RatVec vectorize(const Morphism& f);
Morphism morphism_from_vector(const Representation& x, const Representation& y, const RatVec& v);

/// Basis of the commuting-square solution space Hom(X, Y); canonical
/// (kernel of the constraint matrix in reduced echelon form).
std::vector<Morphism> hom_basis(const Representation& x, const Representation& y);
int hom_dim(const Representation& x, const Representation& y);
/// dim Hom(X,Y) - <dim X, dim Y>; always >= 0 over a hereditary algebra.
long long dim_ext1(const Representation& x, const Representation& y);

/// BGP reflection functors. reflect_at_sink applies the kernel construction
/// at a sink, reflect_at_source the cokernel construction at a source; the
/// result lives over the reflected quiver. Morphism overloads act
/// functorially and reproduce the object constructions bit for bit.
Representation reflect_at_sink(const Representation& x, int v);
Representation reflect_at_source(const Representation& x, int v);
Morphism reflect_at_sink(const Morphism& f, int v);
Morphism reflect_at_source(const Morphism& f, int v);

/// tau / tau^- as reflection-functor composites along an admissible order.
/// nullopt flags projectives (tau_plus) resp. injectives (tau_minus).
/// Input must be indecomposable (dimension vector a positive root).
std::optional<Representation> tau_plus(const Representation& x);
std::optional<Representation> tau_minus(const Representation& x);
std::optional<Morphism> tau_minus_morphism(const Morphism& f);

std::pair<Representation, Morphism> kernel_subrep(const Morphism& f);

struct ProjPresentation {
    Representation p1; // kernel of pi, projective since the algebra is hereditary
    Representation p0;
    Morphism incl; // p1 -> p0
    Morphism pi;   // p0 -> x, projective cover
};
ProjPresentation minimal_presentation(const Representation& x);

/// Ext^1(X, Z) presented as coset representatives of Hom(P1, Z) modulo the
/// image of Hom(P0, Z), for the minimal presentation 0 -> P1 -> P0 -> X -> 0.
class Ext1Space {
public:
    Ext1Space(std::shared_ptr<const ProjPresentation> pres, Representation z);

    int dim() const { return static_cast<int>(coset_cols_.size()); }
    const Representation& target() const { return z_; }
    const ProjPresentation& presentation() const { return *pres_; }

    /// The k-th coset representative as a morphism P1 -> Z.
    Morphism basis_morphism(int k) const;
    /// Coset coordinates of an arbitrary h in Hom(P1, Z).
    RatVec coordinates_of(const Morphism& h) const;

    /// Matrix of the pullback Ext^1(X,Z) -> Ext^1(W,Z) along f: W -> X,
    /// where `target_space` is the Ext space of W (same Z).
    RatMat pullback_matrix(const Morphism& f, const Ext1Space& target_space) const;
    /// Matrix of the pushforward Ext^1(X,Z) -> Ext^1(X,Z') along g: Z -> Z',
    /// where `target_space` is built on the same presentation of X.
    RatMat pushforward_matrix(const Morphism& g, const Ext1Space& target_space) const;

private:
    RatVec reduce_mod_image(const RatVec& h_coords) const;

    std::shared_ptr<const ProjPresentation> pres_;
    Representation z_;
    std::vector<Morphism> hom_p1_; // basis of Hom(P1, Z)
    SpanSolver hom_p1_coords_;     // coordinates in hom_p1_
    RatMat image_rref_;            // image of Hom(P0,Z) -> Hom(P1,Z) in hom_p1_ coords, RREF rows
    std::vector<Eigen::Index> image_pivots_;
    std::vector<Eigen::Index> coset_cols_; // non-pivot coordinates = coset basis
};

/// The complete list of indecomposables of mod H for a Dynkin quiver, one per
/// positive root, generated by iterating tau^- from the projectives. Also
/// carries the knitted AR quiver of mod H and the mesh-recursion Hom table
/// (validated against hom_basis by the test suites).
class RepCatalogue {
public:
    explicit RepCatalogue(QuiverSpec q);

    /// Process-wide memoized catalogue per (type, rank, orientation).
    static std::shared_ptr<const RepCatalogue> get(const QuiverSpec& q);

    const QuiverSpec& quiver() const { return q_; }
    int count() const { return static_cast<int>(reps_.size()); }
    const Representation& rep(int i) const { return reps_[static_cast<size_t>(i)]; }
    int index_of_dims(const IntVec& d) const; // -1 if not a module dimension vector

    bool is_projective(int i) const { return proj_vertex_[static_cast<size_t>(i)] >= 0; }
    bool is_injective(int i) const { return inj_vertex_[static_cast<size_t>(i)] >= 0; }
    int proj_vertex(int i) const { return proj_vertex_[static_cast<size_t>(i)]; }
    int inj_vertex(int i) const { return inj_vertex_[static_cast<size_t>(i)]; }
    int projective_index(int a) const { return proj_index_[static_cast<size_t>(a)]; }
    int injective_index(int a) const { return inj_index_[static_cast<size_t>(a)]; }

    int tau(int i) const { return tau_[static_cast<size_t>(i)]; }         // -1 if projective
    int tau_inv(int i) const { return tau_inv_[static_cast<size_t>(i)]; } // -1 if injective
    /// Slice coordinates: rep(i) = tau^{-level} P(slice_vertex).
    int slice_vertex(int i) const { return slice_vertex_[static_cast<size_t>(i)]; }
    int slice_level(int i) const { return slice_level_[static_cast<size_t>(i)]; }

    /// Arrows of the knitted AR quiver of mod H, lexicographically sorted.
    const std::vector<std::pair<int, int>>& ar_arrows() const { return ar_arrows_; }
    const std::vector<std::vector<int>>& ar_in() const { return ar_in_; }

    /// Hom dimension table filled by the additive mesh recursion.
    int hom_table(int i, int j) const { return hom_table_(i, j); }
    long long ext1_table(int i, int j) const;

    /// Bit-reproducible JSON cache of the catalogue (header + integer
    /// matrices). load() rebuilds an identical catalogue.
    std::string save_cache() const;
    static void verify_cache_roundtrip(const RepCatalogue& cat);

private:
    void build_reps();
    void knit_ar_quiver();
    void fill_hom_table();

    QuiverSpec q_;
    std::vector<Representation> reps_;
    std::map<std::vector<int>, int> index_by_dims_;
    std::vector<int> proj_vertex_, inj_vertex_, proj_index_, inj_index_;
    std::vector<int> tau_, tau_inv_, slice_vertex_, slice_level_;
    std::vector<std::pair<int, int>> ar_arrows_;
    std::vector<std::vector<int>> ar_in_, ar_out_;
    std::vector<int> topo_order_;
    IntMat hom_table_;
};

} // namespace ctl
