#pragma once

#include "ctl/algebra.hpp"

namespace ctl {

/// A finite-dimensional left module over a BasicAlgebra: one action matrix
/// per algebra basis element, in basis order.
struct AModule {
    int dim = 0;
    std::vector<RatMat> action;
};

AModule left_projective(const BasicAlgebra& alg, int i);       // A e_i
AModule dual_right_projective(const BasicAlgebra& alg, int i); // D(e_i A) as a left module

struct CoverData {
    std::vector<int> multiplicities; // copies of A e_i
    AModule cover;
    RatMat cover_map; // dim(M) x dim(P), surjective
    AModule syzygy;
    RatMat syzygy_incl; // dim(P) x dim(syzygy)
};
/// Projective cover along the top: lifts of top(M) chosen per weight by
/// pivoted elimination.
CoverData projective_cover(const BasicAlgebra& alg, const AModule& m);

/// dim Hom_A(X, N), computed from a cover of X: morphisms P -> N killing the
/// syzygy. Hom(A e_i, N) = e_i N makes the cover side explicit.
int amodule_hom_dim(const BasicAlgebra& alg, const AModule& x, const AModule& n);

/// dim Ext^2_A(M, N) by dimension shifting along minimal covers:
/// Ext^1(Omega M, N) = hom(Omega^2) - hom(P^1) + hom(Omega^1).
long long ext2_dim(const BasicAlgebra& alg, const AModule& m, const AModule& n);

/// Blocks of the bimodule Ext^2_A(D(A), A), aligned with the Hom-block
/// Cartan convention: entry (i, j) pairs with cartan(i, j).
IntMat ext2_bimodule_dims(const BasicAlgebra& a);

/// End_H(T) (degree-0 part only) for a module-only cluster-tilting object;
/// throws if T is not a tilting module over H.
BasicAlgebra tilted_algebra(const ClusterCategory& cc, const std::vector<int>& module_labels);

/// The trivial-extension equalities: dim Gamma = dim A + total Ext^2, and
/// Cartan(Gamma) = Cartan(A) + Ext^2 blocks.
struct TrivialExtensionCheck {
    long long gamma_dim = 0;
    long long a_dim = 0;
    long long ext2_total = 0;
    bool dims_match = false;
    bool cartan_match = false;
    IntMat cartan_gamma, cartan_a, ext2;
};
TrivialExtensionCheck trivial_extension_check(const ClusterCategory& cc,
                                              const std::vector<int>& module_labels);

} // namespace ctl
