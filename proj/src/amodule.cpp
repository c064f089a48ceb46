#include "ctl/amodule.hpp"

#include <algorithm>
#include <set>

#include "ctl/errors.hpp"

namespace ctl {

namespace {

/// Columns of b that extend the column space of a, chosen by pivoted
/// elimination of [a | b].
std::vector<Eigen::Index> extending_columns(const RatMat& a, const RatMat& b) {
    RatMat joint(a.rows(), a.cols() + b.cols());
    joint.leftCols(a.cols()) = a;
    joint.rightCols(b.cols()) = b;
    std::vector<Eigen::Index> pivots = reduced_row_echelon(joint);
    std::vector<Eigen::Index> out;
    for (Eigen::Index p : pivots)
        if (p >= a.cols()) out.push_back(p - a.cols());
    return out;
}

RatMat weight_image(const AModule& m, int i) {
    // Canonical basis of e_i M: pivot columns of the projector image.
    const RatMat& proj = m.action[static_cast<size_t>(i)];
    std::vector<Eigen::Index> cols = extending_columns(rat_zeros(m.dim, 0), proj);
    RatMat out = rat_zeros(m.dim, static_cast<Eigen::Index>(cols.size()));
    for (size_t k = 0; k < cols.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = proj.col(cols[k]);
    return out;
}

} // namespace

AModule left_projective(const BasicAlgebra& alg, int i) {
    std::vector<int> coords;
    for (int k = 0; k < alg.dim(); ++k)
        if (alg.elem(k).src == i) coords.push_back(k);
    std::map<int, int> pos;
    for (size_t u = 0; u < coords.size(); ++u) pos[coords[u]] = static_cast<int>(u);
    AModule m;
    m.dim = static_cast<int>(coords.size());
    for (int a = 0; a < alg.dim(); ++a) {
        RatMat act = rat_zeros(m.dim, m.dim);
        for (size_t u = 0; u < coords.size(); ++u)
            for (const auto& [k, c] : alg.product(a, coords[u])) act(pos.at(k), static_cast<Eigen::Index>(u)) = c;
        m.action.push_back(std::move(act));
    }
    return m;
}

AModule dual_right_projective(const BasicAlgebra& alg, int i) {
    std::vector<int> coords; // elements with target i span e_i A
    for (int k = 0; k < alg.dim(); ++k)
        if (alg.elem(k).tgt == i) coords.push_back(k);
    std::map<int, int> pos;
    for (size_t u = 0; u < coords.size(); ++u) pos[coords[u]] = static_cast<int>(u);
    AModule m;
    m.dim = static_cast<int>(coords.size());
    // (a . phi_v)(x_u) = phi_v(x_u . a)
    for (int a = 0; a < alg.dim(); ++a) {
        RatMat act = rat_zeros(m.dim, m.dim);
        for (size_t u = 0; u < coords.size(); ++u)
            for (const auto& [k, c] : alg.product(coords[u], a)) {
                auto it = pos.find(k);
                if (it != pos.end()) act(static_cast<Eigen::Index>(u), it->second) += c;
            }
        // act(u, v) = coefficient of phi_u... careful: row u column v must be
        // phi_v(x_u . a); the loop above fills (u, k-position) with the
        // k-coefficient of x_u . a, which is exactly that.
        m.action.push_back(std::move(act));
    }
    return m;
}

CoverData projective_cover(const BasicAlgebra& alg, const AModule& m) {
    int n = alg.idempotent_count();
    // Radical of M, split by weight: columns of the radical-element actions.
    CoverData cd;
    cd.multiplicities.assign(static_cast<size_t>(n), 0);
    std::vector<std::vector<RatVec>> lifts(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        Eigen::Index rad_cols = 0;
        for (int r : alg.radical_elems())
            if (alg.elem(r).tgt == i) rad_cols += m.dim;
        RatMat rad = rat_zeros(m.dim, rad_cols);
        Eigen::Index off = 0;
        for (int r : alg.radical_elems())
            if (alg.elem(r).tgt == i) {
                rad.middleCols(off, m.dim) = m.action[static_cast<size_t>(r)];
                off += m.dim;
            }
        RatMat wi = weight_image(m, i);
        for (Eigen::Index c : extending_columns(rad, wi)) {
            lifts[static_cast<size_t>(i)].push_back(wi.col(c));
            cd.multiplicities[static_cast<size_t>(i)] += 1;
        }
    }

    // P = direct sum of A e_i copies, in (i, copy) order.
    struct Piece {
        int vertex;
        AModule proj;
        Eigen::Index offset;
        RatVec lift;
    };
    std::vector<Piece> pieces;
    Eigen::Index total = 0;
    for (int i = 0; i < n; ++i)
        for (size_t c = 0; c < lifts[static_cast<size_t>(i)].size(); ++c) {
            Piece p{i, left_projective(alg, i), total, lifts[static_cast<size_t>(i)][c]};
            total += p.proj.dim;
            pieces.push_back(std::move(p));
        }
    cd.cover.dim = static_cast<int>(total);
    for (int a = 0; a < alg.dim(); ++a) {
        RatMat act = rat_zeros(total, total);
        for (const Piece& p : pieces)
            act.block(p.offset, p.offset, p.proj.dim, p.proj.dim) = p.proj.action[static_cast<size_t>(a)];
        cd.cover.action.push_back(std::move(act));
    }
    cd.cover_map = rat_zeros(m.dim, total);
    for (const Piece& p : pieces) {
        // Coordinates of A e_i are the basis elements with src = i.
        std::vector<int> coords;
        for (int k = 0; k < alg.dim(); ++k)
            if (alg.elem(k).src == p.vertex) coords.push_back(k);
        for (size_t u = 0; u < coords.size(); ++u)
            cd.cover_map.col(p.offset + static_cast<Eigen::Index>(u)) =
                m.action[static_cast<size_t>(coords[u])] * p.lift;
    }
    {
        RatMat copy = cd.cover_map;
        check_internal(rank_of(std::move(copy)) == m.dim, "projective cover is not surjective");
    }

    cd.syzygy_incl = kernel_basis(cd.cover_map);
    cd.syzygy.dim = static_cast<int>(cd.syzygy_incl.cols());
    SpanSolver solver(cd.syzygy_incl);
    for (int a = 0; a < alg.dim(); ++a) {
        RatMat moved = cd.cover.action[static_cast<size_t>(a)] * cd.syzygy_incl;
        RatMat act = rat_zeros(cd.syzygy.dim, cd.syzygy.dim);
        for (Eigen::Index c = 0; c < moved.cols(); ++c) {
            auto coords = solver.coordinates(moved.col(c));
            check_internal(coords.has_value(), "syzygy is not action-stable");
            act.col(c) = *coords;
        }
        cd.syzygy.action.push_back(std::move(act));
    }
    return cd;
}

namespace {

/// dim Hom(P, N) - rank of the restriction to the syzygy, where cd is the
/// cover of X. Hom(A e_i, N) is spanned by b |-> rho_N(b) v over a basis v
/// of e_i N.
int hom_dim_from_cover(const BasicAlgebra& alg, const CoverData& cd, const AModule& n) {
    int n_idem = alg.idempotent_count();
    std::vector<RatMat> weight_bases;
    for (int i = 0; i < n_idem; ++i) weight_bases.push_back(weight_image(n, i));

    // Assemble each basis morphism P -> N as a matrix and restrict to the
    // syzygy; the rank of the restrictions decides.
    std::vector<RatMat> phis;
    Eigen::Index p_off = 0;
    for (int i = 0; i < n_idem; ++i) {
        std::vector<int> coords;
        for (int k = 0; k < alg.dim(); ++k)
            if (alg.elem(k).src == i) coords.push_back(k);
        for (int c = 0; c < cd.multiplicities[static_cast<size_t>(i)]; ++c) {
            for (Eigen::Index v = 0; v < weight_bases[static_cast<size_t>(i)].cols(); ++v) {
                RatMat phi = rat_zeros(n.dim, cd.cover.dim);
                for (size_t u = 0; u < coords.size(); ++u)
                    phi.col(p_off + static_cast<Eigen::Index>(u)) =
                        n.action[static_cast<size_t>(coords[u])] *
                        weight_bases[static_cast<size_t>(i)].col(v);
                phis.push_back(std::move(phi));
            }
            p_off += static_cast<Eigen::Index>(coords.size());
        }
    }
    int hom_p = static_cast<int>(phis.size());
    if (cd.syzygy.dim == 0 || n.dim == 0) return hom_p;
    RatMat res = rat_zeros(static_cast<Eigen::Index>(n.dim) * cd.syzygy.dim,
                           static_cast<Eigen::Index>(phis.size()));
    for (size_t k = 0; k < phis.size(); ++k) {
        RatMat restricted = phis[k] * cd.syzygy_incl;
        Eigen::Index at = 0;
        for (Eigen::Index c = 0; c < restricted.cols(); ++c)
            for (Eigen::Index r = 0; r < restricted.rows(); ++r)
                res(at++, static_cast<Eigen::Index>(k)) = restricted(r, c);
    }
    return hom_p - static_cast<int>(rank_of(std::move(res)));
}

} // namespace

int amodule_hom_dim(const BasicAlgebra& alg, const AModule& x, const AModule& n) {
    if (x.dim == 0 || n.dim == 0) return 0;
    CoverData cd = projective_cover(alg, x);
    return hom_dim_from_cover(alg, cd, n);
}

long long ext2_dim(const BasicAlgebra& alg, const AModule& m, const AModule& n) {
    if (m.dim == 0 || n.dim == 0) return 0;
    CoverData c0 = projective_cover(alg, m);
    if (c0.syzygy.dim == 0) return 0; // M projective
    CoverData c1 = projective_cover(alg, c0.syzygy);
    // 0 -> Omega^2 -> P^1 -> Omega^1 -> 0 under Hom(-, N):
    // Ext^1(Omega^1, N) = hom(Omega^2) - hom(P^1) + hom(Omega^1).
    long long hom_omega1 = hom_dim_from_cover(alg, c1, n);
    long long hom_p1 = 0;
    for (int i = 0; i < alg.idempotent_count(); ++i) {
        RatMat wi = weight_image(n, i);
        hom_p1 += static_cast<long long>(c1.multiplicities[static_cast<size_t>(i)]) * wi.cols();
    }
    long long hom_omega2 = 0;
    if (c1.syzygy.dim > 0) hom_omega2 = amodule_hom_dim(alg, c1.syzygy, n);
    long long ext = hom_omega2 - hom_p1 + hom_omega1;
    check_internal(ext >= 0, "negative Ext^2 dimension");
    return ext;
}

IntMat ext2_bimodule_dims(const BasicAlgebra& a) {
    int n = a.idempotent_count();
    IntMat out = IntMat::Zero(n, n);
    std::vector<AModule> duals, projs;
    for (int i = 0; i < n; ++i) {
        duals.push_back(dual_right_projective(a, i));
        projs.push_back(left_projective(a, i));
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out(i, j) = static_cast<int>(
                ext2_dim(a, duals[static_cast<size_t>(j)], projs[static_cast<size_t>(i)]));
    return out;
}

BasicAlgebra tilted_algebra(const ClusterCategory& cc, const std::vector<int>& module_labels) {
    const RepCatalogue& cat = cc.catalogue();
    if (static_cast<int>(module_labels.size()) != cc.n())
        throw std::invalid_argument("tilted_algebra: expected rank-many summands");
    std::set<int> distinct(module_labels.begin(), module_labels.end());
    if (static_cast<int>(distinct.size()) != cc.n())
        throw std::invalid_argument("tilted_algebra: summands must be distinct");
    for (int a : module_labels) {
        if (!cc.is_module(a)) throw std::invalid_argument("tilted_algebra: summands must be modules");
        for (int b : module_labels)
            if (cat.ext1_table(a, b) != 0)
                throw std::invalid_argument("tilted_algebra: not a tilting module (Ext^1 does not vanish)");
    }
    return build_end_algebra(cc, module_labels, /*degree0_only=*/true);
}

TrivialExtensionCheck trivial_extension_check(const ClusterCategory& cc,
                                              const std::vector<int>& module_labels) {
    TrivialExtensionCheck out;
    BasicAlgebra gamma = build_end_algebra(cc, module_labels, false);
    BasicAlgebra a = tilted_algebra(cc, module_labels);
    out.gamma_dim = gamma.dim();
    out.a_dim = a.dim();
    out.cartan_gamma = gamma.cartan();
    out.cartan_a = a.cartan();
    out.ext2 = ext2_bimodule_dims(a);
    out.ext2_total = 0;
    for (int i = 0; i < out.ext2.rows(); ++i)
        for (int j = 0; j < out.ext2.cols(); ++j) out.ext2_total += out.ext2(i, j);
    out.dims_match = out.gamma_dim == out.a_dim + out.ext2_total;
    out.cartan_match = out.cartan_gamma == out.cartan_a + out.ext2;
    return out;
}

} // namespace ctl
