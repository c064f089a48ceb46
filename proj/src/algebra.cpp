#include "ctl/algebra.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "ctl/errors.hpp"

namespace ctl {

// ---------------------------------------------------------------------------
// BasicAlgebra

BasicAlgebra::BasicAlgebra(int n_idem, std::vector<BasisElem> elems)
    : n_(n_idem), elems_(std::move(elems)) {
    check_internal(static_cast<int>(elems_.size()) >= n_, "fewer basis elements than idempotents");
    for (int i = 0; i < n_; ++i)
        check_internal(elems_[static_cast<size_t>(i)].src == i && elems_[static_cast<size_t>(i)].tgt == i &&
                           elems_[static_cast<size_t>(i)].degree == 0,
                       "idempotent tags are wrong");
    products_.assign(elems_.size() * elems_.size(), {});
    // Idempotent products are forced by the tags.
    for (size_t a = 0; a < elems_.size(); ++a) {
        const BasisElem& ea = elems_[a];
        if (static_cast<int>(a) < n_) {
            for (size_t b = 0; b < elems_.size(); ++b)
                if (elems_[b].tgt == static_cast<int>(a))
                    products_[a * elems_.size() + b] = {{static_cast<int>(b), Rat(1)}};
        }
        if (ea.src < n_)
            products_[a * elems_.size() + static_cast<size_t>(ea.src)] = {{static_cast<int>(a), Rat(1)}};
    }
    index_blocks();
}

void BasicAlgebra::index_blocks() {
    blocks_.assign(static_cast<size_t>(n_) * static_cast<size_t>(n_), {});
    for (size_t k = 0; k < elems_.size(); ++k)
        blocks_[static_cast<size_t>(elems_[k].src) * static_cast<size_t>(n_) +
                static_cast<size_t>(elems_[k].tgt)]
            .push_back(static_cast<int>(k));
}

void BasicAlgebra::set_product(int a, int b, Sparse terms) {
    products_[static_cast<size_t>(a) * elems_.size() + static_cast<size_t>(b)] = std::move(terms);
}

BasicAlgebra::Vec BasicAlgebra::mult(const Vec& x, const Vec& y) const {
    Vec out;
    for (const auto& [a, ca] : x)
        for (const auto& [b, cb] : y) {
            for (const auto& [k, c] : product(a, b)) {
                Rat v = out.count(k) ? out[k] : Rat(0);
                v += ca * cb * c;
                if (v.is_zero())
                    out.erase(k);
                else
                    out[k] = v;
            }
        }
    return out;
}

IntMat BasicAlgebra::cartan() const {
    IntMat c = IntMat::Zero(n_, n_);
    for (const BasisElem& e : elems_) c(e.src, e.tgt) += 1;
    return c;
}

std::vector<int> BasicAlgebra::radical_elems() const {
    std::vector<int> r;
    for (size_t k = 0; k < elems_.size(); ++k)
        if (elems_[k].src != elems_[k].tgt) r.push_back(static_cast<int>(k));
    return r;
}

bool BasicAlgebra::is_connected() const {
    std::vector<int> comp(static_cast<size_t>(n_));
    std::iota(comp.begin(), comp.end(), 0);
    std::function<int(int)> find = [&](int v) { return comp[static_cast<size_t>(v)] == v ? v : comp[static_cast<size_t>(v)] = find(comp[static_cast<size_t>(v)]); };
    for (const BasisElem& e : elems_)
        if (e.src != e.tgt) comp[static_cast<size_t>(find(e.src))] = find(e.tgt);
    std::set<int> roots;
    for (int v = 0; v < n_; ++v) roots.insert(find(v));
    return roots.size() <= 1;
}

void BasicAlgebra::validate() const {
    size_t d = elems_.size();
    // Diagonal blocks are one-dimensional.
    for (int i = 0; i < n_; ++i)
        check_internal(block(i, i).size() == 1, "diagonal block is not spanned by the idempotent");
    // Products respect block tags and are zero when not composable.
    for (size_t a = 0; a < d; ++a)
        for (size_t b = 0; b < d; ++b) {
            const Sparse& p = product(static_cast<int>(a), static_cast<int>(b));
            if (elems_[a].src != elems_[b].tgt) {
                check_internal(p.empty(), "non-composable product is nonzero");
                continue;
            }
            for (const auto& [k, c] : p) {
                check_internal(!c.is_zero(), "zero coefficient stored in a product");
                check_internal(elems_[static_cast<size_t>(k)].src == elems_[b].src &&
                                   elems_[static_cast<size_t>(k)].tgt == elems_[a].tgt,
                               "product leaves its block");
                check_internal(elems_[static_cast<size_t>(k)].degree == elems_[a].degree + elems_[b].degree,
                               "product degree mismatch");
            }
            if (elems_[a].degree + elems_[b].degree > 1)
                check_internal(p.empty(), "degree-1 times degree-1 is nonzero");
        }
    // Associativity over composable triples.
    for (size_t c = 0; c < d; ++c)
        for (size_t b = 0; b < d; ++b) {
            if (elems_[b].src != elems_[c].tgt) continue;
            Vec bc = mult(Vec{{static_cast<int>(b), Rat(1)}}, Vec{{static_cast<int>(c), Rat(1)}});
            for (size_t a = 0; a < d; ++a) {
                if (elems_[a].src != elems_[b].tgt) continue;
                Vec left = mult(mult(Vec{{static_cast<int>(a), Rat(1)}}, Vec{{static_cast<int>(b), Rat(1)}}),
                                Vec{{static_cast<int>(c), Rat(1)}});
                Vec right = mult(Vec{{static_cast<int>(a), Rat(1)}}, bc);
                check_internal(left == right, "associativity fails on a basis triple");
            }
        }
    // Radical nilpotency: powers of the span of the off-diagonal elements
    // must reach zero.
    std::vector<Vec> power;
    for (int r : radical_elems()) power.push_back(Vec{{r, Rat(1)}});
    int steps = 0;
    while (!power.empty()) {
        check_internal(++steps <= dim() + 1, "radical is not nilpotent");
        std::vector<Vec> next;
        RatMat span = rat_zeros(dim(), 0);
        for (const Vec& v : power)
            for (int r : radical_elems()) {
                Vec w = mult(Vec{{r, Rat(1)}}, v);
                if (w.empty()) continue;
                RatVec col = rat_zeros(dim(), 1);
                for (const auto& [k, c] : w) col(k) = c;
                RatMat grown(dim(), span.cols() + 1);
                grown.leftCols(span.cols()) = span;
                grown.col(span.cols()) = col;
                if (rank_of(grown) > rank_of(span)) {
                    span = std::move(grown);
                    next.push_back(std::move(w));
                }
            }
        power = std::move(next);
    }
}

// ---------------------------------------------------------------------------
// Normalization

namespace {

std::optional<long long> module_only_power(const ClusterCategory& cc, const std::vector<int>& labels) {
    long long period = 1;
    for (int lbl : labels) {
        long long len = static_cast<long long>(cc.orbits()[static_cast<size_t>(cc.orbit_of(lbl))].size());
        period = std::lcm(period, len);
    }
    for (long long k = 0; k < period; ++k) {
        std::vector<int> image = tau_c_image(cc, labels, k);
        bool all_modules = true;
        for (int lbl : image)
            if (!cc.is_module(lbl)) all_modules = false;
        if (all_modules) return k;
    }
    return std::nullopt;
}

} // namespace

std::optional<Normalization> normalize_to_module_rep(const ClusterCategory& cc,
                                                     const std::vector<int>& tilting_labels) {
    if (!cc.is_cluster_tilting_set(tilting_labels))
        throw std::invalid_argument("normalize_to_module_rep: not a cluster-tilting set");

    // Breadth-first over orientations via sink reflections: plain tau_c
    // powers first, one reflection next, and so on.
    struct State {
        std::string orientation;
        std::vector<int> flips;
        std::vector<int> labels;
    };
    std::set<std::string> seen;
    std::vector<State> queue{State{cc.quiver().orientation_string(), {}, tilting_labels}};
    seen.insert(queue[0].orientation);
    for (size_t head = 0; head < queue.size(); ++head) {
        State cur = queue[head];
        QuiverSpec q = QuiverSpec::from_orientation_string(cc.quiver().type(), cur.orientation);
        auto cat = ClusterCategory::get(q);
        if (auto k = module_only_power(*cat, cur.labels))
            return Normalization{q, cur.flips, *k, tau_c_image(*cat, cur.labels, *k)};
        for (int v = 0; v < q.n(); ++v) {
            if (!q.is_sink(v)) continue;
            QuiverSpec next = q.reflected_at(v);
            if (!seen.insert(next.orientation_string()).second) continue;
            auto to = ClusterCategory::get(next);
            const std::vector<int>& perm = ClusterCategory::reflection_transport(*cat, v, *to);
            State ns;
            ns.orientation = next.orientation_string();
            ns.flips = cur.flips;
            ns.flips.push_back(v);
            for (int lbl : cur.labels) ns.labels.push_back(perm[static_cast<size_t>(lbl)]);
            std::sort(ns.labels.begin(), ns.labels.end());
            check_internal(to->is_cluster_tilting_set(ns.labels),
                           "reflection transport broke the tilting property");
            queue.push_back(std::move(ns));
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// End_C(T) with explicit structure constants

BasicAlgebra build_end_algebra(const ClusterCategory& cc, const std::vector<int>& module_labels,
                               bool degree0_only) {
    const RepCatalogue& cat = cc.catalogue();
    int n = cc.n();
    if (static_cast<int>(module_labels.size()) != n)
        throw std::invalid_argument("build_end_algebra: expected exactly rank-many summands");
    for (int lbl : module_labels)
        if (!cc.is_module(lbl))
            throw std::invalid_argument("build_end_algebra: summands must be module labels");

    std::vector<Representation> t;
    std::vector<bool> has_tau_inv(static_cast<size_t>(n));
    std::vector<Representation> tau_t(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        t.push_back(cat.rep(module_labels[static_cast<size_t>(i)]));
        has_tau_inv[static_cast<size_t>(i)] = !cat.is_injective(module_labels[static_cast<size_t>(i)]);
        if (has_tau_inv[static_cast<size_t>(i)]) {
            auto down = tau_minus(t.back());
            check_internal(down.has_value(), "tau_minus vanished on a non-injective summand");
            tau_t[static_cast<size_t>(i)] = std::move(*down);
        }
    }

    // Degree-0 bases: Hom_H(T_i, T_j); the diagonal is normalized to the
    // identity morphism.
    std::vector<std::vector<std::vector<Morphism>>> hom0(
        static_cast<size_t>(n), std::vector<std::vector<Morphism>>(static_cast<size_t>(n)));
    std::vector<std::vector<SpanSolver>> coords0(static_cast<size_t>(n),
                                                 std::vector<SpanSolver>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<Morphism> basis = hom_basis(t[static_cast<size_t>(i)], t[static_cast<size_t>(j)]);
            if (i == j) {
                check_internal(basis.size() == 1, "summand with endomorphism ring larger than k");
                basis[0] = identity_morphism(t[static_cast<size_t>(i)]);
            }
            Eigen::Index len = basis.empty() ? 0 : vectorize(basis[0]).size();
            RatMat mat = rat_zeros(len, static_cast<Eigen::Index>(basis.size()));
            for (size_t k = 0; k < basis.size(); ++k)
                mat.col(static_cast<Eigen::Index>(k)) = vectorize(basis[k]);
            hom0[static_cast<size_t>(i)][static_cast<size_t>(j)] = std::move(basis);
            coords0[static_cast<size_t>(i)][static_cast<size_t>(j)] = SpanSolver(std::move(mat));
        }

    // Degree-1 spaces: Ext^1_H(T_i, tau^- T_j) on shared presentations.
    std::vector<std::shared_ptr<const ProjPresentation>> pres(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        pres[static_cast<size_t>(i)] =
            std::make_shared<const ProjPresentation>(minimal_presentation(t[static_cast<size_t>(i)]));
    std::vector<std::vector<std::shared_ptr<const Ext1Space>>> ext1(
        static_cast<size_t>(n), std::vector<std::shared_ptr<const Ext1Space>>(static_cast<size_t>(n)));
    if (!degree0_only)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (has_tau_inv[static_cast<size_t>(j)])
                    ext1[static_cast<size_t>(i)][static_cast<size_t>(j)] = std::make_shared<const Ext1Space>(
                        pres[static_cast<size_t>(i)], tau_t[static_cast<size_t>(j)]);

    auto dim1 = [&](int i, int j) -> int {
        const auto& e = ext1[static_cast<size_t>(i)][static_cast<size_t>(j)];
        return e ? e->dim() : 0;
    };

    // Basis layout: idempotents, then off-diagonal degree-0 elements by
    // (src, tgt, index), then degree-1 elements by (src, tgt, index).
    std::vector<BasisElem> elems;
    for (int i = 0; i < n; ++i) elems.push_back(BasisElem{i, i, 0});
    std::map<std::tuple<int, int, int, int>, int> elem_index; // (deg, src, tgt, k) -> idx
    for (int i = 0; i < n; ++i) elem_index[{0, i, i, 0}] = i;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            for (size_t k = 0; k < hom0[static_cast<size_t>(i)][static_cast<size_t>(j)].size(); ++k) {
                elem_index[{0, i, j, static_cast<int>(k)}] = static_cast<int>(elems.size());
                elems.push_back(BasisElem{i, j, 0});
            }
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < dim1(i, j); ++k) {
                elem_index[{1, i, j, k}] = static_cast<int>(elems.size());
                elems.push_back(BasisElem{i, j, 1});
            }

    // Full dimension must match the Hom table of the cluster category.
    if (!degree0_only)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                int d0 = static_cast<int>(hom0[static_cast<size_t>(i)][static_cast<size_t>(j)].size());
                check_internal(d0 + dim1(i, j) ==
                                   cc.hom_c(module_labels[static_cast<size_t>(i)],
                                            module_labels[static_cast<size_t>(j)]),
                               "block dimension disagrees with the Hom table");
            }

    BasicAlgebra alg(n, std::move(elems));

    auto deg0_index = [&](int i, int j, int k) {
        if (i == j) return i;
        return elem_index.at({0, i, j, k});
    };
    auto deg0_count = [&](int i, int j) {
        return static_cast<int>(hom0[static_cast<size_t>(i)][static_cast<size_t>(j)].size());
    };
    auto deg0_morphism = [&](int i, int j, int k) -> const Morphism& {
        return hom0[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(k)];
    };

    // deg0 . deg0 by composition and coordinate extraction.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int kb = 0; kb < deg0_count(i, j); ++kb)
                for (int k2 = 0; k2 < n; ++k2)
                    for (int ka = 0; ka < deg0_count(j, k2); ++ka) {
                        int a = deg0_index(j, k2, ka), b = deg0_index(i, j, kb);
                        Morphism comp = compose(deg0_morphism(j, k2, ka), deg0_morphism(i, j, kb));
                        auto coords =
                            coords0[static_cast<size_t>(i)][static_cast<size_t>(k2)].coordinates(vectorize(comp));
                        check_internal(coords.has_value(), "deg0 composite left the Hom space");
                        BasicAlgebra::Sparse terms;
                        for (Eigen::Index c = 0; c < coords->size(); ++c)
                            if (!(*coords)(c).is_zero())
                                terms.emplace_back(deg0_index(i, k2, static_cast<int>(c)), (*coords)(c));
                        alg.set_product(a, b, std::move(terms));
                    }

    if (!degree0_only) {
        // deg0(g: j->k) . deg1(Ext(i, tau^- T_j)): pushforward along tau^- g.
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int kg = 0; kg < deg0_count(j, k); ++kg) {
                    std::optional<Morphism> tg;
                    for (int i = 0; i < n; ++i) {
                        const auto& src_space = ext1[static_cast<size_t>(i)][static_cast<size_t>(j)];
                        if (!src_space) continue;
                        int a = deg0_index(j, k, kg);
                        if (!ext1[static_cast<size_t>(i)][static_cast<size_t>(k)]) {
                            for (int e = 0; e < src_space->dim(); ++e)
                                alg.set_product(a, elem_index.at({1, i, j, e}), {});
                            continue;
                        }
                        if (!tg) {
                            tg = tau_minus_morphism(deg0_morphism(j, k, kg));
                            check_internal(tg.has_value(), "tau^- of a degree-0 morphism vanished");
                        }
                        RatMat push = src_space->pushforward_matrix(
                            *tg, *ext1[static_cast<size_t>(i)][static_cast<size_t>(k)]);
                        for (int e = 0; e < src_space->dim(); ++e) {
                            BasicAlgebra::Sparse terms;
                            for (Eigen::Index r = 0; r < push.rows(); ++r)
                                if (!push(r, e).is_zero())
                                    terms.emplace_back(elem_index.at({1, i, k, static_cast<int>(r)}),
                                                       push(r, e));
                            alg.set_product(a, elem_index.at({1, i, j, e}), std::move(terms));
                        }
                    }
                }

        // deg1(Ext(j, tau^- T_k)) . deg0(f: i->j): pullback along f.
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int kf = 0; kf < deg0_count(i, j); ++kf) {
                    int b = deg0_index(i, j, kf);
                    for (int k = 0; k < n; ++k) {
                        const auto& src_space = ext1[static_cast<size_t>(j)][static_cast<size_t>(k)];
                        if (!src_space) continue;
                        const auto& tgt_space = ext1[static_cast<size_t>(i)][static_cast<size_t>(k)];
                        check_internal(tgt_space != nullptr, "pullback target Ext space missing");
                        RatMat pull = src_space->pullback_matrix(deg0_morphism(i, j, kf), *tgt_space);
                        for (int e = 0; e < src_space->dim(); ++e) {
                            BasicAlgebra::Sparse terms;
                            for (Eigen::Index r = 0; r < pull.rows(); ++r)
                                if (!pull(r, e).is_zero())
                                    terms.emplace_back(elem_index.at({1, i, k, static_cast<int>(r)}),
                                                       pull(r, e));
                            alg.set_product(elem_index.at({1, j, k, e}), b, std::move(terms));
                        }
                    }
                }
        // deg1 . deg1 products stay empty (structurally zero).
    }

    alg.validate();
    return alg;
}

// ---------------------------------------------------------------------------
// Self-injectivity and friends

namespace {

/// Solution space of x * (radical) = 0 (right socle, when on_right) or
/// (radical) * x = 0 (left socle), restricted to the elements with the given
/// src (right) resp. src-block of Gamma e_i.
RatMat socle_block(const BasicAlgebra& g, int i, bool right_socle) {
    std::vector<int> unknowns;
    for (int k = 0; k < g.dim(); ++k)
        if (g.elem(k).src == i) unknowns.push_back(k);
    std::vector<int> rad = g.radical_elems();
    // rows: (r, output elem) pairs
    std::vector<std::map<int, Rat>> rows_map;
    for (int r : rad) {
        std::map<int, std::map<int, Rat>> by_output; // output elem -> unknown -> coeff
        for (size_t u = 0; u < unknowns.size(); ++u) {
            const BasicAlgebra::Sparse& p = right_socle ? g.product(unknowns[u], r) : g.product(r, unknowns[u]);
            for (const auto& [k, c] : p) by_output[k][static_cast<int>(u)] = c;
        }
        for (auto& kv : by_output) rows_map.push_back(std::move(kv.second));
    }
    RatMat mat = rat_zeros(static_cast<Eigen::Index>(rows_map.size()),
                           static_cast<Eigen::Index>(unknowns.size()));
    for (size_t r = 0; r < rows_map.size(); ++r)
        for (const auto& [u, c] : rows_map[r]) mat(static_cast<Eigen::Index>(r), u) = c;
    return kernel_basis(mat);
}

} // namespace

bool is_self_injective(const BasicAlgebra& g) {
    long long cover_dim = 0;
    for (int i = 0; i < g.idempotent_count(); ++i) {
        RatMat soc = socle_block(g, i, /*right_socle=*/true);
        long long m_i = soc.cols();
        long long proj_dim = 0;
        for (int k = 0; k < g.dim(); ++k)
            if (g.elem(k).src == i) ++proj_dim;
        cover_dim += m_i * proj_dim;
    }
    return cover_dim == g.dim();
}

std::optional<std::vector<int>> nakayama_permutation(const BasicAlgebra& g) {
    if (!is_self_injective(g)) return std::nullopt;
    std::vector<int> nu(static_cast<size_t>(g.idempotent_count()), -1);
    for (int i = 0; i < g.idempotent_count(); ++i) {
        std::vector<int> unknowns;
        for (int k = 0; k < g.dim(); ++k)
            if (g.elem(k).src == i) unknowns.push_back(k);
        RatMat soc = socle_block(g, i, /*right_socle=*/false);
        check_internal(soc.cols() == 1, "socle of an indecomposable projective is not simple");
        int tgt = -1;
        for (Eigen::Index r = 0; r < soc.rows(); ++r)
            if (!soc(r, 0).is_zero()) {
                int k = unknowns[static_cast<size_t>(r)];
                check_internal(tgt == -1 || tgt == g.elem(k).tgt, "socle is not weight-homogeneous");
                tgt = g.elem(k).tgt;
            }
        nu[static_cast<size_t>(i)] = tgt;
    }
    return nu;
}

int permutation_orbit_count(const std::vector<int>& perm) {
    std::vector<bool> seen(perm.size(), false);
    int orbits = 0;
    for (size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        ++orbits;
        size_t cur = i;
        while (!seen[cur]) {
            seen[cur] = true;
            cur = static_cast<size_t>(perm[cur]);
        }
    }
    return orbits;
}

namespace {

/// Radical filtration dimensions of the projective P_i (left when `left`,
/// right otherwise), as subspaces of its coordinate block.
std::vector<int> radical_filtration_dims(const BasicAlgebra& g, int i, bool left) {
    std::vector<int> unknowns;
    for (int k = 0; k < g.dim(); ++k)
        if ((left ? g.elem(k).src : g.elem(k).tgt) == i) unknowns.push_back(k);
    std::map<int, int> pos;
    for (size_t u = 0; u < unknowns.size(); ++u) pos[unknowns[u]] = static_cast<int>(u);

    std::vector<int> dims{static_cast<int>(unknowns.size())};
    // First radical layer: the non-idempotent coordinates.
    std::vector<BasicAlgebra::Vec> layer;
    for (int k : unknowns)
        if (k >= g.idempotent_count()) layer.push_back(BasicAlgebra::Vec{{k, Rat(1)}});
    std::vector<int> rad = g.radical_elems();
    while (true) {
        // Span dimension of the current layer.
        RatMat span = rat_zeros(static_cast<Eigen::Index>(unknowns.size()),
                                static_cast<Eigen::Index>(layer.size()));
        for (size_t c = 0; c < layer.size(); ++c)
            for (const auto& [k, v] : layer[c]) span(pos.at(k), static_cast<Eigen::Index>(c)) = v;
        int d = static_cast<int>(rank_of(std::move(span)));
        dims.push_back(d);
        if (d == 0) break;
        std::vector<BasicAlgebra::Vec> next;
        for (const BasicAlgebra::Vec& v : layer)
            for (int r : rad) {
                BasicAlgebra::Vec w = left ? g.mult(BasicAlgebra::Vec{{r, Rat(1)}}, v)
                                           : g.mult(v, BasicAlgebra::Vec{{r, Rat(1)}});
                if (!w.empty()) next.push_back(std::move(w));
            }
        layer = std::move(next);
        check_internal(dims.size() <= static_cast<size_t>(g.dim()) + 2, "radical filtration does not terminate");
    }
    return dims; // dims[m] = dim rad^m P_i
}

bool uniserial(const std::vector<int>& filt) {
    for (size_t m = 0; m + 1 < filt.size(); ++m)
        if (filt[m] - filt[m + 1] > 1) return false;
    return true;
}

} // namespace

std::optional<std::vector<int>> kupisch_series(const BasicAlgebra& g) {
    int n = g.idempotent_count();
    std::vector<std::vector<int>> left_filts, right_filts;
    for (int i = 0; i < n; ++i) {
        left_filts.push_back(radical_filtration_dims(g, i, true));
        right_filts.push_back(radical_filtration_dims(g, i, false));
        if (!uniserial(left_filts.back()) || !uniserial(right_filts.back())) return std::nullopt;
    }
    std::vector<int> loewy(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        loewy[static_cast<size_t>(i)] =
            static_cast<int>(left_filts[static_cast<size_t>(i)].size()) - 1;

    // Successor: the top of rad P(i). For uniserial projectives this is the
    // target of any radical element outside rad^2.
    std::vector<int> succ(static_cast<size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        if (left_filts[static_cast<size_t>(i)][1] == 0) continue;
        // rad/rad^2 is one-dimensional: find its weight.
        std::vector<int> unknowns;
        for (int k = 0; k < g.dim(); ++k)
            if (g.elem(k).src == i) unknowns.push_back(k);
        std::map<int, int> pos;
        for (size_t u = 0; u < unknowns.size(); ++u) pos[unknowns[u]] = static_cast<int>(u);
        // rad^2 span.
        std::vector<RatVec> rad2;
        std::vector<int> rad = g.radical_elems();
        for (int r2 : rad)
            for (int r1 : rad) {
                BasicAlgebra::Vec w =
                    g.mult(BasicAlgebra::Vec{{r2, Rat(1)}},
                           g.mult(BasicAlgebra::Vec{{r1, Rat(1)}}, BasicAlgebra::Vec{{i, Rat(1)}}));
                if (w.empty()) continue;
                RatVec col = rat_zeros(static_cast<Eigen::Index>(unknowns.size()), 1);
                for (const auto& [k, c] : w) col(pos.at(k)) = c;
                rad2.push_back(std::move(col));
            }
        RatMat rad2_span = rat_zeros(static_cast<Eigen::Index>(unknowns.size()),
                                     static_cast<Eigen::Index>(rad2.size()));
        for (size_t c = 0; c < rad2.size(); ++c) rad2_span.col(static_cast<Eigen::Index>(c)) = rad2[c];
        Eigen::Index base = rank_of(rad2_span);
        for (int j = 0; j < n && succ[static_cast<size_t>(i)] < 0; ++j) {
            RatMat grown = rat_zeros(static_cast<Eigen::Index>(unknowns.size()),
                                     rad2_span.cols() + static_cast<Eigen::Index>(unknowns.size()));
            grown.leftCols(rad2_span.cols()) = rad2_span;
            Eigen::Index at = rad2_span.cols();
            for (size_t u = 0; u < unknowns.size(); ++u)
                if (unknowns[u] >= n && g.elem(unknowns[u]).tgt == j)
                    grown(static_cast<Eigen::Index>(u), at++) = Rat(1);
            if (rank_of(grown.leftCols(at)) > base) succ[static_cast<size_t>(i)] = j;
        }
    }

    // Order the lengths along the successor walk: cyclic when succ is a full
    // cycle, chain-concatenated otherwise.
    std::vector<int> order;
    std::vector<bool> used(static_cast<size_t>(n), false);
    std::vector<bool> is_image(static_cast<size_t>(n), false);
    for (int i = 0; i < n; ++i)
        if (succ[static_cast<size_t>(i)] >= 0) is_image[static_cast<size_t>(succ[static_cast<size_t>(i)])] = true;
    for (int start = 0; start < n; ++start) {
        if (used[static_cast<size_t>(start)] || is_image[static_cast<size_t>(start)]) continue;
        for (int cur = start; cur >= 0 && !used[static_cast<size_t>(cur)]; cur = succ[static_cast<size_t>(cur)]) {
            used[static_cast<size_t>(cur)] = true;
            order.push_back(cur);
        }
    }
    for (int start = 0; start < n; ++start) { // remaining cycles
        if (used[static_cast<size_t>(start)]) continue;
        for (int cur = start; cur >= 0 && !used[static_cast<size_t>(cur)]; cur = succ[static_cast<size_t>(cur)]) {
            used[static_cast<size_t>(cur)] = true;
            order.push_back(cur);
        }
    }
    std::vector<int> series;
    for (int i : order) series.push_back(loewy[static_cast<size_t>(i)]);
    for (size_t p = 0; p + 1 < order.size(); ++p)
        if (succ[static_cast<size_t>(order[p])] == order[p + 1])
            check_internal(series[p + 1] >= series[p] - 1, "Kupisch condition violated");
    return series;
}

GabrielQuiver gabriel_quiver(const BasicAlgebra& g) {
    int n = g.idempotent_count();
    GabrielQuiver gq;
    gq.arrow_counts = IntMat::Zero(n, n);
    std::vector<int> rad = g.radical_elems();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const std::vector<int>& blk = g.block(i, j);
            if (blk.empty()) continue;
            std::map<int, int> pos;
            for (size_t u = 0; u < blk.size(); ++u) pos[blk[u]] = static_cast<int>(u);
            // rad^2 part of the block.
            std::vector<RatVec> prods;
            for (int r2 : rad)
                for (int r1 : rad) {
                    if (g.elem(r1).src != i || g.elem(r2).tgt != j ||
                        g.elem(r2).src != g.elem(r1).tgt)
                        continue;
                    BasicAlgebra::Vec w = g.mult(BasicAlgebra::Vec{{r2, Rat(1)}}, BasicAlgebra::Vec{{r1, Rat(1)}});
                    if (w.empty()) continue;
                    RatVec col = rat_zeros(static_cast<Eigen::Index>(blk.size()), 1);
                    for (const auto& [k, c] : w) col(pos.at(k)) = c;
                    prods.push_back(std::move(col));
                }
            RatMat span = rat_zeros(static_cast<Eigen::Index>(blk.size()),
                                    static_cast<Eigen::Index>(prods.size()));
            for (size_t c = 0; c < prods.size(); ++c) span.col(static_cast<Eigen::Index>(c)) = prods[c];
            // Arrow representatives: block coordinates outside the rad^2
            // span, pivoted choice.
            RatMat t = span.transpose();
            std::vector<Eigen::Index> pivots = reduced_row_echelon(t);
            std::vector<bool> is_pivot(blk.size(), false);
            for (Eigen::Index p : pivots) is_pivot[static_cast<size_t>(p)] = true;
            for (size_t u = 0; u < blk.size(); ++u) {
                if (is_pivot[u]) continue;
                gq.arrow_counts(i, j) += 1;
                GabrielQuiver::GArrow a;
                a.src = i;
                a.tgt = j;
                a.rep = BasicAlgebra::Vec{{blk[u], Rat(1)}};
                gq.arrows.push_back(std::move(a));
            }
        }
    return gq;
}

bool is_special_biserial(const BasicAlgebra& g) {
    GabrielQuiver gq = gabriel_quiver(g);
    int n = g.idempotent_count();
    for (int v = 0; v < n; ++v) {
        int in = 0, out = 0;
        for (int u = 0; u < n; ++u) {
            in += gq.arrow_counts(u, v);
            out += gq.arrow_counts(v, u);
        }
        if (in > 2 || out > 2) return false;
    }
    for (const auto& a : gq.arrows) {
        int forward = 0, backward = 0;
        for (const auto& b : gq.arrows) {
            if (b.src == a.tgt && !g.mult(b.rep, a.rep).empty()) ++forward;
            if (b.tgt == a.src && !g.mult(a.rep, b.rep).empty()) ++backward;
        }
        if (forward > 1 || backward > 1) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Presentation templates

PresentationTemplate PresentationTemplate::nakayama_cycle(int n, int loewy) {
    check_internal(n >= 1 && loewy >= 1, "bad Nakayama template parameters");
    PresentationTemplate t;
    t.kind = Kind::NakayamaCycle;
    t.n = n;
    t.loewy = loewy;
    return t;
}

PresentationTemplate PresentationTemplate::biserial_d2m(int m) {
    check_internal(m >= 3, "the biserial family needs m >= 3");
    PresentationTemplate t;
    t.kind = Kind::BiserialD2m;
    t.m = m;
    return t;
}

std::string PresentationTemplate::name() const {
    if (kind == Kind::NakayamaCycle)
        return "nakayama-cycle(n=" + std::to_string(n) + ",loewy=" + std::to_string(loewy) + ")";
    return "biserial-d2m(m=" + std::to_string(m) + ")";
}

int PresentationTemplate::vertex_count() const { return kind == Kind::NakayamaCycle ? n : 2 * m; }

std::vector<PresentationTemplate::TArrow> PresentationTemplate::arrows() const {
    std::vector<TArrow> out;
    if (kind == Kind::NakayamaCycle) {
        // Loewy length 1 is the semisimple degeneration: no arrows at all
        // (an admissible ideal cannot kill length-1 paths).
        if (loewy == 1) return out;
        for (int i = 0; i < n; ++i) out.push_back(TArrow{i, (i + 1) % n});
    } else {
        for (int i = 0; i < m; ++i) out.push_back(TArrow{i, (i + 1) % m});         // alpha_i
        for (int i = 0; i < m; ++i) out.push_back(TArrow{i, m + i});               // beta_i
        for (int i = 0; i < m; ++i) out.push_back(TArrow{m + i, (i + m - 1) % m}); // beta'_i
    }
    return out;
}

std::vector<std::vector<int>> PresentationTemplate::zero_relations() const {
    std::vector<std::vector<int>> out;
    if (kind == Kind::NakayamaCycle) {
        if (loewy == 1) return out;
        for (int i = 0; i < n; ++i) {
            std::vector<int> path;
            for (int s = 0; s < loewy; ++s) path.push_back((i + s) % n);
            out.push_back(std::move(path));
        }
    } else {
        for (int i = 0; i < m; ++i) out.push_back({2 * m + i, (i + m - 1) % m}); // alpha . beta'
        for (int i = 0; i < m; ++i) out.push_back({i, m + (i + 1) % m});         // beta . alpha
    }
    return out;
}

std::vector<std::pair<std::vector<int>, std::vector<int>>> PresentationTemplate::scalar_relations()
    const {
    std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
    if (kind == Kind::BiserialD2m)
        for (int i = 0; i < m; ++i) {
            std::vector<int> alphas;
            for (int s = 0; s < m - 1; ++s) alphas.push_back((i + s) % m);
            out.emplace_back(std::move(alphas), std::vector<int>{m + i, 2 * m + i});
        }
    return out;
}

long long PresentationTemplate::expected_dimension() const {
    // Word enumeration under the rewriting rules; independent of the
    // template_algebra construction.
    std::vector<TArrow> as = arrows();
    std::set<std::pair<int, std::vector<int>>> classes; // (source vertex, canonical word)
    long long count = vertex_count();                   // the idempotents
    std::function<void(int, std::vector<int>&)> grow = [&](int at, std::vector<int>& word) {
        for (size_t a = 0; a < as.size(); ++a) {
            if (as[a].src != at) continue;
            word.push_back(static_cast<int>(a));
            bool zero = false;
            if (kind == Kind::NakayamaCycle) {
                if (static_cast<int>(word.size()) >= loewy) zero = true;
            } else {
                auto arrow_kind = [&](int idx) { return idx < m ? 0 : idx < 2 * m ? 1 : 2; };
                for (size_t p = 0; p + 1 < word.size(); ++p) {
                    int k1 = arrow_kind(word[p]), k2 = arrow_kind(word[p + 1]);
                    if (k1 == 2 && k2 == 0) zero = true; // alpha after beta'
                    if (k1 == 0 && k2 == 1) zero = true; // beta after alpha
                }
                int alpha_run = 0, beta_run = 0;
                for (int idx : word) {
                    if (arrow_kind(idx) == 0) {
                        if (++alpha_run >= m) zero = true;
                        beta_run = 0;
                    } else {
                        if (++beta_run >= 3) zero = true;
                        alpha_run = 0;
                    }
                }
            }
            if (!zero) {
                int source = as[static_cast<size_t>(word[0])].src;
                std::vector<int> key = word;
                if (kind == Kind::BiserialD2m) {
                    // alpha^{m-1} and beta'.beta, both from t_i, are the same
                    // class (the identified relation path).
                    bool pure_alpha = static_cast<int>(key.size()) == m - 1;
                    for (int idx : key) pure_alpha = pure_alpha && idx < m;
                    bool beta_pair =
                        key.size() == 2 && key[0] >= m && key[0] < 2 * m && key[1] >= 2 * m;
                    if (pure_alpha || beta_pair) key = {-1};
                }
                classes.insert({source, key});
                grow(as[a].tgt, word);
            }
            word.pop_back();
        }
    };
    for (int v = 0; v < vertex_count(); ++v) {
        std::vector<int> word;
        grow(v, word);
    }
    return count + static_cast<long long>(classes.size());
}

BasicAlgebra template_algebra(const PresentationTemplate& t) {
    if (t.kind == PresentationTemplate::Kind::NakayamaCycle) {
        int n = t.n, ell = t.loewy;
        std::vector<BasisElem> elems;
        for (int i = 0; i < n; ++i) elems.push_back(BasisElem{i, i, 0});
        auto idx = [&](int i, int len) { return n + (len - 1) * n + i; };
        for (int len = 1; len < ell; ++len)
            for (int i = 0; i < n; ++i) elems.push_back(BasisElem{i, (i + len) % n, 0});
        BasicAlgebra alg(n, std::move(elems));
        for (int i = 0; i < n; ++i)
            for (int l1 = 1; l1 < ell; ++l1)
                for (int l2 = 1; l2 < ell; ++l2) {
                    int j = (i + l1) % n;
                    if (l1 + l2 < ell)
                        alg.set_product(idx(j, l2), idx(i, l1), {{idx(i, l1 + l2), Rat(1)}});
                    else
                        alg.set_product(idx(j, l2), idx(i, l1), {});
                }
        alg.validate();
        return alg;
    }

    int m = t.m;
    // Vertices: t_i = i, b_i = m + i.
    std::vector<BasisElem> elems;
    for (int i = 0; i < 2 * m; ++i) elems.push_back(BasisElem{i, i, 0});
    enum Kind { RUN, GAM, BET, BPR, DEL };
    struct Key {
        Kind kind;
        int i;
        int len;
    };
    std::vector<Key> keys;
    auto add = [&](Kind k, int i, int len, int src, int tgt) {
        keys.push_back(Key{k, i, len});
        elems.push_back(BasisElem{src, tgt, 0});
    };
    std::map<std::tuple<int, int, int>, int> index;
    for (int i = 0; i < m; ++i)
        for (int len = 1; len <= m - 2; ++len) add(RUN, i, len, i, (i + len) % m);
    for (int i = 0; i < m; ++i) add(GAM, i, m - 1, i, (i + m - 1) % m);
    for (int i = 0; i < m; ++i) add(BET, i, 1, i, m + i);
    for (int i = 0; i < m; ++i) add(BPR, i, 1, m + i, (i + m - 1) % m);
    for (int i = 0; i < m; ++i) add(DEL, i, 2, m + i, m + (i + m - 1) % m);
    for (size_t k = 0; k < keys.size(); ++k)
        index[{keys[k].kind, keys[k].i, keys[k].len}] = 2 * m + static_cast<int>(k);

    BasicAlgebra alg(2 * m, std::move(elems));
    auto at = [&](Kind k, int i, int len = 1) { return index.at({k, i, len}); };
    auto run_or_gamma = [&](int i, int len) -> BasicAlgebra::Sparse {
        if (len <= m - 2) return {{at(RUN, i, len), Rat(1)}};
        if (len == m - 1) return {{at(GAM, i, m - 1), Rat(1)}};
        return {};
    };
    // All composable non-idempotent products.
    for (size_t kb = 0; kb < keys.size(); ++kb)
        for (size_t ka = 0; ka < keys.size(); ++ka) {
            const Key& b = keys[kb];
            const Key& a = keys[ka];
            int bi = 2 * m + static_cast<int>(kb), ai = 2 * m + static_cast<int>(ka);
            if (alg.elem(ai).src != alg.elem(bi).tgt) continue;
            BasicAlgebra::Sparse p;
            if (b.kind == RUN && a.kind == RUN) p = run_or_gamma(b.i, b.len + a.len);
            else if (b.kind == BET && a.kind == BPR) p = {{at(GAM, b.i, m - 1), Rat(1)}};
            else if (b.kind == BPR && a.kind == BET) p = {{at(DEL, b.i, 2), Rat(1)}};
            // every other composable pair is zero
            alg.set_product(ai, bi, std::move(p));
        }
    alg.validate();
    return alg;
}

MatchReport matches_presentation(const BasicAlgebra& g, const PresentationTemplate& t) {
    MatchReport report;
    if (g.idempotent_count() != t.vertex_count()) {
        report.reason = "vertex count differs";
        return report;
    }
    if (g.dim() != t.expected_dimension()) {
        report.reason = "dimension differs from the template path count";
        return report;
    }
    GabrielQuiver gq = gabriel_quiver(g);
    int n = t.vertex_count();
    auto tarrows = t.arrows();
    IntMat ta = IntMat::Zero(n, n);
    for (const auto& a : tarrows) ta(a.src, a.tgt) += 1;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (ta(i, j) > 1) {
                report.reason = "template has multiple arrows (unsupported)";
                return report;
            }

    // Backtracking quiver isomorphism; relations checked on each complete map.
    std::vector<int> map(static_cast<size_t>(n), -1), used(static_cast<size_t>(n), 0);
    auto arrow_rep = [&](int gi, int gj) -> const BasicAlgebra::Vec* {
        for (const auto& a : gq.arrows)
            if (a.src == gi && a.tgt == gj) return &a.rep;
        return nullptr;
    };
    std::function<bool(int)> assign = [&](int v) -> bool {
        if (v == n) {
            report.scalars.clear();
            for (const auto& path : t.zero_relations()) {
                BasicAlgebra::Vec acc;
                bool first = true;
                for (int ai : path) {
                    const auto* rep = arrow_rep(map[static_cast<size_t>(tarrows[static_cast<size_t>(ai)].src)],
                                                map[static_cast<size_t>(tarrows[static_cast<size_t>(ai)].tgt)]);
                    check_internal(rep != nullptr, "mapped arrow is missing");
                    acc = first ? *rep : g.mult(*rep, acc);
                    first = false;
                }
                if (!acc.empty()) return false;
            }
            for (const auto& [p1, p2] : t.scalar_relations()) {
                auto eval = [&](const std::vector<int>& path) {
                    BasicAlgebra::Vec acc;
                    bool first = true;
                    for (int ai : path) {
                        const auto* rep =
                            arrow_rep(map[static_cast<size_t>(tarrows[static_cast<size_t>(ai)].src)],
                                      map[static_cast<size_t>(tarrows[static_cast<size_t>(ai)].tgt)]);
                        check_internal(rep != nullptr, "mapped arrow is missing");
                        acc = first ? *rep : g.mult(*rep, acc);
                        first = false;
                    }
                    return acc;
                };
                BasicAlgebra::Vec v1 = eval(p1), v2 = eval(p2);
                if (v1.empty() || v2.empty()) return false;
                // v1 = c * v2 with one nonzero scalar c.
                if (v1.size() != v2.size()) return false;
                Rat c(0);
                for (const auto& [k, val] : v1) {
                    auto it = v2.find(k);
                    if (it == v2.end()) return false;
                    Rat ratio = val / it->second;
                    if (c.is_zero())
                        c = ratio;
                    else if (!(c == ratio))
                        return false;
                }
                report.scalars.push_back(c);
            }
            return true;
        }
        for (int g_v = 0; g_v < n; ++g_v) {
            if (used[static_cast<size_t>(g_v)]) continue;
            map[static_cast<size_t>(v)] = g_v;
            used[static_cast<size_t>(g_v)] = 1;
            bool ok = true;
            for (int u = 0; u <= v && ok; ++u) {
                if (map[static_cast<size_t>(u)] < 0) continue;
                if (ta(u, v) != gq.arrow_counts(map[static_cast<size_t>(u)], g_v)) ok = false;
                if (ta(v, u) != gq.arrow_counts(g_v, map[static_cast<size_t>(u)])) ok = false;
            }
            if (ok && assign(v + 1)) return true;
            used[static_cast<size_t>(g_v)] = 0;
            map[static_cast<size_t>(v)] = -1;
        }
        return false;
    };
    if (assign(0)) {
        report.matched = true;
        report.vertex_map = map;
        return report;
    }
    report.reason = "no quiver isomorphism satisfies the relations";
    return report;
}

} // namespace ctl
