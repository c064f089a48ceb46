#include "ctl/rep.hpp"

#include <algorithm>
#include <mutex>
#include <queue>
#include <set>

#include "json.hpp"

#include "ctl/errors.hpp"
#include "ctl/version.hpp"

namespace ctl {

namespace {

std::vector<int> reachable_along_arrows(const QuiverSpec& q, int a, bool forward) {
    std::vector<bool> seen(static_cast<size_t>(q.n()), false);
    std::vector<int> stack{a};
    seen[static_cast<size_t>(a)] = true;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        const auto& arrow_ids = forward ? q.arrows_out_of(v) : q.arrows_into(v);
        for (int ai : arrow_ids) {
            const Arrow& ar = q.arrows()[static_cast<size_t>(ai)];
            int w = forward ? ar.tgt : ar.src;
            if (!seen[static_cast<size_t>(w)]) {
                seen[static_cast<size_t>(w)] = true;
                stack.push_back(w);
            }
        }
    }
    std::vector<int> out;
    for (int v = 0; v < q.n(); ++v)
        if (seen[static_cast<size_t>(v)]) out.push_back(v);
    return out;
}

Representation indicator_rep(const QuiverSpec& q, const std::vector<int>& support) {
    Representation r;
    r.quiver = q;
    r.dims = IntVec::Zero(q.n());
    for (int v : support) r.dims(v) = 1;
    r.arrow_maps.reserve(q.arrows().size());
    for (const Arrow& a : q.arrows()) {
        RatMat m = rat_zeros(r.dims(a.tgt), r.dims(a.src));
        if (r.dims(a.src) == 1 && r.dims(a.tgt) == 1) m(0, 0) = Rat(1);
        r.arrow_maps.push_back(std::move(m));
    }
    return r;
}

/// Canonical data for reducing vectors modulo a column space: RREF rows
/// spanning the space, their pivot coordinates, and the complement.
struct ComplementData {
    RatMat rows;
    std::vector<Eigen::Index> pivots;
    std::vector<Eigen::Index> complement;

    RatVec reduce(RatVec w) const {
        for (Eigen::Index r = 0; r < rows.rows(); ++r) {
            Rat c = w(pivots[static_cast<size_t>(r)]);
            if (c.is_zero()) continue;
            for (Eigen::Index j = 0; j < rows.cols(); ++j) w(j) = w(j) - c * rows(r, j);
        }
        return w;
    }
};

ComplementData column_space_complement(const RatMat& cols) {
    RatMat t = cols.transpose();
    std::vector<Eigen::Index> pivots = reduced_row_echelon(t);
    ComplementData data;
    data.rows = t.topRows(static_cast<Eigen::Index>(pivots.size()));
    data.pivots = pivots;
    std::vector<bool> is_pivot(static_cast<size_t>(cols.rows()), false);
    for (Eigen::Index p : pivots) is_pivot[static_cast<size_t>(p)] = true;
    for (Eigen::Index i = 0; i < cols.rows(); ++i)
        if (!is_pivot[static_cast<size_t>(i)]) data.complement.push_back(i);
    return data;
}

struct SinkData {
    std::vector<int> in_arrow_ids;
    std::vector<Eigen::Index> offsets;
    Eigen::Index total = 0;
    RatMat kernel;
};

SinkData sink_reflection_data(const Representation& x, int v) {
    SinkData d;
    d.in_arrow_ids = x.quiver.arrows_into(v);
    for (int ai : d.in_arrow_ids) {
        d.offsets.push_back(d.total);
        d.total += x.dims(x.quiver.arrows()[static_cast<size_t>(ai)].src);
    }
    RatMat stacked = rat_zeros(x.dims(v), d.total);
    for (size_t k = 0; k < d.in_arrow_ids.size(); ++k) {
        const RatMat& m = x.arrow_maps[static_cast<size_t>(d.in_arrow_ids[k])];
        stacked.middleCols(d.offsets[k], m.cols()) = m;
    }
    d.kernel = kernel_basis(stacked);
    return d;
}

struct SourceData {
    std::vector<int> out_arrow_ids;
    std::vector<Eigen::Index> offsets;
    Eigen::Index total = 0;
    ComplementData image;
};

SourceData source_reflection_data(const Representation& x, int v) {
    SourceData d;
    d.out_arrow_ids = x.quiver.arrows_out_of(v);
    for (int ai : d.out_arrow_ids) {
        d.offsets.push_back(d.total);
        d.total += x.dims(x.quiver.arrows()[static_cast<size_t>(ai)].tgt);
    }
    RatMat stacked = rat_zeros(d.total, x.dims(v));
    for (size_t k = 0; k < d.out_arrow_ids.size(); ++k) {
        const RatMat& m = x.arrow_maps[static_cast<size_t>(d.out_arrow_ids[k])];
        stacked.middleRows(d.offsets[k], m.rows()) = m;
    }
    d.image = column_space_complement(stacked);
    return d;
}

} // namespace

Representation zero_rep(const QuiverSpec& q) { return indicator_rep(q, {}); }

Representation simple_rep(const QuiverSpec& q, int v) { return indicator_rep(q, {v}); }

Representation projective_rep(const QuiverSpec& q, int a) {
    return indicator_rep(q, reachable_along_arrows(q, a, true));
}

Representation injective_rep(const QuiverSpec& q, int a) {
    return indicator_rep(q, reachable_along_arrows(q, a, false));
}

bool is_root_vector(const QuiverSpec& q, const IntVec& d) {
    return is_positive_vector(d) && q.euler_form(d, d) == 1;
}

bool Morphism::is_commuting() const {
    const QuiverSpec& q = source.quiver;
    for (size_t i = 0; i < q.arrows().size(); ++i) {
        const Arrow& a = q.arrows()[i];
        RatMat lhs = target.arrow_maps[i] * vertex_maps[static_cast<size_t>(a.src)];
        RatMat rhs = vertex_maps[static_cast<size_t>(a.tgt)] * source.arrow_maps[i];
        if (lhs != rhs) return false;
    }
    return true;
}

bool Morphism::is_zero() const {
    for (const RatMat& m : vertex_maps)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            for (Eigen::Index i = 0; i < m.rows(); ++i)
                if (!m(i, j).is_zero()) return false;
    return true;
}

Morphism zero_morphism(const Representation& x, const Representation& y) {
    Morphism f;
    f.source = x;
    f.target = y;
    for (int v = 0; v < x.quiver.n(); ++v) f.vertex_maps.push_back(rat_zeros(y.dims(v), x.dims(v)));
    return f;
}

Morphism identity_morphism(const Representation& x) {
    Morphism f;
    f.source = x;
    f.target = x;
    for (int v = 0; v < x.quiver.n(); ++v) f.vertex_maps.push_back(rat_identity(x.dims(v)));
    return f;
}

Morphism compose(const Morphism& g, const Morphism& f) {
    check_internal(g.source.dims == f.target.dims, "compose: domain mismatch");
    Morphism h;
    h.source = f.source;
    h.target = g.target;
    for (size_t v = 0; v < f.vertex_maps.size(); ++v)
        h.vertex_maps.push_back(g.vertex_maps[v] * f.vertex_maps[v]);
    return h;
}

Morphism morphism_add(const Morphism& a, const Morphism& b) {
    Morphism h = a;
    for (size_t v = 0; v < h.vertex_maps.size(); ++v) h.vertex_maps[v] += b.vertex_maps[v];
    return h;
}

Morphism morphism_scale(const Rat& c, const Morphism& f) {
    Morphism h = f;
    for (auto& m : h.vertex_maps)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = m(i, j) * c;
    return h;
}

RatVec vectorize(const Morphism& f) {
    Eigen::Index total = 0;
    for (const RatMat& m : f.vertex_maps) total += m.size();
    RatVec v = rat_zeros(total, 1);
    Eigen::Index off = 0;
    for (const RatMat& m : f.vertex_maps) {
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            for (Eigen::Index r = 0; r < m.rows(); ++r) v(off + c * m.rows() + r) = m(r, c);
        off += m.size();
    }
    return v;
}

Morphism morphism_from_vector(const Representation& x, const Representation& y, const RatVec& v) {
    Morphism f = zero_morphism(x, y);
    Eigen::Index off = 0;
    for (auto& m : f.vertex_maps) {
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            for (Eigen::Index r = 0; r < m.rows(); ++r) m(r, c) = v(off + c * m.rows() + r);
        off += m.size();
    }
    return f;
}

namespace {

/// Constraint matrix of the commuting-square system for Hom(X, Y):
/// unknowns are the stacked vertex maps, one equation block per arrow.
RatMat hom_constraint_matrix(const Representation& x, const Representation& y) {
    check_internal(x.quiver.same_quiver(y.quiver), "hom: different quivers");
    const QuiverSpec& q = x.quiver;
    std::vector<Eigen::Index> offsets;
    Eigen::Index unknowns = 0;
    for (int v = 0; v < q.n(); ++v) {
        offsets.push_back(unknowns);
        unknowns += static_cast<Eigen::Index>(y.dims(v)) * x.dims(v);
    }
    Eigen::Index rows = 0;
    for (const Arrow& a : q.arrows()) rows += static_cast<Eigen::Index>(y.dims(a.tgt)) * x.dims(a.src);
    RatMat mat = rat_zeros(rows, unknowns);
    Eigen::Index row0 = 0;
    for (size_t i = 0; i < q.arrows().size(); ++i) {
        const Arrow& a = q.arrows()[i];
        const RatMat& xa = x.arrow_maps[i];
        const RatMat& ya = y.arrow_maps[i];
        Eigen::Index yt = y.dims(a.tgt), xs = x.dims(a.src);
        // equation (r, c): sum_k Ya(r,k) f_src(k,c) - sum_k f_tgt(r,k) Xa(k,c) = 0
        for (Eigen::Index c = 0; c < xs; ++c)
            for (Eigen::Index r = 0; r < yt; ++r) {
                Eigen::Index row = row0 + c * yt + r;
                for (Eigen::Index k = 0; k < y.dims(a.src); ++k)
                    if (!ya(r, k).is_zero())
                        mat(row, offsets[static_cast<size_t>(a.src)] + c * y.dims(a.src) + k) += ya(r, k);
                for (Eigen::Index k = 0; k < x.dims(a.tgt); ++k)
                    if (!xa(k, c).is_zero())
                        mat(row, offsets[static_cast<size_t>(a.tgt)] + k * yt + r) -= xa(k, c);
            }
        row0 += yt * xs;
    }
    return mat;
}

} // namespace

std::vector<Morphism> hom_basis(const Representation& x, const Representation& y) {
    RatMat mat = hom_constraint_matrix(x, y);
    RatMat ker = kernel_basis(mat);
    std::vector<Morphism> basis;
    basis.reserve(static_cast<size_t>(ker.cols()));
    for (Eigen::Index k = 0; k < ker.cols(); ++k)
        basis.push_back(morphism_from_vector(x, y, ker.col(k)));
    return basis;
}

int hom_dim(const Representation& x, const Representation& y) {
    RatMat mat = hom_constraint_matrix(x, y);
    Eigen::Index cols = mat.cols();
    return static_cast<int>(cols - rank_of(std::move(mat)));
}

long long dim_ext1(const Representation& x, const Representation& y) {
    long long d = hom_dim(x, y) - x.quiver.euler_form(x.dims, y.dims);
    check_internal(d >= 0, "dim_ext1: negative value over a hereditary algebra");
    return d;
}

Representation reflect_at_sink(const Representation& x, int v) {
    if (!x.quiver.is_sink(v)) throw std::invalid_argument("reflect_at_sink: vertex is not a sink");
    SinkData data = sink_reflection_data(x, v);
    QuiverSpec nq = x.quiver.reflected_at(v);
    Representation y;
    y.quiver = nq;
    y.dims = x.dims;
    y.dims(v) = static_cast<int>(data.kernel.cols());
    y.arrow_maps.resize(x.arrow_maps.size());
    for (size_t i = 0; i < nq.arrows().size(); ++i) {
        const Arrow& na = nq.arrows()[i];
        if (na.src == v) {
            // formerly tgt -> v, now v -> tgt: project the kernel inclusion
            size_t k = 0;
            while (data.in_arrow_ids[k] != static_cast<int>(i)) ++k;
            y.arrow_maps[i] = data.kernel.middleRows(data.offsets[k], x.dims(na.tgt));
        } else {
            y.arrow_maps[i] = x.arrow_maps[i];
        }
    }
    return y;
}

Representation reflect_at_source(const Representation& x, int v) {
    if (!x.quiver.is_source(v)) throw std::invalid_argument("reflect_at_source: vertex is not a source");
    SourceData data = source_reflection_data(x, v);
    QuiverSpec nq = x.quiver.reflected_at(v);
    Eigen::Index new_dim = static_cast<Eigen::Index>(data.image.complement.size());
    Representation y;
    y.quiver = nq;
    y.dims = x.dims;
    y.dims(v) = static_cast<int>(new_dim);
    y.arrow_maps.resize(x.arrow_maps.size());
    for (size_t i = 0; i < nq.arrows().size(); ++i) {
        const Arrow& na = nq.arrows()[i];
        if (na.tgt == v) {
            // formerly v -> src, now src -> v: include into the sum, project to the cokernel
            size_t k = 0;
            while (data.out_arrow_ids[k] != static_cast<int>(i)) ++k;
            RatMat m = rat_zeros(new_dim, x.dims(na.src));
            for (Eigen::Index c = 0; c < x.dims(na.src); ++c) {
                RatVec w = rat_zeros(data.total, 1);
                w(data.offsets[k] + c) = Rat(1);
                w = data.image.reduce(w);
                for (Eigen::Index r = 0; r < new_dim; ++r)
                    m(r, c) = w(data.image.complement[static_cast<size_t>(r)]);
            }
            y.arrow_maps[i] = std::move(m);
        } else {
            y.arrow_maps[i] = x.arrow_maps[i];
        }
    }
    return y;
}

Morphism reflect_at_sink(const Morphism& f, int v) {
    Representation rx = reflect_at_sink(f.source, v);
    Representation ry = reflect_at_sink(f.target, v);
    SinkData dx = sink_reflection_data(f.source, v);
    SinkData dy = sink_reflection_data(f.target, v);
    Morphism g;
    g.source = rx;
    g.target = ry;
    g.vertex_maps = f.vertex_maps;
    RatMat moved = rat_zeros(dy.total, dx.kernel.cols());
    for (size_t k = 0; k < dx.in_arrow_ids.size(); ++k) {
        int u = f.source.quiver.arrows()[static_cast<size_t>(dx.in_arrow_ids[k])].src;
        moved.middleRows(dy.offsets[k], f.target.dims(u)) =
            f.vertex_maps[static_cast<size_t>(u)] *
            dx.kernel.middleRows(dx.offsets[k], f.source.dims(u));
    }
    SpanSolver solver(dy.kernel);
    RatMat gv = rat_zeros(dy.kernel.cols(), dx.kernel.cols());
    for (Eigen::Index c = 0; c < moved.cols(); ++c) {
        auto coords = solver.coordinates(moved.col(c));
        check_internal(coords.has_value(), "reflect_at_sink: image left the kernel");
        gv.col(c) = *coords;
    }
    g.vertex_maps[static_cast<size_t>(v)] = std::move(gv);
    return g;
}

Morphism reflect_at_source(const Morphism& f, int v) {
    Representation rx = reflect_at_source(f.source, v);
    Representation ry = reflect_at_source(f.target, v);
    SourceData dx = source_reflection_data(f.source, v);
    SourceData dy = source_reflection_data(f.target, v);
    Morphism g;
    g.source = rx;
    g.target = ry;
    g.vertex_maps = f.vertex_maps;
    Eigen::Index xdim = static_cast<Eigen::Index>(dx.image.complement.size());
    Eigen::Index ydim = static_cast<Eigen::Index>(dy.image.complement.size());
    RatMat gv = rat_zeros(ydim, xdim);
    for (Eigen::Index c = 0; c < xdim; ++c) {
        // Lift the c-th cokernel basis vector, move it blockwise, reduce.
        RatVec w = rat_zeros(dy.total, 1);
        Eigen::Index src_coord = dx.image.complement[static_cast<size_t>(c)];
        for (size_t k = 0; k < dx.out_arrow_ids.size(); ++k) {
            int u = f.source.quiver.arrows()[static_cast<size_t>(dx.out_arrow_ids[k])].tgt;
            Eigen::Index du = f.source.dims(u);
            if (src_coord >= dx.offsets[k] && src_coord < dx.offsets[k] + du) {
                RatVec lifted = rat_zeros(du, 1);
                lifted(src_coord - dx.offsets[k]) = Rat(1);
                RatVec movedv = f.vertex_maps[static_cast<size_t>(u)] * lifted;
                for (Eigen::Index r = 0; r < movedv.size(); ++r) w(dy.offsets[k] + r) = movedv(r);
                break;
            }
        }
        w = dy.image.reduce(w);
        for (Eigen::Index r = 0; r < ydim; ++r)
            gv(r, c) = w(dy.image.complement[static_cast<size_t>(r)]);
    }
    g.vertex_maps[static_cast<size_t>(v)] = std::move(gv);
    return g;
}

namespace {

void require_indecomposable(const Representation& x, const char* who) {
    if (!is_root_vector(x.quiver, x.dims))
        throw std::invalid_argument(std::string(who) + ": input must be indecomposable");
}

} // namespace

std::optional<Representation> tau_plus(const Representation& x) {
    require_indecomposable(x, "tau_plus");
    Representation cur = x;
    for (int v : x.quiver.admissible_sink_order()) cur = reflect_at_sink(cur, v);
    if (cur.is_zero()) return std::nullopt;
    check_internal(cur.quiver.same_quiver(x.quiver), "tau_plus: quiver did not return");
    check_internal(cur.dims == x.quiver.coxeter_transform(x.dims),
                   "tau_plus: dims disagree with Coxeter transform");
    return cur;
}

std::optional<Representation> tau_minus(const Representation& x) {
    require_indecomposable(x, "tau_minus");
    Representation cur = x;
    for (int v : x.quiver.admissible_source_order()) cur = reflect_at_source(cur, v);
    if (cur.is_zero()) return std::nullopt;
    check_internal(cur.quiver.same_quiver(x.quiver), "tau_minus: quiver did not return");
    check_internal(cur.dims == x.quiver.coxeter_transform_inverse(x.dims),
                   "tau_minus: dims disagree with Coxeter transform");
    return cur;
}

std::optional<Morphism> tau_minus_morphism(const Morphism& f) {
    require_indecomposable(f.source, "tau_minus_morphism");
    require_indecomposable(f.target, "tau_minus_morphism");
    Morphism cur = f;
    for (int v : f.source.quiver.admissible_source_order()) cur = reflect_at_source(cur, v);
    if (cur.source.is_zero() || cur.target.is_zero()) return std::nullopt;
    return cur;
}

std::pair<Representation, Morphism> kernel_subrep(const Morphism& f) {
    const QuiverSpec& q = f.source.quiver;
    std::vector<RatMat> kernels;
    Representation k;
    k.quiver = q;
    k.dims = IntVec::Zero(q.n());
    for (int v = 0; v < q.n(); ++v) {
        kernels.push_back(kernel_basis(f.vertex_maps[static_cast<size_t>(v)]));
        k.dims(v) = static_cast<int>(kernels.back().cols());
    }
    k.arrow_maps.resize(q.arrows().size());
    for (size_t i = 0; i < q.arrows().size(); ++i) {
        const Arrow& a = q.arrows()[i];
        RatMat moved = f.source.arrow_maps[i] * kernels[static_cast<size_t>(a.src)];
        SpanSolver solver(kernels[static_cast<size_t>(a.tgt)]);
        RatMat m = rat_zeros(k.dims(a.tgt), k.dims(a.src));
        for (Eigen::Index c = 0; c < moved.cols(); ++c) {
            auto coords = solver.coordinates(moved.col(c));
            check_internal(coords.has_value(), "kernel_subrep: arrow map does not preserve the kernel");
            m.col(c) = *coords;
        }
        k.arrow_maps[i] = std::move(m);
    }
    Morphism incl;
    incl.source = k;
    incl.target = f.source;
    for (int v = 0; v < q.n(); ++v) incl.vertex_maps.push_back(kernels[static_cast<size_t>(v)]);
    return {std::move(k), std::move(incl)};
}

ProjPresentation minimal_presentation(const Representation& x) {
    const QuiverSpec& q = x.quiver;
    // Radical = sum of the images of the arrow maps; the top lifts along the
    // canonical complement coordinates.
    std::vector<std::vector<RatVec>> generators(static_cast<size_t>(q.n()));
    for (int v = 0; v < q.n(); ++v) {
        Eigen::Index cols = 0;
        for (int ai : q.arrows_into(v)) cols += x.dims(q.arrows()[static_cast<size_t>(ai)].src);
        RatMat rad = rat_zeros(x.dims(v), cols);
        Eigen::Index off = 0;
        for (int ai : q.arrows_into(v)) {
            const RatMat& m = x.arrow_maps[static_cast<size_t>(ai)];
            rad.middleCols(off, m.cols()) = m;
            off += m.cols();
        }
        ComplementData comp = column_space_complement(rad);
        for (Eigen::Index fc : comp.complement) {
            RatVec g = rat_zeros(x.dims(v), 1);
            g(fc) = Rat(1);
            generators[static_cast<size_t>(v)].push_back(std::move(g));
        }
    }

    std::vector<std::vector<int>> reach(static_cast<size_t>(q.n()));
    for (int v = 0; v < q.n(); ++v) reach[static_cast<size_t>(v)] = reachable_along_arrows(q, v, true);
    auto reaches = [&](int v, int w) {
        const auto& r = reach[static_cast<size_t>(v)];
        return std::find(r.begin(), r.end(), w) != r.end();
    };

    struct Gen {
        int vertex;
        int copy;
    };
    std::vector<Gen> gens;
    for (int v = 0; v < q.n(); ++v)
        for (size_t c = 0; c < generators[static_cast<size_t>(v)].size(); ++c)
            gens.push_back(Gen{v, static_cast<int>(c)});

    // P0 columns at vertex w: one per generator (v, c) with w reachable from v.
    Representation p0;
    p0.quiver = q;
    p0.dims = IntVec::Zero(q.n());
    std::vector<std::vector<int>> col_gens(static_cast<size_t>(q.n()));
    for (int w = 0; w < q.n(); ++w)
        for (size_t gi = 0; gi < gens.size(); ++gi)
            if (reaches(gens[gi].vertex, w)) {
                col_gens[static_cast<size_t>(w)].push_back(static_cast<int>(gi));
                p0.dims(w) += 1;
            }
    p0.arrow_maps.resize(q.arrows().size());
    for (size_t i = 0; i < q.arrows().size(); ++i) {
        const Arrow& a = q.arrows()[i];
        RatMat m = rat_zeros(p0.dims(a.tgt), p0.dims(a.src));
        const auto& src_cols = col_gens[static_cast<size_t>(a.src)];
        const auto& tgt_cols = col_gens[static_cast<size_t>(a.tgt)];
        for (size_t c = 0; c < src_cols.size(); ++c) {
            auto it = std::find(tgt_cols.begin(), tgt_cols.end(), src_cols[c]);
            check_internal(it != tgt_cols.end(), "projective cover: reach set not arrow-closed");
            m(static_cast<Eigen::Index>(it - tgt_cols.begin()), static_cast<Eigen::Index>(c)) = Rat(1);
        }
        p0.arrow_maps[i] = std::move(m);
    }

    // pi: propagate each generator along the unique tree paths.
    std::vector<std::vector<RatVec>> value(gens.size(), std::vector<RatVec>(static_cast<size_t>(q.n())));
    for (size_t gi = 0; gi < gens.size(); ++gi) {
        int v = gens[gi].vertex;
        value[gi][static_cast<size_t>(v)] =
            generators[static_cast<size_t>(v)][static_cast<size_t>(gens[gi].copy)];
        std::vector<int> stack{v};
        std::vector<bool> seen(static_cast<size_t>(q.n()), false);
        seen[static_cast<size_t>(v)] = true;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int ai : q.arrows_out_of(u)) {
                int w = q.arrows()[static_cast<size_t>(ai)].tgt;
                if (seen[static_cast<size_t>(w)]) continue;
                seen[static_cast<size_t>(w)] = true;
                value[gi][static_cast<size_t>(w)] =
                    x.arrow_maps[static_cast<size_t>(ai)] * value[gi][static_cast<size_t>(u)];
                stack.push_back(w);
            }
        }
    }
    Morphism pi;
    pi.source = p0;
    pi.target = x;
    for (int w = 0; w < q.n(); ++w) {
        RatMat m = rat_zeros(x.dims(w), p0.dims(w));
        const auto& cols = col_gens[static_cast<size_t>(w)];
        for (size_t c = 0; c < cols.size(); ++c)
            m.col(static_cast<Eigen::Index>(c)) = value[static_cast<size_t>(cols[c])][static_cast<size_t>(w)];
        pi.vertex_maps.push_back(std::move(m));
    }
    check_internal(pi.is_commuting(), "projective cover: pi does not commute");
    for (int w = 0; w < q.n(); ++w) {
        RatMat m = pi.vertex_maps[static_cast<size_t>(w)];
        check_internal(rank_of(std::move(m)) == x.dims(w), "projective cover: pi not surjective");
    }

    auto [p1, incl] = kernel_subrep(pi);
    ProjPresentation pres;
    pres.p1 = std::move(p1);
    pres.p0 = std::move(p0);
    pres.incl = std::move(incl);
    pres.pi = std::move(pi);
    return pres;
}

Ext1Space::Ext1Space(std::shared_ptr<const ProjPresentation> pres, Representation z)
    : pres_(std::move(pres)), z_(std::move(z)) {
    hom_p1_ = hom_basis(pres_->p1, z_);
    Eigen::Index vec_len = 0;
    for (int v = 0; v < z_.quiver.n(); ++v)
        vec_len += static_cast<Eigen::Index>(z_.dims(v)) * pres_->p1.dims(v);
    RatMat basis_mat = rat_zeros(vec_len, static_cast<Eigen::Index>(hom_p1_.size()));
    for (size_t k = 0; k < hom_p1_.size(); ++k)
        basis_mat.col(static_cast<Eigen::Index>(k)) = vectorize(hom_p1_[k]);
    hom_p1_coords_ = SpanSolver(basis_mat);

    std::vector<Morphism> hom_p0 = hom_basis(pres_->p0, z_);
    RatMat image =
        rat_zeros(static_cast<Eigen::Index>(hom_p1_.size()), static_cast<Eigen::Index>(hom_p0.size()));
    for (size_t k = 0; k < hom_p0.size(); ++k) {
        Morphism restricted = compose(hom_p0[k], pres_->incl);
        auto coords = hom_p1_coords_.coordinates(vectorize(restricted));
        check_internal(coords.has_value(), "ext1: restriction left Hom(P1, Z)");
        image.col(static_cast<Eigen::Index>(k)) = *coords;
    }
    RatMat t = image.transpose();
    image_pivots_ = reduced_row_echelon(t);
    image_rref_ = t.topRows(static_cast<Eigen::Index>(image_pivots_.size()));
    std::vector<bool> is_pivot(hom_p1_.size(), false);
    for (Eigen::Index p : image_pivots_) is_pivot[static_cast<size_t>(p)] = true;
    for (size_t i = 0; i < hom_p1_.size(); ++i)
        if (!is_pivot[i]) coset_cols_.push_back(static_cast<Eigen::Index>(i));
    check_internal(dim() == dim_ext1(pres_->pi.target, z_),
                   "ext1: dimension disagrees with the Euler-form prediction");
}

Morphism Ext1Space::basis_morphism(int k) const {
    return hom_p1_[static_cast<size_t>(coset_cols_[static_cast<size_t>(k)])];
}

RatVec Ext1Space::reduce_mod_image(const RatVec& h_coords) const {
    RatVec w = h_coords;
    for (Eigen::Index r = 0; r < image_rref_.rows(); ++r) {
        Rat c = w(image_pivots_[static_cast<size_t>(r)]);
        if (c.is_zero()) continue;
        for (Eigen::Index j = 0; j < image_rref_.cols(); ++j) w(j) = w(j) - c * image_rref_(r, j);
    }
    return w;
}

RatVec Ext1Space::coordinates_of(const Morphism& h) const {
    auto coords = hom_p1_coords_.coordinates(vectorize(h));
    check_internal(coords.has_value(), "ext1: morphism not in Hom(P1, Z)");
    RatVec reduced = reduce_mod_image(*coords);
    RatVec out = rat_zeros(dim(), 1);
    for (int k = 0; k < dim(); ++k) out(k) = reduced(coset_cols_[static_cast<size_t>(k)]);
    return out;
}

RatMat Ext1Space::pullback_matrix(const Morphism& f, const Ext1Space& target_space) const {
    const ProjPresentation& px = *pres_;
    const ProjPresentation& pw = target_space.presentation();

    // Lift f through the covers: pi_x . lift0 = f . pi_w.
    std::vector<Morphism> lift_space = hom_basis(pw.p0, px.p0);
    Morphism want = compose(f, pw.pi);
    Eigen::Index vec_len = vectorize(want).size();
    RatMat lmat = rat_zeros(vec_len, static_cast<Eigen::Index>(lift_space.size()));
    for (size_t k = 0; k < lift_space.size(); ++k)
        lmat.col(static_cast<Eigen::Index>(k)) = vectorize(compose(px.pi, lift_space[k]));
    auto sol = solve_linear(lmat, vectorize(want));
    check_internal(sol.has_value(), "ext1 pullback: lift through the cover failed");
    Morphism lift0 = zero_morphism(pw.p0, px.p0);
    for (size_t k = 0; k < lift_space.size(); ++k)
        if (!(*sol)(static_cast<Eigen::Index>(k)).is_zero())
            lift0 = morphism_add(lift0, morphism_scale((*sol)(static_cast<Eigen::Index>(k)), lift_space[k]));

    // Restrict to the kernels: incl_x . lift1 = lift0 . incl_w.
    Morphism into_p0 = compose(lift0, pw.incl);
    Morphism lift1 = zero_morphism(pw.p1, px.p1);
    for (int v = 0; v < px.p1.quiver.n(); ++v) {
        SpanSolver solver(px.incl.vertex_maps[static_cast<size_t>(v)]);
        RatMat m = rat_zeros(px.p1.dims(v), pw.p1.dims(v));
        for (Eigen::Index c = 0; c < pw.p1.dims(v); ++c) {
            auto coords = solver.coordinates(into_p0.vertex_maps[static_cast<size_t>(v)].col(c));
            check_internal(coords.has_value(), "ext1 pullback: lift does not preserve the kernel");
            m.col(c) = *coords;
        }
        lift1.vertex_maps[static_cast<size_t>(v)] = std::move(m);
    }
    check_internal(lift1.is_commuting(), "ext1 pullback: kernel lift not a morphism");

    RatMat out = rat_zeros(target_space.dim(), dim());
    for (int k = 0; k < dim(); ++k)
        out.col(k) = target_space.coordinates_of(compose(basis_morphism(k), lift1));
    return out;
}

RatMat Ext1Space::pushforward_matrix(const Morphism& g, const Ext1Space& target_space) const {
    RatMat out = rat_zeros(target_space.dim(), dim());
    for (int k = 0; k < dim(); ++k)
        out.col(k) = target_space.coordinates_of(compose(g, basis_morphism(k)));
    return out;
}

// ---------------------------------------------------------------------------
// RepCatalogue

RepCatalogue::RepCatalogue(QuiverSpec q) : q_(std::move(q)) {
    build_reps();
    knit_ar_quiver();
    fill_hom_table();
}

std::shared_ptr<const RepCatalogue> RepCatalogue::get(const QuiverSpec& q) {
    static std::mutex mu;
    static std::map<std::string, std::shared_ptr<const RepCatalogue>> registry;
    std::string key = q.type().name() + ":" + q.orientation_string();
    std::lock_guard<std::mutex> lock(mu);
    auto it = registry.find(key);
    if (it != registry.end()) return it->second;
    auto cat = std::make_shared<const RepCatalogue>(q);
    registry.emplace(key, cat);
    return cat;
}

int RepCatalogue::index_of_dims(const IntVec& d) const {
    std::vector<int> key(static_cast<size_t>(d.size()));
    for (int i = 0; i < d.size(); ++i) key[static_cast<size_t>(i)] = d(i);
    auto it = index_by_dims_.find(key);
    return it == index_by_dims_.end() ? -1 : it->second;
}

void RepCatalogue::build_reps() {
    struct Raw {
        Representation rep;
        int vertex;
        int level;
    };
    std::vector<Raw> raws;
    std::vector<std::pair<int, int>> chain_links;
    for (int a = 0; a < q_.n(); ++a) {
        Representation cur = projective_rep(q_, a);
        int level = 0;
        int prev = -1;
        while (true) {
            raws.push_back(Raw{cur, a, level});
            int here = static_cast<int>(raws.size()) - 1;
            if (prev >= 0) chain_links.emplace_back(prev, here);
            prev = here;
            auto next = tau_minus(cur);
            if (!next) break;
            cur = std::move(*next);
            ++level;
        }
    }
    check_internal(raws.size() == q_.type().positive_root_count(),
                   "catalogue size differs from the root count");

    std::vector<int> order(raws.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return lex_less(raws[static_cast<size_t>(a)].rep.dims, raws[static_cast<size_t>(b)].rep.dims);
    });
    std::vector<int> pos(raws.size());
    for (size_t i = 0; i < order.size(); ++i) pos[static_cast<size_t>(order[i])] = static_cast<int>(i);

    size_t count = raws.size();
    reps_.resize(count);
    slice_vertex_.assign(count, -1);
    slice_level_.assign(count, -1);
    tau_.assign(count, -1);
    tau_inv_.assign(count, -1);
    proj_vertex_.assign(count, -1);
    inj_vertex_.assign(count, -1);
    proj_index_.assign(static_cast<size_t>(q_.n()), -1);
    inj_index_.assign(static_cast<size_t>(q_.n()), -1);
    for (size_t i = 0; i < count; ++i) {
        int at = pos[i];
        reps_[static_cast<size_t>(at)] = raws[i].rep;
        slice_vertex_[static_cast<size_t>(at)] = raws[i].vertex;
        slice_level_[static_cast<size_t>(at)] = raws[i].level;
        std::vector<int> key(static_cast<size_t>(q_.n()));
        for (int v = 0; v < q_.n(); ++v) key[static_cast<size_t>(v)] = raws[i].rep.dims(v);
        bool fresh = index_by_dims_.emplace(std::move(key), at).second;
        check_internal(fresh, "catalogue: duplicate dimension vector");
        check_internal(is_root_vector(q_, raws[i].rep.dims), "catalogue: non-root dimension vector");
    }
    for (auto [pred, succ] : chain_links) {
        tau_inv_[static_cast<size_t>(pos[static_cast<size_t>(pred)])] = pos[static_cast<size_t>(succ)];
        tau_[static_cast<size_t>(pos[static_cast<size_t>(succ)])] = pos[static_cast<size_t>(pred)];
    }
    for (int a = 0; a < q_.n(); ++a) {
        int pi = index_of_dims(projective_rep(q_, a).dims);
        int ii = index_of_dims(injective_rep(q_, a).dims);
        check_internal(pi >= 0 && ii >= 0, "catalogue: projective or injective missing");
        proj_vertex_[static_cast<size_t>(pi)] = a;
        inj_vertex_[static_cast<size_t>(ii)] = a;
        proj_index_[static_cast<size_t>(a)] = pi;
        inj_index_[static_cast<size_t>(a)] = ii;
        check_internal(tau_[static_cast<size_t>(pi)] == -1, "catalogue: projective has a tau-predecessor");
        check_internal(tau_inv_[static_cast<size_t>(ii)] == -1, "catalogue: injective has a tau-successor");
    }
    for (size_t i = 0; i < count; ++i) {
        check_internal((tau_[i] == -1) == (proj_vertex_[i] >= 0), "catalogue: tau flag mismatch");
        check_internal((tau_inv_[i] == -1) == (inj_vertex_[i] >= 0), "catalogue: tau_inv flag mismatch");
    }
}

void RepCatalogue::knit_ar_quiver() {
    size_t count = reps_.size();
    ar_in_.assign(count, {});
    ar_out_.assign(count, {});
    // rad P(b) = sum of P(u) over arrows b -> u; these seed the arrows into
    // the projectives.
    for (const Arrow& a : q_.arrows())
        ar_in_[static_cast<size_t>(proj_index_[static_cast<size_t>(a.src)])].push_back(
            proj_index_[static_cast<size_t>(a.tgt)]);
    for (auto& v : ar_in_) std::sort(v.begin(), v.end());

    std::vector<int> by_level(count);
    for (size_t i = 0; i < count; ++i) by_level[i] = static_cast<int>(i);
    std::sort(by_level.begin(), by_level.end(), [&](int a, int b) {
        int la = slice_level_[static_cast<size_t>(a)], lb = slice_level_[static_cast<size_t>(b)];
        return la != lb ? la < lb : a < b;
    });
    for (int x : by_level) {
        if (slice_level_[static_cast<size_t>(x)] > 0)
            ar_in_[static_cast<size_t>(x)] = ar_out_[static_cast<size_t>(tau_[static_cast<size_t>(x)])];
        if (is_injective(x)) continue;
        std::vector<int> outs;
        if (is_projective(x)) {
            int u = proj_vertex_[static_cast<size_t>(x)];
            for (const Arrow& a : q_.arrows())
                if (a.tgt == u) outs.push_back(proj_index_[static_cast<size_t>(a.src)]);
        }
        for (int w : ar_in_[static_cast<size_t>(x)])
            if (!is_injective(w)) outs.push_back(tau_inv_[static_cast<size_t>(w)]);
        std::sort(outs.begin(), outs.end());
        check_internal(std::adjacent_find(outs.begin(), outs.end()) == outs.end(),
                       "knitting produced a multiple arrow");
        ar_out_[static_cast<size_t>(x)] = std::move(outs);
    }

    ar_arrows_.clear();
    for (size_t x = 0; x < count; ++x)
        for (int w : ar_in_[x]) ar_arrows_.emplace_back(w, static_cast<int>(x));
    std::sort(ar_arrows_.begin(), ar_arrows_.end());
    check_internal(std::adjacent_find(ar_arrows_.begin(), ar_arrows_.end()) == ar_arrows_.end(),
                   "duplicate AR arrow");
    ar_in_.assign(count, {});
    ar_out_.assign(count, {});
    for (auto [s, t] : ar_arrows_) {
        ar_out_[static_cast<size_t>(s)].push_back(t);
        ar_in_[static_cast<size_t>(t)].push_back(s);
    }

    std::vector<int> indeg(count, 0);
    for (auto [s, t] : ar_arrows_) {
        (void)s;
        ++indeg[static_cast<size_t>(t)];
    }
    std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
    for (size_t i = 0; i < count; ++i)
        if (indeg[i] == 0) ready.push(static_cast<int>(i));
    topo_order_.clear();
    while (!ready.empty()) {
        int x = ready.top();
        ready.pop();
        topo_order_.push_back(x);
        for (int y : ar_out_[static_cast<size_t>(x)])
            if (--indeg[static_cast<size_t>(y)] == 0) ready.push(y);
    }
    check_internal(topo_order_.size() == count, "AR quiver of mod H is not acyclic");
}

void RepCatalogue::fill_hom_table() {
    int count = static_cast<int>(reps_.size());
    hom_table_ = IntMat::Zero(count, count);
    for (int x = 0; x < count; ++x) {
        std::vector<int> h(static_cast<size_t>(count), 0);
        if (is_projective(x)) {
            int a = proj_vertex_[static_cast<size_t>(x)];
            for (int b = 0; b < q_.n(); ++b) {
                int pj = proj_index_[static_cast<size_t>(b)];
                h[static_cast<size_t>(pj)] = reps_[static_cast<size_t>(pj)].dims(a);
            }
        }
        // Additive recursion over the meshes: for non-projective Y,
        // dim(X, Y) = sum over middle terms - dim(X, tau Y) + [Y = X].
        for (int y : topo_order_) {
            if (is_projective(y)) continue;
            long long s = -h[static_cast<size_t>(tau_[static_cast<size_t>(y)])];
            for (int e : ar_in_[static_cast<size_t>(y)]) s += h[static_cast<size_t>(e)];
            if (y == x) s += 1;
            check_internal(s >= 0, "mesh recursion produced a negative Hom dimension");
            h[static_cast<size_t>(y)] = static_cast<int>(s);
        }
        for (int y = 0; y < count; ++y) hom_table_(x, y) = h[static_cast<size_t>(y)];
    }
}

long long RepCatalogue::ext1_table(int i, int j) const {
    return hom_table_(i, j) -
           q_.euler_form(reps_[static_cast<size_t>(i)].dims, reps_[static_cast<size_t>(j)].dims);
}

// ---------------------------------------------------------------------------
// JSON cache: header (type, rank, orientation, version), then integer
// matrices. Byte-reproducible for fixed input.

std::string RepCatalogue::save_cache() const {
    nlohmann::ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["tool_version"] = kToolVersion;
    doc["kind"] = "indecomposable-catalogue";
    doc["type"] = std::string(1, family_char(q_.type().family));
    doc["rank"] = q_.type().rank;
    doc["orientation"] = q_.orientation_string();
    doc["count"] = count();
    nlohmann::ordered_json reps = nlohmann::ordered_json::array();
    for (int i = 0; i < count(); ++i) {
        const Representation& r = reps_[static_cast<size_t>(i)];
        nlohmann::ordered_json jr;
        jr["dims"] = std::vector<int>(r.dims.data(), r.dims.data() + r.dims.size());
        jr["slice_vertex"] = slice_vertex(i);
        jr["slice_level"] = slice_level(i);
        nlohmann::ordered_json maps = nlohmann::ordered_json::array();
        for (const RatMat& m : r.arrow_maps) {
            nlohmann::ordered_json jm;
            jm["rows"] = static_cast<int>(m.rows());
            jm["cols"] = static_cast<int>(m.cols());
            std::vector<std::int64_t> num, den;
            for (Eigen::Index c = 0; c < m.cols(); ++c)
                for (Eigen::Index rr = 0; rr < m.rows(); ++rr) {
                    num.push_back(m(rr, c).num());
                    den.push_back(m(rr, c).den());
                }
            jm["num"] = num;
            jm["den"] = den;
            maps.push_back(std::move(jm));
        }
        jr["arrow_maps"] = std::move(maps);
        reps.push_back(std::move(jr));
    }
    doc["reps"] = std::move(reps);
    nlohmann::ordered_json hom = nlohmann::ordered_json::array();
    for (int i = 0; i < count(); ++i) {
        std::vector<int> row;
        for (int j = 0; j < count(); ++j) row.push_back(hom_table_(i, j));
        hom.push_back(row);
    }
    doc["hom_table"] = std::move(hom);
    return doc.dump(1);
}

void RepCatalogue::verify_cache_roundtrip(const RepCatalogue& cat) {
    std::string bytes = cat.save_cache();
    nlohmann::ordered_json doc = nlohmann::ordered_json::parse(bytes);
    check_internal(doc["schema_version"] == kSchemaVersion, "cache: schema version mismatch");
    check_internal(doc["count"] == cat.count(), "cache: count mismatch");
    QuiverSpec q = QuiverSpec::from_orientation_string(
        DynkinType(family_from_char(doc["type"].get<std::string>()[0]), doc["rank"].get<int>()),
        doc["orientation"].get<std::string>());
    check_internal(q.same_quiver(cat.quiver()), "cache: quiver mismatch");
    for (int i = 0; i < cat.count(); ++i) {
        const auto& jr = doc["reps"][static_cast<size_t>(i)];
        const Representation& r = cat.rep(i);
        auto dims = jr["dims"].get<std::vector<int>>();
        for (int v = 0; v < q.n(); ++v)
            check_internal(dims[static_cast<size_t>(v)] == r.dims(v), "cache: dims mismatch");
        check_internal(jr["slice_vertex"].get<int>() == cat.slice_vertex(i), "cache: slice mismatch");
        for (size_t a = 0; a < r.arrow_maps.size(); ++a) {
            const auto& jm = jr["arrow_maps"][a];
            const RatMat& m = r.arrow_maps[a];
            check_internal(jm["rows"].get<int>() == m.rows() && jm["cols"].get<int>() == m.cols(),
                           "cache: matrix shape mismatch");
            auto num = jm["num"].get<std::vector<std::int64_t>>();
            auto den = jm["den"].get<std::vector<std::int64_t>>();
            size_t k = 0;
            for (Eigen::Index c = 0; c < m.cols(); ++c)
                for (Eigen::Index rr = 0; rr < m.rows(); ++rr, ++k)
                    check_internal(num[k] == m(rr, c).num() && den[k] == m(rr, c).den(),
                                   "cache: matrix entry mismatch");
        }
    }
    for (int i = 0; i < cat.count(); ++i) {
        auto row = doc["hom_table"][static_cast<size_t>(i)].get<std::vector<int>>();
        for (int j = 0; j < cat.count(); ++j)
            check_internal(row[static_cast<size_t>(j)] == cat.hom_table(i, j),
                           "cache: hom table mismatch");
    }
    std::string again = cat.save_cache();
    check_internal(bytes == again, "cache serialization is not byte-stable");
}

} // namespace ctl
