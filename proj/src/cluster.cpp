#include "ctl/cluster.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "ctl/errors.hpp"

namespace ctl {

std::string CObject::str() const {
    if (kind == Kind::ShiftedProj) return "sp:" + std::to_string(vertex + 1);
    std::string s = "m:";
    for (int i = 0; i < dims.size(); ++i) {
        check_internal(dims(i) >= 0 && dims(i) <= 9, "label digit out of range");
        s += static_cast<char>('0' + dims(i));
    }
    return s;
}

CObject CObject::parse(const std::string& text, int n) {
    if (text.rfind("sp:", 0) == 0) {
        int v = std::stoi(text.substr(3));
        if (v < 1 || v > n) throw std::invalid_argument("label '" + text + "': vertex out of range");
        return shifted_proj(v - 1);
    }
    if (text.rfind("m:", 0) == 0) {
        std::string digits = text.substr(2);
        if (static_cast<int>(digits.size()) != n)
            throw std::invalid_argument("label '" + text + "': expected " + std::to_string(n) + " digits");
        IntVec d(n);
        for (int i = 0; i < n; ++i) {
            if (digits[static_cast<size_t>(i)] < '0' || digits[static_cast<size_t>(i)] > '9')
                throw std::invalid_argument("label '" + text + "': bad digit");
            d(i) = digits[static_cast<size_t>(i)] - '0';
        }
        return module(std::move(d));
    }
    throw std::invalid_argument("label '" + text + "': expected 'm:<digits>' or 'sp:<vertex>'");
}

int CQuiver::present_count() const {
    int c = 0;
    for (char p : present) c += p ? 1 : 0;
    return c;
}

ClusterCategory::ClusterCategory(QuiverSpec q, int jobs) : q_(std::move(q)), cat_(RepCatalogue::get(q_)) {
    build_labels();
    build_tau();
    build_tables(jobs);
    build_ar_quiver();
    build_layout();
}

std::shared_ptr<const ClusterCategory> ClusterCategory::get(const QuiverSpec& q) {
    static std::mutex mu;
    static std::map<std::string, std::shared_ptr<const ClusterCategory>> registry;
    std::string key = q.type().name() + ":" + q.orientation_string();
    std::lock_guard<std::mutex> lock(mu);
    auto it = registry.find(key);
    if (it != registry.end()) return it->second;
    auto cc = std::make_shared<const ClusterCategory>(q);
    registry.emplace(key, cc);
    return cc;
}

int ClusterCategory::index_of(const CObject& o) const {
    if (o.kind == CObject::Kind::ShiftedProj)
        return o.vertex >= 0 && o.vertex < q_.n() ? shifted_label(o.vertex) : -1;
    return cat_->index_of_dims(o.dims);
}

void ClusterCategory::build_labels() {
    labels_.reserve(static_cast<size_t>(cat_->count() + q_.n()));
    for (int i = 0; i < cat_->count(); ++i) labels_.push_back(CObject::module(cat_->rep(i).dims));
    for (int a = 0; a < q_.n(); ++a) labels_.push_back(CObject::shifted_proj(a));
}

void ClusterCategory::build_tau() {
    int count = label_count();
    tau_.assign(static_cast<size_t>(count), -1);
    tau_inv_.assign(static_cast<size_t>(count), -1);
    for (int i = 0; i < count; ++i) {
        int img;
        if (is_module(i))
            img = cat_->is_projective(i) ? shifted_label(cat_->proj_vertex(i)) : cat_->tau(i);
        else
            img = cat_->injective_index(label(i).vertex);
        tau_[static_cast<size_t>(i)] = img;
        check_internal(tau_inv_[static_cast<size_t>(img)] == -1, "tau_c is not injective");
        tau_inv_[static_cast<size_t>(img)] = i;
    }
    for (int i = 0; i < count; ++i)
        check_internal(tau_inv_[static_cast<size_t>(i)] >= 0, "tau_c is not surjective");

    orbits_.clear();
    orbit_of_.assign(static_cast<size_t>(count), -1);
    for (int i = 0; i < count; ++i) {
        if (orbit_of_[static_cast<size_t>(i)] >= 0) continue;
        std::vector<int> cyc;
        int cur = i;
        do {
            orbit_of_[static_cast<size_t>(cur)] = static_cast<int>(orbits_.size());
            cyc.push_back(cur);
            cur = tau_[static_cast<size_t>(cur)];
        } while (cur != i);
        orbits_.push_back(std::move(cyc));
    }
}

int ClusterCategory::tau_c_power(int i, long long k) const {
    long long len =
        static_cast<long long>(orbits_[static_cast<size_t>(orbit_of_[static_cast<size_t>(i)])].size());
    long long steps = ((k % len) + len) % len;
    int cur = i;
    for (long long s = 0; s < steps; ++s) cur = tau_[static_cast<size_t>(cur)];
    return cur;
}

void ClusterCategory::build_tables(int jobs) {
    int count = label_count();
    int nmod = cat_->count();
    hom_ = IntMat::Zero(count, count);
    // Hom_C(x, y) = Hom_D(x, y) + Hom_D(x, F y), reduced to mod-H data.
    auto hom_entry = [&](int i, int j) -> int {
        if (i < nmod && j < nmod) {
            long long v = cat_->hom_table(i, j);
            if (!cat_->is_injective(j)) v += cat_->ext1_table(i, cat_->tau_inv(j));
            return static_cast<int>(v);
        }
        if (i < nmod) { // y = P(b)[1]
            int b = label(j).vertex;
            return static_cast<int>(cat_->ext1_table(i, cat_->projective_index(b)));
        }
        int a = label(i).vertex; // x = P(a)[1]
        if (j < nmod) return cat_->is_injective(j) ? 0 : cat_->rep(cat_->tau_inv(j)).dims(a);
        return cat_->rep(cat_->projective_index(label(j).vertex)).dims(a);
    };
    auto fill_rows = [&](int lo, int hi) {
        for (int i = lo; i < hi; ++i)
            for (int j = 0; j < count; ++j) hom_(i, j) = hom_entry(i, j);
    };
    if (jobs <= 1) {
        fill_rows(0, count);
    } else {
        std::vector<std::thread> threads;
        int chunk = (count + jobs - 1) / jobs;
        for (int t = 0; t < jobs; ++t) {
            int lo = t * chunk, hi = std::min(count, lo + chunk);
            if (lo < hi) threads.emplace_back(fill_rows, lo, hi);
        }
        for (auto& th : threads) th.join();
    }
    ext_ = IntMat::Zero(count, count);
    for (int i = 0; i < count; ++i)
        for (int j = 0; j < count; ++j) ext_(i, j) = hom_(i, tau_[static_cast<size_t>(j)]);
    for (int i = 0; i < count; ++i) {
        check_internal(hom_(i, i) == 1, "Hom table diagonal is not 1");
        check_internal(ext_(i, i) == 0, "Ext table diagonal is not 0");
        for (int j = 0; j < count; ++j)
            check_internal(ext_(i, j) == ext_(j, i), "Ext table is not symmetric");
    }
}

void ClusterCategory::build_ar_quiver() {
    std::set<std::pair<int, int>> arrows;
    std::vector<std::pair<int, int>> seeds;
    for (auto [s, t] : cat_->ar_arrows()) seeds.emplace_back(s, t);
    // The shifted-projective slice mirrors the arrows among the projectives.
    for (auto [s, t] : cat_->ar_arrows())
        if (cat_->is_projective(s) && cat_->is_projective(t))
            seeds.emplace_back(shifted_label(cat_->proj_vertex(s)), shifted_label(cat_->proj_vertex(t)));
    // Mesh closure: the shift (y -> x) |-> (tau_c x -> y) is invertible, so
    // each seed's orbit closes into a finite cycle.
    for (auto seed : seeds) {
        std::pair<int, int> cur = seed;
        do {
            arrows.insert(cur);
            cur = {tau_[static_cast<size_t>(cur.second)], cur.first};
        } while (cur != seed);
    }
    c_arrows_.assign(arrows.begin(), arrows.end());

    for (auto [y, x] : c_arrows_) {
        check_internal(arrows.count({tau_[static_cast<size_t>(x)], y}) == 1, "mesh axiom fails");
        check_internal(hom_(y, x) >= 1, "AR arrow without a Hom to support it");
    }
    for (int x = 0; x < label_count(); ++x)
        for (int y = 0; y < label_count(); ++y)
            check_internal(arrows.count({y, x}) == arrows.count({tau_[static_cast<size_t>(x)], y}),
                           "mesh axiom fails (equality direction)");
}

void ClusterCategory::build_layout() {
    // Height function on the diagram: h(src) = h(tgt) + 1 along each arrow,
    // so the projective slice ascends along its AR arrows.
    std::vector<int> h(static_cast<size_t>(q_.n()), 0);
    std::vector<bool> seen(static_cast<size_t>(q_.n()), false);
    std::vector<int> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const Arrow& a : q_.arrows()) {
            if (a.src == v && !seen[static_cast<size_t>(a.tgt)]) {
                h[static_cast<size_t>(a.tgt)] = h[static_cast<size_t>(v)] - 1;
                seen[static_cast<size_t>(a.tgt)] = true;
                stack.push_back(a.tgt);
            } else if (a.tgt == v && !seen[static_cast<size_t>(a.src)]) {
                h[static_cast<size_t>(a.src)] = h[static_cast<size_t>(v)] + 1;
                seen[static_cast<size_t>(a.src)] = true;
                stack.push_back(a.src);
            }
        }
    }
    int hmin = *std::min_element(h.begin(), h.end());
    for (int& v : h) v -= hmin;

    x_.assign(static_cast<size_t>(label_count()), 0);
    y_.assign(static_cast<size_t>(label_count()), 0);
    for (int i = 0; i < label_count(); ++i) {
        if (is_module(i)) {
            x_[static_cast<size_t>(i)] =
                2 * cat_->slice_level(i) + h[static_cast<size_t>(cat_->slice_vertex(i))] + 2;
            y_[static_cast<size_t>(i)] = cat_->slice_vertex(i);
        } else {
            x_[static_cast<size_t>(i)] = h[static_cast<size_t>(label(i).vertex)];
            y_[static_cast<size_t>(i)] = label(i).vertex;
        }
    }

    // Twist indicator: some tau_c-orbit joins two different leaf rows.
    seam_twist_ = false;
    for (const auto& orbit : orbits_) {
        std::set<int> leaf_rows;
        for (int lbl : orbit) {
            int row = y_[static_cast<size_t>(lbl)];
            if (q_.is_leaf(row)) leaf_rows.insert(row);
        }
        if (leaf_rows.size() >= 2) seam_twist_ = true;
    }
}

std::vector<HammockEntry> ClusterCategory::hammock_sequence(int a) const {
    if (a < 0 || a >= q_.n()) throw std::invalid_argument("hammock_sequence: vertex out of range");
    std::vector<HammockEntry> seq;
    int start = cat_->projective_index(a);
    int cur = start;
    int t = 0;
    while (true) {
        bool inj = cat_->is_injective(cur);
        seq.push_back(HammockEntry{t, cat_->hom_table(start, cur), inj});
        if (inj) break;
        cur = cat_->tau_inv(cur);
        ++t;
    }
    return seq;
}

bool ClusterCategory::hammock_parity_trigger(int a) const {
    for (const HammockEntry& e : hammock_sequence(a))
        if (e.t % 2 == 1 && e.hom_dim > 0 && !e.target_injective) return true;
    return false;
}

bool ClusterCategory::is_cluster_tilting_set(const std::vector<int>& labels) const {
    if (static_cast<int>(labels.size()) != q_.n()) return false;
    std::set<int> distinct(labels.begin(), labels.end());
    if (static_cast<int>(distinct.size()) != q_.n()) return false;
    for (int a : labels)
        for (int b : labels)
            if (ext_(a, b) != 0) return false;
    return true;
}

const std::vector<int>& ClusterCategory::reflection_transport(const ClusterCategory& from, int v,
                                                              const ClusterCategory& to) {
    static std::mutex mu;
    static std::map<std::string, std::vector<int>> cache;
    std::string key =
        from.quiver().type().name() + ":" + from.quiver().orientation_string() + "@" + std::to_string(v);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    check_internal(from.quiver().is_sink(v), "reflection transport: vertex is not a sink");
    check_internal(to.quiver().same_quiver(from.quiver().reflected_at(v)),
                   "reflection transport: target category has the wrong orientation");
    int count = from.label_count();
    std::vector<int> perm(static_cast<size_t>(count), -1);
    IntVec unit = unit_vector(from.n(), v);
    for (int i = 0; i < count; ++i) {
        int img;
        if (from.is_module(i)) {
            const IntVec& d = from.catalogue().rep(i).dims;
            img = (d == unit) ? to.shifted_label(v)
                              : to.index_of(CObject::module(from.quiver().simple_reflection(v, d)));
        } else {
            int a = from.label(i).vertex;
            img = (a == v) ? to.index_of(CObject::module(unit)) : to.shifted_label(a);
        }
        check_internal(img >= 0, "reflection transport: image label missing");
        perm[static_cast<size_t>(i)] = img;
    }
    std::vector<bool> hit(static_cast<size_t>(count), false);
    for (int i = 0; i < count; ++i) {
        check_internal(!hit[static_cast<size_t>(perm[static_cast<size_t>(i)])],
                       "reflection transport: not a bijection");
        hit[static_cast<size_t>(perm[static_cast<size_t>(i)])] = true;
    }
    for (int i = 0; i < count; ++i) {
        check_internal(perm[static_cast<size_t>(from.tau_c(i))] ==
                           to.tau_c(perm[static_cast<size_t>(i)]),
                       "reflection transport: not tau_c-equivariant");
        for (int j = 0; j < count; ++j)
            check_internal(to.hom_c(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(j)]) ==
                               from.hom_c(i, j),
                           "reflection transport: Hom dimensions not preserved");
    }
    return cache.emplace(std::move(key), std::move(perm)).first->second;
}

CQuiver ClusterCategory::base_quiver() const {
    CQuiver cq;
    cq.n_labels = label_count();
    cq.names.reserve(static_cast<size_t>(cq.n_labels));
    for (int i = 0; i < cq.n_labels; ++i) cq.names.push_back(label(i).str());
    cq.present.assign(static_cast<size_t>(cq.n_labels), 1);
    cq.arrows = c_arrows_;
    cq.translation = tau_;
    cq.x = x_;
    cq.y = y_;
    cq.starred.assign(static_cast<size_t>(cq.n_labels), 0);
    cq.proj_inj_mark.assign(static_cast<size_t>(cq.n_labels), 0);
    cq.seam_arrow.assign(cq.arrows.size(), 0);
    for (size_t k = 0; k < cq.arrows.size(); ++k) {
        auto [s, t] = cq.arrows[k];
        cq.seam_arrow[k] = (cq.x[static_cast<size_t>(t)] != cq.x[static_cast<size_t>(s)] + 1) ? 1 : 0;
    }
    cq.seam_twist = seam_twist_;
    return cq;
}

CQuiver ClusterCategory::ar_quiver(const std::vector<int>& starred_labels) const {
    CQuiver cq = base_quiver();
    for (int lbl : starred_labels) {
        check_internal(lbl >= 0 && lbl < cq.n_labels, "starred label out of range");
        cq.starred[static_cast<size_t>(lbl)] = 1;
    }
    return cq;
}

CQuiver ClusterCategory::mod_gamma_quiver(const std::vector<int>& tilting_labels) const {
    if (!is_cluster_tilting_set(tilting_labels))
        throw std::invalid_argument("mod_gamma_quiver: the marked set is not cluster-tilting");
    CQuiver cq = base_quiver();
    std::set<int> deleted;
    for (int lbl : tilting_labels) deleted.insert(tau_[static_cast<size_t>(lbl)]);
    for (int d : deleted) cq.present[static_cast<size_t>(d)] = 0;

    // In the factor category the tilting summands are the projectives; they
    // are projective-injective exactly when tau_c^2 fixes the set.
    bool tau2_fixed = true;
    std::set<int> as_set(tilting_labels.begin(), tilting_labels.end());
    for (int lbl : tilting_labels)
        if (!as_set.count(tau_c_power(lbl, 2))) tau2_fixed = false;
    for (int lbl : tilting_labels) {
        cq.starred[static_cast<size_t>(lbl)] = 1;
        if (tau2_fixed) cq.proj_inj_mark[static_cast<size_t>(lbl)] = 1;
    }

    std::vector<std::pair<int, int>> kept;
    std::vector<char> kept_seam;
    for (size_t k = 0; k < cq.arrows.size(); ++k) {
        auto [s, t] = cq.arrows[k];
        if (cq.present[static_cast<size_t>(s)] && cq.present[static_cast<size_t>(t)]) {
            kept.push_back(cq.arrows[k]);
            kept_seam.push_back(cq.seam_arrow[k]);
        }
    }
    cq.arrows = std::move(kept);
    cq.seam_arrow = std::move(kept_seam);
    for (int i = 0; i < cq.n_labels; ++i)
        if (!cq.present[static_cast<size_t>(i)])
            for (int& tr : cq.translation)
                if (tr == i) tr = -1;
    for (int d : deleted) cq.translation[static_cast<size_t>(d)] = -1;
    return cq;
}

} // namespace ctl
