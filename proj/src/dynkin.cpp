#include "ctl/dynkin.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ctl {

char family_char(Family f) {
    switch (f) {
        case Family::A: return 'A';
        case Family::D: return 'D';
        case Family::E: return 'E';
    }
    throw std::logic_error("unreachable");
}

Family family_from_char(char c) {
    switch (c) {
        case 'A': case 'a': return Family::A;
        case 'D': case 'd': return Family::D;
        case 'E': case 'e': return Family::E;
        default: throw std::invalid_argument(std::string("unknown Dynkin family '") + c + "'");
    }
}

DynkinType::DynkinType(Family f, int n) : family(f), rank(n) {
    bool ok = (f == Family::A && n >= 1) || (f == Family::D && n >= 3) ||
              (f == Family::E && n >= 6 && n <= 8);
    if (!ok)
        throw std::invalid_argument("invalid Dynkin rank " + std::to_string(n) + " for family " +
                                    family_char(f));
}

std::string DynkinType::name() const { return std::string(1, family_char(family)) + std::to_string(rank); }

int DynkinType::coxeter_number() const {
    switch (family) {
        case Family::A: return rank + 1;
        case Family::D: return 2 * rank - 2;
        case Family::E: return rank == 6 ? 12 : rank == 7 ? 18 : 30;
    }
    throw std::logic_error("unreachable");
}

std::size_t DynkinType::positive_root_count() const {
    switch (family) {
        case Family::A: return static_cast<std::size_t>(rank) * (rank + 1) / 2;
        case Family::D: return static_cast<std::size_t>(rank) * (rank - 1);
        case Family::E: return rank == 6 ? 36u : rank == 7 ? 63u : 120u;
    }
    throw std::logic_error("unreachable");
}

std::vector<std::pair<int, int>> QuiverSpec::diagram_edges(DynkinType t) {
    std::vector<std::pair<int, int>> edges;
    int n = t.rank;
    switch (t.family) {
        case Family::A:
            for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
            break;
        case Family::D:
            edges.emplace_back(0, 2);
            edges.emplace_back(1, 2);
            for (int i = 2; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
            break;
        case Family::E:
            edges.emplace_back(0, 2);
            edges.emplace_back(1, 3);
            edges.emplace_back(2, 3);
            for (int i = 3; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
            break;
    }
    return edges;
}

QuiverSpec::QuiverSpec(DynkinType t) : type_(t), n_(t.rank), edges_(diagram_edges(t)) {
    std::vector<Arrow> arrows;
    arrows.reserve(edges_.size());
    for (auto [u, v] : edges_) arrows.push_back(Arrow{u, v});
    build(std::move(arrows));
}

QuiverSpec::QuiverSpec(DynkinType t, const std::vector<bool>& edge_toward_higher)
    : type_(t), n_(t.rank), edges_(diagram_edges(t)) {
    if (edge_toward_higher.size() != edges_.size())
        throw std::invalid_argument("orientation list does not match the edge set (" +
                                    std::to_string(edges_.size()) + " edges expected)");
    std::vector<Arrow> arrows;
    arrows.reserve(edges_.size());
    for (size_t i = 0; i < edges_.size(); ++i) {
        auto [u, v] = edges_[i];
        arrows.push_back(edge_toward_higher[i] ? Arrow{u, v} : Arrow{v, u});
    }
    build(std::move(arrows));
}

QuiverSpec QuiverSpec::from_orientation_string(DynkinType t, const std::string& spec) {
    std::vector<bool> dirs;
    dirs.reserve(spec.size());
    for (char c : spec) {
        if (c == '+')
            dirs.push_back(true);
        else if (c == '-')
            dirs.push_back(false);
        else
            throw std::invalid_argument("orientation string must consist of '+' and '-'");
    }
    return QuiverSpec(t, dirs);
}

void QuiverSpec::build(std::vector<Arrow> arrows) {
    arrows_ = std::move(arrows);
    out_.assign(static_cast<size_t>(n_), {});
    in_.assign(static_cast<size_t>(n_), {});
    adj_.assign(static_cast<size_t>(n_), {});
    for (size_t i = 0; i < arrows_.size(); ++i) {
        out_[static_cast<size_t>(arrows_[i].src)].push_back(static_cast<int>(i));
        in_[static_cast<size_t>(arrows_[i].tgt)].push_back(static_cast<int>(i));
        adj_[static_cast<size_t>(arrows_[i].src)].push_back(arrows_[i].tgt);
        adj_[static_cast<size_t>(arrows_[i].tgt)].push_back(arrows_[i].src);
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());
}

std::optional<int> QuiverSpec::branch_vertex() const {
    for (int v = 0; v < n_; ++v)
        if (adj_[static_cast<size_t>(v)].size() >= 3) return v;
    return std::nullopt;
}

std::string QuiverSpec::orientation_string() const {
    std::string s;
    s.reserve(arrows_.size());
    for (size_t i = 0; i < arrows_.size(); ++i)
        s += (arrows_[i].src == edges_[i].first) ? '+' : '-';
    return s;
}

QuiverSpec QuiverSpec::reversed() const {
    std::vector<bool> dirs;
    dirs.reserve(arrows_.size());
    for (size_t i = 0; i < arrows_.size(); ++i) dirs.push_back(arrows_[i].src != edges_[i].first);
    return QuiverSpec(type_, dirs);
}

QuiverSpec QuiverSpec::reflected_at(int v) const {
    std::vector<bool> dirs;
    dirs.reserve(arrows_.size());
    for (size_t i = 0; i < arrows_.size(); ++i) {
        bool toward_higher = arrows_[i].src == edges_[i].first;
        if (arrows_[i].src == v || arrows_[i].tgt == v) toward_higher = !toward_higher;
        dirs.push_back(toward_higher);
    }
    return QuiverSpec(type_, dirs);
}

long long QuiverSpec::euler_form(const IntVec& d, const IntVec& e) const {
    if (d.size() != n_ || e.size() != n_)
        throw std::invalid_argument("euler_form: dimension vector length mismatch");
    long long s = 0;
    for (int v = 0; v < n_; ++v) s += static_cast<long long>(d(v)) * e(v);
    for (const Arrow& a : arrows_) s -= static_cast<long long>(d(a.src)) * e(a.tgt);
    return s;
}

IntMat QuiverSpec::symmetrized_euler() const {
    IntMat m = IntMat::Zero(n_, n_);
    for (int v = 0; v < n_; ++v) m(v, v) = 2;
    for (auto [u, v] : edges_) {
        m(u, v) -= 1;
        m(v, u) -= 1;
    }
    return m;
}

IntVec QuiverSpec::simple_reflection(int v, IntVec d) const {
    int s = 0;
    for (int u : adj_[static_cast<size_t>(v)]) s += d(u);
    d(v) = s - d(v);
    return d;
}

std::vector<int> QuiverSpec::admissible_sink_order() const {
    // Orientation state per arrow: true = as stored.
    std::vector<bool> forward(arrows_.size(), true);
    std::vector<bool> used(static_cast<size_t>(n_), false);
    std::vector<int> order;
    order.reserve(static_cast<size_t>(n_));
    auto points_into = [&](size_t ai, int v) {
        return (forward[ai] ? arrows_[ai].tgt : arrows_[ai].src) == v;
    };
    for (int step = 0; step < n_; ++step) {
        int chosen = -1;
        for (int v = 0; v < n_ && chosen < 0; ++v) {
            if (used[static_cast<size_t>(v)]) continue;
            bool sink = true;
            for (size_t ai = 0; ai < arrows_.size() && sink; ++ai) {
                if (arrows_[ai].src != v && arrows_[ai].tgt != v) continue;
                if (!points_into(ai, v)) sink = false;
            }
            if (sink) chosen = v;
        }
        check_internal(chosen >= 0, "sink peeling stalled on an acyclic quiver");
        for (size_t ai = 0; ai < arrows_.size(); ++ai)
            if (arrows_[ai].src == chosen || arrows_[ai].tgt == chosen) forward[ai] = !forward[ai];
        used[static_cast<size_t>(chosen)] = true;
        order.push_back(chosen);
    }
    return order;
}

std::vector<int> QuiverSpec::admissible_source_order() const {
    std::vector<int> order = reversed().admissible_sink_order();
    return order;
}

IntVec QuiverSpec::coxeter_transform(const IntVec& d) const {
    IntVec r = d;
    for (int v : admissible_sink_order()) r = simple_reflection(v, r);
    return r;
}

IntVec QuiverSpec::coxeter_transform_inverse(const IntVec& d) const {
    std::vector<int> order = admissible_sink_order();
    IntVec r = d;
    for (auto it = order.rbegin(); it != order.rend(); ++it) r = simple_reflection(*it, r);
    return r;
}

std::optional<int> QuiverSpec::arm_distance(int a) const {
    if (type_.family == Family::A)
        throw std::invalid_argument("arm_distance: family A has no branching vertex");
    if (a < 0 || a >= n_) throw std::invalid_argument("arm_distance: vertex out of range");
    std::optional<int> branch = branch_vertex();
    if (!branch || !is_leaf(a)) return std::nullopt;
    // Unique tree path from the leaf to the branch vertex.
    int prev = -1, cur = a, count = 1;
    while (cur != *branch) {
        int next = -1;
        for (int u : neighbors(cur))
            if (u != prev) {
                next = u;
                break;
            }
        prev = cur;
        cur = next;
        ++count;
    }
    return count;
}

IntVec unit_vector(int n, int v) {
    IntVec d = IntVec::Zero(n);
    d(v) = 1;
    return d;
}

bool is_positive_vector(const IntVec& d) {
    bool some = false;
    for (int i = 0; i < d.size(); ++i) {
        if (d(i) < 0) return false;
        if (d(i) > 0) some = true;
    }
    return some;
}

bool lex_less(const IntVec& a, const IntVec& b) {
    for (int i = 0; i < a.size() && i < b.size(); ++i) {
        if (a(i) != b(i)) return a(i) < b(i);
    }
    return a.size() < b.size();
}

std::vector<IntVec> positive_roots(const QuiverSpec& q) {
    auto cmp = [](const IntVec& a, const IntVec& b) { return lex_less(a, b); };
    std::set<IntVec, decltype(cmp)> roots(cmp);
    std::vector<IntVec> work;
    for (int v = 0; v < q.n(); ++v) {
        IntVec s = unit_vector(q.n(), v);
        roots.insert(s);
        work.push_back(s);
    }
    while (!work.empty()) {
        IntVec r = work.back();
        work.pop_back();
        for (int v = 0; v < q.n(); ++v) {
            IntVec s = q.simple_reflection(v, r);
            if (is_positive_vector(s) && roots.insert(s).second) work.push_back(s);
        }
    }
    return std::vector<IntVec>(roots.begin(), roots.end());
}

} // namespace ctl
