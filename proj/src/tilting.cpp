#include "ctl/tilting.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

#include "ctl/errors.hpp"

namespace ctl {

CompatGraph::CompatGraph(const ClusterCategory& cc) : n_(cc.label_count()) {
    check_internal(n_ <= kMaxVertices, "compat graph exceeds the static vertex cap");
    adj_.assign(static_cast<size_t>(n_), Bits{});
    for (int i = 0; i < n_; ++i) {
        check_internal(cc.ext_c(i, i) == 0, "a label is not rigid");
        for (int j = 0; j < n_; ++j)
            if (j != i && cc.ext_c(i, j) == 0) adj_[static_cast<size_t>(i)].set(static_cast<size_t>(j));
    }
}

int CompatGraph::edge_count() const {
    int total = 0;
    for (const Bits& b : adj_) total += static_cast<int>(b.count());
    return total / 2;
}

namespace {

struct CliqueSearch {
    const CompatGraph& g;
    int want;
    std::vector<std::vector<int>>& out;

    // R = current clique, cand = common neighbors above the last vertex,
    // ext = all common neighbors. No bound pruning: every clique is visited,
    // so undersized maximal cliques are always detected.
    void run(std::vector<int>& r, const CompatGraph::Bits& cand, const CompatGraph::Bits& ext) {
        if (static_cast<int>(r.size()) == want) {
            check_internal(ext.none(), "maximal clique larger than the rank found");
            out.push_back(r);
            return;
        }
        if (cand.none()) {
            check_internal(ext.any(), "maximal clique smaller than the rank found");
            return;
        }
        for (int v = 0; v < g.vertex_count(); ++v) {
            if (!cand[static_cast<size_t>(v)]) continue;
            r.push_back(v);
            CompatGraph::Bits mask;
            for (int w = v + 1; w < g.vertex_count(); ++w) mask.set(static_cast<size_t>(w));
            run(r, cand & g.neighbors(v) & mask, ext & g.neighbors(v));
            r.pop_back();
        }
    }
};

} // namespace

std::vector<std::vector<int>> enumerate_cluster_tilting(const ClusterCategory& cc, int jobs) {
    CompatGraph g(cc);
    int n = cc.label_count();
    int want = cc.n();

    auto run_roots = [&](int lo, int hi, std::vector<std::vector<int>>& out) {
        CliqueSearch search{g, want, out};
        for (int v = lo; v < hi; ++v) {
            std::vector<int> r{v};
            CompatGraph::Bits mask;
            for (int w = v + 1; w < n; ++w) mask.set(static_cast<size_t>(w));
            search.run(r, g.neighbors(v) & mask, g.neighbors(v));
        }
    };

    std::vector<std::vector<int>> result;
    if (jobs <= 1) {
        run_roots(0, n, result);
    } else {
        // Root branches split across threads; buffers concatenated in branch
        // order keep the output independent of the schedule.
        std::vector<std::vector<std::vector<int>>> buffers(static_cast<size_t>(n));
        std::vector<std::thread> threads;
        std::atomic<int> next{0};
        for (int t = 0; t < jobs; ++t)
            threads.emplace_back([&]() {
                while (true) {
                    int v = next.fetch_add(1);
                    if (v >= n) return;
                    run_roots(v, v + 1, buffers[static_cast<size_t>(v)]);
                }
            });
        for (auto& th : threads) th.join();
        for (auto& buf : buffers)
            for (auto& t : buf) result.push_back(std::move(t));
    }
    check_internal(std::is_sorted(result.begin(), result.end()), "tilting enumeration out of order");
    return result;
}

bool is_cluster_tilting(const ClusterCategory& cc, const std::vector<int>& labels) {
    return cc.is_cluster_tilting_set(labels);
}

std::vector<int> tau_c_image(const ClusterCategory& cc, const std::vector<int>& t, long long power) {
    std::vector<int> img;
    img.reserve(t.size());
    for (int lbl : t) img.push_back(cc.tau_c_power(lbl, power));
    std::sort(img.begin(), img.end());
    return img;
}

std::vector<std::vector<int>> selfinjective_candidates(const ClusterCategory& cc,
                                                       const std::vector<std::vector<int>>& tiltings) {
    std::vector<std::vector<int>> out;
    for (const auto& t : tiltings)
        if (tau_c_image(cc, t, 2) == t) out.push_back(t);
    return out;
}

} // namespace ctl
