#include "ctl/emit.hpp"

#include <map>

#include "json.hpp"

#include "ctl/version.hpp"

namespace ctl {

std::string quiver_to_dot(const CQuiver& q, const std::string& title) {
    std::string out;
    out += "digraph \"" + title + "\" {\n";
    out += "  rankdir=LR;\n";
    out += "  node [shape=ellipse, fontsize=10];\n";
    out += "  graph [label=\"" + title + (q.seam_twist ? " (seam twisted)" : " (seam untwisted)") +
           "\", labelloc=t];\n";

    // One rank per slice.
    std::map<int, std::vector<int>> by_slice;
    for (int i = 0; i < q.n_labels; ++i)
        if (q.present[static_cast<size_t>(i)]) by_slice[q.x[static_cast<size_t>(i)]].push_back(i);
    for (const auto& [x, ids] : by_slice) {
        out += "  { rank=same;";
        for (int i : ids) out += " \"" + q.names[static_cast<size_t>(i)] + "\";";
        out += " }\n";
    }
    std::vector<bool> on_seam(static_cast<size_t>(q.n_labels), false);
    for (size_t k = 0; k < q.arrows.size(); ++k)
        if (q.seam_arrow[k]) {
            on_seam[static_cast<size_t>(q.arrows[k].first)] = true;
            on_seam[static_cast<size_t>(q.arrows[k].second)] = true;
        }
    for (const auto& [x, ids] : by_slice) {
        for (int i : ids) {
            out += "  \"" + q.names[static_cast<size_t>(i)] + "\" [pos=\"" + std::to_string(x) + "," +
                   std::to_string(q.y[static_cast<size_t>(i)]) + "!\"";
            if (q.starred[static_cast<size_t>(i)]) out += ", xlabel=\"*\", penwidth=2";
            if (q.proj_inj_mark[static_cast<size_t>(i)]) out += ", shape=box";
            if (on_seam[static_cast<size_t>(i)]) out += ", seam=\"true\"";
            out += "];\n";
        }
    }
    for (size_t k = 0; k < q.arrows.size(); ++k) {
        auto [s, t] = q.arrows[k];
        out += "  \"" + q.names[static_cast<size_t>(s)] + "\" -> \"" + q.names[static_cast<size_t>(t)] +
               "\"";
        if (q.seam_arrow[k]) out += " [style=dashed, constraint=false, label=\"seam\"]";
        out += ";\n";
    }
    out += "}\n";
    return out;
}

std::string quiver_to_json(const CQuiver& q, const std::string& title) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["tool_version"] = kToolVersion;
    doc["kind"] = "ar-quiver";
    doc["title"] = title;
    doc["seam_twist"] = q.seam_twist;
    std::vector<bool> on_seam(static_cast<size_t>(q.n_labels), false);
    for (size_t k = 0; k < q.arrows.size(); ++k)
        if (q.seam_arrow[k]) {
            on_seam[static_cast<size_t>(q.arrows[k].first)] = true;
            on_seam[static_cast<size_t>(q.arrows[k].second)] = true;
        }
    nlohmann::ordered_json verts = nlohmann::ordered_json::array();
    for (int i = 0; i < q.n_labels; ++i) {
        if (!q.present[static_cast<size_t>(i)]) continue;
        nlohmann::ordered_json v;
        v["id"] = i;
        v["label"] = q.names[static_cast<size_t>(i)];
        v["x"] = q.x[static_cast<size_t>(i)];
        v["y"] = q.y[static_cast<size_t>(i)];
        v["starred"] = static_cast<bool>(q.starred[static_cast<size_t>(i)]);
        v["projective_injective"] = static_cast<bool>(q.proj_inj_mark[static_cast<size_t>(i)]);
        v["on_seam"] = on_seam[static_cast<size_t>(i)];
        verts.push_back(std::move(v));
    }
    doc["vertices"] = std::move(verts);
    nlohmann::ordered_json arrows = nlohmann::ordered_json::array();
    for (size_t k = 0; k < q.arrows.size(); ++k) {
        nlohmann::ordered_json a;
        a["src"] = q.arrows[k].first;
        a["tgt"] = q.arrows[k].second;
        a["seam"] = static_cast<bool>(q.seam_arrow[k]);
        arrows.push_back(std::move(a));
    }
    doc["arrows"] = std::move(arrows);
    nlohmann::ordered_json tr = nlohmann::ordered_json::array();
    for (int i = 0; i < q.n_labels; ++i)
        tr.push_back(q.present[static_cast<size_t>(i)] && q.translation[static_cast<size_t>(i)] >= 0
                         ? nlohmann::ordered_json(q.translation[static_cast<size_t>(i)])
                         : nlohmann::ordered_json(nullptr));
    doc["translation"] = std::move(tr);
    return doc.dump(1) + "\n";
}

void emit_tilting_list(std::ostream& os, const ClusterCategory& cc,
                       const std::vector<std::vector<int>>& tiltings) {
    os << "{\n \"schema_version\": " << kSchemaVersion << ",\n \"tool_version\": \"" << kToolVersion
       << "\",\n \"kind\": \"tilting-objects\",\n \"type\": \""
       << family_char(cc.quiver().type().family) << "\",\n \"rank\": " << cc.quiver().type().rank
       << ",\n \"orientation\": \"" << cc.quiver().orientation_string() << "\",\n \"count\": "
       << tiltings.size() << ",\n \"objects\": [";
    for (size_t t = 0; t < tiltings.size(); ++t) {
        os << (t ? ",\n  [" : "\n  [");
        for (size_t k = 0; k < tiltings[t].size(); ++k) {
            if (k) os << ", ";
            os << '"' << cc.label(tiltings[t][k]).str() << '"';
        }
        os << "]";
    }
    os << "\n ]\n}\n";
}

} // namespace ctl
