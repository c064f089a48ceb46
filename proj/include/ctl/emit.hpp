#pragma once

#include <ostream>
#include <string>

#include "ctl/cluster.hpp"

namespace ctl {

/// DOT rendering of a (possibly vertex-deleted) translation quiver: one rank
/// per tau_c-slice, coordinates as pos attributes, stars on marked vertices,
/// seam arrows dashed and annotated. Byte-stable for fixed input.
std::string quiver_to_dot(const CQuiver& q, const std::string& title);

/// JSON rendering: vertices (with layout and marks), arrows (with seam
/// flags), the translation, and the seam-twist indicator.
std::string quiver_to_json(const CQuiver& q, const std::string& title);

/// Streaming JSON list of tilting objects: one sorted label array per line.
void emit_tilting_list(std::ostream& os, const ClusterCategory& cc,
                       const std::vector<std::vector<int>>& tiltings);

} // namespace ctl
