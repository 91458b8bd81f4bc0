#pragma once

#include <optional>
#include <string>

#include "parambar/persistence.hpp"

namespace parambar {

// Run-index convention: percent variance / 10, percent complete / 10, step count,
// and optionally 100x the cluster-filter radius.
struct RunLabel {
    int variance_index = 0;
    int completeness_index = 0;
    int steps = 0;
    std::optional<int> cluster_value;

    std::string to_string() const;
    std::string file_tag() const;
};

std::string render_text(const PersistenceDiagram& d, const RunLabel& label);
std::string render_svg(const PersistenceDiagram& d, const RunLabel& label);

}  // namespace parambar
