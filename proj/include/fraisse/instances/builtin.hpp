#pragma once

#include <memory>
#include <string>

#include "fraisse/instances/graphs.hpp"
#include "fraisse/instances/linorders.hpp"
#include "fraisse/instances/surj.hpp"
#include "fraisse/table_category.hpp"

namespace fraisse {

// Resolve a category specifier: "graphs", "linord", "surj", or
// "file:<path>" for a table category document.
inline std::shared_ptr<const category> resolve_category(const std::string& spec) {
    if (spec == "graphs") return std::make_shared<graph_category>();
    if (spec == "linord") return std::make_shared<linorder_category>();
    if (spec == "surj") return std::make_shared<surj_category>();
    if (spec.rfind("file:", 0) == 0) return table_category::load_file(spec.substr(5));
    fail("UnknownInstance", "unknown category: " + spec +
                                " (expected graphs, linord, surj, or file:<path>)");
}

} // namespace fraisse
