#pragma once

#include <cstddef>
#include <string>

#include "fraisse/json.hpp"

namespace fraisse {

enum class status { holds, fails, unknown_within_bound };

inline std::string status_name(status s) {
    switch (s) {
        case status::holds: return "Holds";
        case status::fails: return "Fails";
        default: return "UnknownWithinBound";
    }
}

// Three-valued outcome of a bounded check. `complete` records whether the
// scan was decisive (finite category exhausted or an oracle certificate);
// otherwise the result is only claimed up to `bound`. `detail` carries the
// replayable certificate or the concrete counterexample.
struct verdict {
    status result = status::unknown_within_bound;
    bool complete = false;
    std::size_t bound = 0;
    json detail = json::object();

    bool holds() const { return result == status::holds; }
    bool fails() const { return result == status::fails; }

    json to_json() const {
        return json{{"status", status_name(result)},
                    {"complete", complete},
                    {"bound", bound},
                    {"detail", detail}};
    }
};

inline verdict make_verdict(status s, bool complete, std::size_t bound, json detail = json::object()) {
    return verdict{s, complete, bound, std::move(detail)};
}

// Process exit code convention shared by every CLI subcommand.
inline int exit_code(status s) {
    switch (s) {
        case status::holds: return 0;
        case status::fails: return 1;
        default: return 2;
    }
}

} // namespace fraisse
