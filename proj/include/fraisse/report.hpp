#pragma once

#include <ctime>
#include <fstream>
#include <sstream>
#include <string>

#include "fraisse/error.hpp"
#include "fraisse/hash.hpp"
#include "fraisse/json.hpp"

namespace fraisse {

inline const char* tool_version() { return "0.1.0"; }

inline std::string utc_timestamp() {
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::tm tm{};
#if defined(_WIN32)
    gmtime_s(&tm, &now);
#else
    gmtime_r(&now, &tm);
#endif
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Standard report envelope.  The hash is computed before the timestamp is
// added, so rerunning the same command yields the same report_hash.
inline json make_report(const std::string& command, json config, json inputs, json result) {
    json rep{{"tool", json{{"name", "fraisse"}, {"version", tool_version()}}},
             {"command", command},
             {"config", std::move(config)},
             {"inputs", std::move(inputs)},
             {"result", std::move(result)}};
    rep["report_hash"] = content_hash(rep.dump());
    rep["generated_at"] = utc_timestamp();
    return rep;
}

// Recompute a report's hash from its content, ignoring the volatile fields.
inline std::string report_hash(json rep) {
    rep.erase("generated_at");
    rep.erase("report_hash");
    return content_hash(rep.dump());
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), "UnknownInstance", "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    require(static_cast<bool>(out), "UnknownInstance", "cannot write " + path);
    out << text;
}

// Input provenance record: path plus content hash.
inline json input_record(const std::string& path, const std::string& bytes) {
    return json{{"path", path}, {"hash", content_hash(bytes)}};
}

}  // namespace fraisse
