#pragma once

// Structured command reports: a stable key-ordered text rendering plus a JSON
// rendering with the same order. Byte-stable across runs so golden tests can
// compare exact output. Each report carries the command echo, an input
// digest, the structured result, and the list of verified claims backing the
// asserted facts.

#include <json.hpp>

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace logsurf {

inline std::string fnv1a_digest(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

struct Report {
    std::string command;
    std::string input;
    std::string digest;
    // Ordered key/value result lines; nesting via "section.key" keys.
    std::vector<std::pair<std::string, std::string>> fields;
    std::vector<std::string> claims; // verified facts, one line each
    int exit_code = 0;

    void field(const std::string& key, const std::string& value) { fields.emplace_back(key, value); }
    void claim(const std::string& text) { claims.push_back(text); }

    std::string render_text() const {
        std::ostringstream os;
        os << "command: " << command << "\n";
        if (!input.empty()) {
            os << "input: " << input << "\n";
            os << "digest: " << digest << "\n";
        }
        for (const auto& [k, v] : fields) os << k << ": " << v << "\n";
        for (const auto& c : claims) os << "claim: " << c << "\n";
        os << "exit: " << exit_code << "\n";
        return os.str();
    }

    std::string render_json() const {
        nlohmann::ordered_json j;
        j["command"] = command;
        if (!input.empty()) {
            j["input"] = input;
            j["digest"] = digest;
        }
        nlohmann::ordered_json result = nlohmann::ordered_json::object();
        for (const auto& [k, v] : fields) {
            if (result.contains(k)) { // repeated keys become arrays
                if (!result[k].is_array()) {
                    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
                    arr.push_back(result[k]);
                    result[k] = arr;
                }
                result[k].push_back(v);
            } else {
                result[k] = v;
            }
        }
        j["result"] = result;
        j["claims"] = claims;
        j["exit"] = exit_code;
        return j.dump(2) + "\n";
    }
};

} // namespace logsurf
