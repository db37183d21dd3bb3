#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace puncture {

/// Outcome of a verification routine: a verdict plus a JSON detail
/// payload consumed by the CLI.  All numbers in `detail` are exact
/// integers or rationals rendered as "p/q" strings.
struct Report {
    std::string name;
    bool pass = true;
    nlohmann::json detail = nlohmann::json::object();
    std::vector<std::string> failures;

    void fail(const std::string& msg) {
        pass = false;
        failures.push_back(msg);
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["name"] = name;
        j["pass"] = pass;
        j["detail"] = detail;
        j["failures"] = failures;
        return j;
    }
};

} // namespace puncture
