#include <doctest.h>

#include "puncture/appendix.hpp"
#include "puncture/report.hpp"

using namespace puncture;

TEST_CASE("report JSON round-trips byte-identically") {
    Field q = Field::rationals();
    Report rep = verify_exact(build_resolution(6, 9, q), DegreeWindow(0, 8), 2);
    std::string rendered = rep.to_json().dump(2);
    std::string again = nlohmann::json::parse(rendered).dump(2);
    CHECK(rendered == again);
}

TEST_CASE("reports carry exact numbers only") {
    Field q = Field::rationals();
    Report rep = verify_exact(build_resolution(4, 6, q), DegreeWindow(0, 6), 2);
    // every numeric leaf is an integer; rationals are rendered "p/q"
    std::function<void(const nlohmann::json&)> walk = [&](const nlohmann::json& j) {
        if (j.is_number()) CHECK(j.is_number_integer());
        if (j.is_object())
            for (const auto& [k, v] : j.items()) walk(v);
        if (j.is_array())
            for (const auto& v : j) walk(v);
    };
    walk(rep.to_json());
}
