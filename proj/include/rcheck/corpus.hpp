#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace rcheck {

/// A bundled model with its property file (empty when none ships).
struct Fixture {
    std::string name;
    std::string model;
    std::string properties;
};

Fixture load_fixture(std::string_view name);
std::vector<std::string> fixture_names();

} // namespace rcheck
