#include "rcheck/corpus.hpp"

#include "rcheck/diagnostics.hpp"

#include <map>

namespace rcheck {

namespace {

const std::map<std::string, std::string, std::less<>>& files() {
    static const std::map<std::string, std::string, std::less<>> table{
#include "corpus_data.inc"
    };
    return table;
}

} // namespace

Fixture load_fixture(std::string_view name) {
    const auto& t = files();
    auto m = t.find(std::string(name) + ".rcp");
    if (m == t.end()) throw Error(ErrorCode::UnknownFixture, "no bundled fixture named '" + std::string(name) + "'");
    Fixture f{std::string(name), m->second, {}};
    if (auto p = t.find(std::string(name) + ".ltl"); p != t.end()) f.properties = p->second;
    return f;
}

std::vector<std::string> fixture_names() {
    std::vector<std::string> out;
    for (const auto& [file, _] : files()) {
        if (file.size() > 4 && file.compare(file.size() - 4, 4, ".rcp") == 0) out.push_back(file.substr(0, file.size() - 4));
    }
    return out;
}

} // namespace rcheck
