#include "rcheck/corpus.hpp"
#include "rcheck/lint.hpp"

#include <gtest/gtest.h>

using namespace rcheck;

namespace {

std::vector<const Diagnostic*> warnings(const LintReport& r) {
    std::vector<const Diagnostic*> out;
    for (const auto& d : r.diagnostics) {
        if (d.severity == Severity::Warning) out.push_back(&d);
    }
    return out;
}

} // namespace

TEST(Lint, CorpusHasExactlyTwoWarnings) {
    auto r = lint(compile_source(load_fixture("resource-allocation").model));
    auto w = warnings(r);
    ASSERT_EQ(w.size(), 2u);
    EXPECT_EQ(r.warningCount(), 2u);
    EXPECT_EQ(w[0]->code, "missing-relabel");
    EXPECT_EQ(w[0]->subject, "Machine");
    EXPECT_EQ(w[1]->code, "not-input-enabled");
    EXPECT_EQ(w[1]->subject, "Client");
    EXPECT_FALSE(w[1]->details.empty());
    EXPECT_FALSE(r.truncated);
}

TEST(Lint, WarningsPrecedeNotes) {
    auto r = lint(compile_source(load_fixture("resource-allocation").model));
    bool seenNote = false;
    for (const auto& d : r.diagnostics) {
        if (d.severity != Severity::Warning) seenNote = true;
        else EXPECT_FALSE(seenNote) << format(d);
    }
}

TEST(Lint, InputEnabledEchoIsClean) {
    auto sys = compile_source(R"(
enums:
channels: e
message-structure:
communication-variables:

agent Speaker
  local: n : int[0..3]
  init: n == 0
  relabel:
  receive-guard: ch == e
  repeat: ( say: <TRUE> *! (TRUE)()[n := n + 1] )

agent Echo
  local: heard : int[0..3]
  init: heard == 0
  relabel:
  receive-guard: ch == e
  repeat: ( hear: <TRUE> *? [heard := heard + 1] )

system = Speaker(s, TRUE) || Echo(x, TRUE)
)");
    auto r = lint(sys);
    EXPECT_EQ(r.warningCount(), 0u);
    for (const auto& d : r.diagnostics) ADD_FAILURE() << format(d);
}

TEST(Lint, ToyFixturesHaveNoWarnings) {
    for (const auto& name : {"ping", "broadcast-exclude"}) {
        auto r = lint(compile_source(load_fixture(name).model));
        EXPECT_EQ(r.warningCount(), 0u) << name;
    }
}

TEST(Lint, DeafListenerBlocksBroadcast) {
    auto sys = compile_source(R"(
enums:
channels:
message-structure:
communication-variables:

agent Speaker
  local: n : int[0..1]
  init: n == 0
  relabel:
  receive-guard: FALSE
  repeat: ( say: <TRUE> *! (TRUE)()[n := 1] )

agent Deaf
  local: ok : bool
  init: !ok
  relabel:
  receive-guard: ch == *
  repeat: ( hear: <ok> *? [] )

system = Speaker(s, TRUE) || Deaf(d, TRUE)
)");
    auto r = lint(sys);
    auto w = warnings(r);
    ASSERT_EQ(w.size(), 1u);
    EXPECT_EQ(w[0]->code, "not-input-enabled");
    EXPECT_EQ(w[0]->subject, "Deaf");
}
