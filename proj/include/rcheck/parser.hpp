#pragma once

#include "rcheck/ast.hpp"
#include "rcheck/lexer.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace rcheck {

/// Cursor over a token stream with a recursion guard, shared by the model,
/// property and constraint parsers.
class TokenCursor {
public:
    explicit TokenCursor(std::vector<Token> tokens);

    const Token& peek(std::size_t k = 0) const;
    const Token& next();
    bool at(TokenKind kind) const { return peek().kind == kind; }
    bool accept(TokenKind kind);
    const Token& expect(TokenKind kind, std::string_view what = {});
    [[noreturn]] void fail(std::vector<std::string> expected) const;

    void enter();
    void leave() { --depth_; }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    int depth_ = 0;
};

struct ExprOptions {
    bool noGreater = false;  // inside `< ... >` command guards
    bool allowNext = false;  // simulator constraints
    bool comparisonOnly = false;  // stop above `a op b` (no boolean connectives); LTL atoms
};

ExprPtr parse_expr(TokenCursor& cur, ExprOptions options = {});

/// Parses a complete `.rcp` model. Resolves agent types of instances and
/// assigns synthetic labels; expression names stay unresolved until
/// type checking.
SystemModel parse_model(std::string_view source);

/// Parses a standalone expression in qualified mode (`inst-var`, `next(...)`).
ExprPtr parse_standalone_expr(std::string_view text, ExprOptions options = {});

/// Source-syntax rendering. Resolved enum constants print by name when a
/// model is supplied.
std::string print_expr(const ExprPtr& e, const SystemModel* model = nullptr);
std::string print_process(const ProcessPtr& p, const AgentDef& agent);
std::string print_command(const Command& c, bool withLabel = true);
std::string print_model(const SystemModel& model);

} // namespace rcheck
