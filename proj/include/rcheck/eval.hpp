#pragma once

#include "rcheck/ast.hpp"

#include <functional>
#include <optional>
#include <span>

namespace rcheck {

/// Bindings for evaluation. An empty span means "not bound"; touching an
/// unbound symbol raises UnboundSymbol.
struct Env {
    std::span<const Value> locals;
    std::span<const Value> primedLocals;
    std::span<const Value> data;
    std::span<const Value> common;
    std::span<const Value> global;
    std::span<const Value> primedGlobal;
    std::optional<Value> channel;
    std::function<bool(int instance, int command)> label;
};

Value eval(const ExprPtr& e, const Env& env);
bool eval_bool(const ExprPtr& e, const Env& env);

/// Evaluates every subterm whose symbols are bound in `env` and folds
/// boolean constants; unbound symbols stay symbolic.
ExprPtr partial_eval(const ExprPtr& e, const Env& env);

/// Bottom-up rewrite: `f` may return a replacement for a node (its children
/// are not visited further) or nullptr to keep descending.
ExprPtr rewrite(const ExprPtr& e, const std::function<ExprPtr(const ExprPtr&)>& f);

/// Replaces every common-variable reference by the relabel expression of
/// that variable (indexed by common-variable id).
ExprPtr substitute_common(const ExprPtr& pred, const std::vector<ExprPtr>& relabel);

/// Whether any Var of the given scope occurs in `e`.
bool mentions(const ExprPtr& e, VarScope scope);

/// Apply the comparison/arithmetic operator of a binary node to two values.
Value apply_binary(ExprKind kind, const Value& a, const Value& b);

} // namespace rcheck
