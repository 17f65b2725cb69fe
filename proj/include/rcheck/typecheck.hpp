#pragma once

#include "rcheck/ast.hpp"

#include <functional>

namespace rcheck {

/// A model whose expressions are resolved (Name nodes replaced by Var/Const)
/// and typed. Relabels cover every common variable, in declaration order.
struct TypedModel {
    SystemModel model;
    std::vector<Diagnostic> warnings;
};

TypedModel typecheck(SystemModel model);

/// Name lookup hook: return the resolved node for a Name, or nullptr to fall
/// back to channel and enum constants.
using NameLookup = std::function<ExprPtr(const Expr& name)>;

/// Resolves and type-checks `e`. Unknown names raise `unknownCode`.
ExprPtr resolve_expr(const ExprPtr& e, const SystemModel& model, const NameLookup& lookup,
                     ErrorCode unknownCode = ErrorCode::UnknownName);

/// Resolves `e` and requires a boolean result.
ExprPtr resolve_bool(const ExprPtr& e, const SystemModel& model, const NameLookup& lookup,
                     ErrorCode unknownCode = ErrorCode::UnknownName);

/// Whether a value of type `from` may be stored in / compared with `to`.
bool compatible(const Type& to, const Type& from);

} // namespace rcheck
