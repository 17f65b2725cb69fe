#pragma once

#include "rcheck/system.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rcheck {

enum class LtlOp : std::uint8_t { True, False, Atom, Not, And, Or, Implies, Next, Finally, Globally, Until, Release };

struct LtlNode;
using LtlPtr = std::shared_ptr<const LtlNode>;

struct LtlNode {
    LtlOp op = LtlOp::True;
    int atom = -1;  // Atom: index into LtlFormula::atoms
    LtlPtr lhs;     // unary operand / binary lhs
    LtlPtr rhs;
};

LtlPtr ltl_const(bool b);
LtlPtr ltl_atom(int index);
LtlPtr ltl_unary(LtlOp op, LtlPtr a);
LtlPtr ltl_binary(LtlOp op, LtlPtr a, LtlPtr b);

/// An atomic proposition: a label (`inst-label`) or a boolean state
/// expression over `inst-var` names. Resolved atoms carry a boolean Expr
/// whose Label nodes reference (instance, command).
struct LtlAtom {
    std::string text;
    ExprPtr expr;             // null for abstract atoms
    std::optional<LabelRef> label;  // set when the atom is a bare label
};

struct LtlFormula {
    LtlPtr root;
    std::vector<LtlAtom> atoms;  // at most 64
};

/// Parses and resolves a formula against a compiled system. Operators:
/// `! & && | || -> X F G U` and parentheses. A bare unknown name raises
/// UnknownLabel, an unknown name inside a comparison UnknownVariable.
LtlFormula parse_ltl(std::string_view text, const CompiledSystem& sys);

/// Same grammar; every identifier is an opaque atom (for engine tests).
LtlFormula parse_abstract_ltl(std::string_view text);

std::string print_ltl(const LtlFormula& f);
std::string print_ltl(const LtlPtr& node, const std::vector<LtlAtom>& atoms);

/// One line of a property file: `name : formula ; [expect holds|fails]`.
struct PropertySpec {
    std::string name;
    std::string formula;
    std::optional<bool> expectHolds;
    SourcePos pos;
};

std::vector<PropertySpec> parse_property_file(std::string_view text);

// Lasso words over atom bitmasks, for the engine oracle.
struct LassoWord {
    std::vector<std::uint64_t> prefix;
    std::vector<std::uint64_t> loop;  // non-empty
};

/// Direct recursive LTL semantics on an ultimately periodic word.
bool eval_ltl(const LtlPtr& f, const LassoWord& w, std::size_t pos = 0);

} // namespace rcheck
