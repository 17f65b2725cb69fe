#pragma once

#include "rcheck/diagnostics.hpp"
#include "rcheck/value.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace rcheck {

// ---------------------------------------------------------------------------
// Types

enum class TypeKind : std::uint8_t { Unknown, Bool, Int, Enum, Chan, Undef };

struct Type {
    TypeKind kind = TypeKind::Unknown;
    int lo = 0;
    int hi = 0;
    std::string enumName;  // Enum only, as written in the source
    int enumId = -1;       // Enum only, resolved by the type checker

    static Type boolean() { return {TypeKind::Bool, 0, 0, {}, -1}; }
    static Type integer(int lo, int hi) { return {TypeKind::Int, lo, hi, {}, -1}; }
    static Type channel() { return {TypeKind::Chan, 0, 0, {}, -1}; }
    static Type enumeration(std::string name, int id = -1) {
        return {TypeKind::Enum, 0, 0, std::move(name), id};
    }
    static Type undefined() { return {TypeKind::Undef, 0, 0, {}, -1}; }

    friend bool operator==(const Type&, const Type&) = default;
};

// ---------------------------------------------------------------------------
// Expressions

enum class ExprKind : std::uint8_t {
    Const,    // literal or resolved constant
    Name,     // unresolved identifier (possibly instance-qualified / next())
    Var,      // resolved variable reference
    Label,    // command-label atom (properties and simulator constraints)
    Not,
    Neg,
    And,
    Or,
    Implies,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    Add,
    Sub,
    Clamp,    // saturation of an int expression to [lo, hi], inserted by the type checker
};

enum class VarScope : std::uint8_t {
    Local,    // agent-local variable (index into locals; index == locals.size() is `st`)
    Data,     // message data variable
    Common,   // communication variable
    Channel,  // the channel meta-variable `ch`
    Global,   // flattened system-state slot (instance-qualified variables)
};

struct VarRef {
    VarScope scope = VarScope::Local;
    int index = -1;
    bool primed = false;

    friend bool operator==(const VarRef&, const VarRef&) = default;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    ExprKind kind = ExprKind::Const;
    SourcePos pos;
    Value value;            // Const
    std::string name;       // Name / Var / Label: source spelling (unqualified part)
    std::string qualifier;  // Name: instance part of `inst-name`, empty otherwise
    bool next = false;      // Name: written as next(...)
    VarRef var;             // Var
    int instance = -1;      // Label
    int command = -1;       // Label
    int lo = 0, hi = 0;     // Clamp bounds
    std::vector<ExprPtr> args;
    Type type;              // filled by the type checker
};

ExprPtr make_const(Value v, SourcePos pos = {}, Type type = {});
ExprPtr make_bool(bool b);
ExprPtr make_name(std::string name, SourcePos pos = {}, std::string qualifier = {}, bool next = false);
ExprPtr make_var(VarRef ref, std::string name, Type type, SourcePos pos = {});
ExprPtr make_label(int instance, int command, std::string name, SourcePos pos = {});
ExprPtr make_unary(ExprKind kind, ExprPtr operand, SourcePos pos = {});
ExprPtr make_binary(ExprKind kind, ExprPtr lhs, ExprPtr rhs, SourcePos pos = {});
ExprPtr make_clamp(ExprPtr operand, int lo, int hi);
/// Conjunction of all parts, skipping literal TRUE; TRUE when empty.
ExprPtr make_and(const std::vector<ExprPtr>& parts);
ExprPtr make_or(const std::vector<ExprPtr>& parts);

bool is_const_true(const ExprPtr& e);
bool is_const_false(const ExprPtr& e);

/// Structural equality ignoring source positions and resolved types.
bool same_structure(const ExprPtr& a, const ExprPtr& b);

// ---------------------------------------------------------------------------
// Processes and commands

enum class CommandKind : std::uint8_t { Send, Receive };

struct Assignment {
    std::string target;
    int index = -1;  // resolved slot (local or data variable)
    ExprPtr value;
    SourcePos pos;
};

struct Command {
    std::string label;
    bool syntheticLabel = false;
    CommandKind kind = CommandKind::Send;
    ExprPtr pre;
    ExprPtr channel;              // `*` (star constant) or a channel-valued identifier
    ExprPtr senderPred;           // Send only
    std::vector<Assignment> data; // Send only
    std::vector<Assignment> update;
    SourcePos pos;
};

struct Process;
using ProcessPtr = std::shared_ptr<const Process>;

struct Process {
    enum class Kind : std::uint8_t { Seq, Choice, Rep, Cmd };
    Kind kind = Kind::Cmd;
    ProcessPtr left;   // Seq/Choice lhs, Rep body
    ProcessPtr right;  // Seq/Choice rhs
    int command = -1;  // Cmd: index into AgentDef::commands
    SourcePos pos;
};

// ---------------------------------------------------------------------------
// Declarations

struct VarDecl {
    std::string name;
    Type type;
    SourcePos pos;
};

struct EnumDecl {
    std::string name;
    std::vector<std::string> constants;
    SourcePos pos;
};

struct ChannelDecl {
    std::string name;
    SourcePos pos;
};

struct AgentDef {
    std::string name;
    std::vector<VarDecl> locals;
    ExprPtr init;
    std::vector<Assignment> relabel;  // target = common variable
    ExprPtr receiveGuard;
    ProcessPtr process;
    std::vector<Command> commands;    // source order; Process::Cmd leaves index this
    SourcePos pos;

    int findLocal(std::string_view n) const;
    int findCommand(std::string_view label) const;
};

struct Instance {
    std::string typeName;
    std::string id;
    ExprPtr extraInit;
    int agent = -1;  // resolved index into SystemModel::agents
    SourcePos pos;
};

struct SystemModel {
    std::vector<EnumDecl> enums;
    std::vector<ChannelDecl> channels;
    std::vector<VarDecl> dataVars;
    std::vector<VarDecl> commonVars;
    std::vector<AgentDef> agents;
    std::vector<Instance> instances;

    // Flattened enum constants, filled by the parser: constant id -> (name, enum id).
    std::vector<std::pair<std::string, int>> enumConstants;

    int findAgent(std::string_view n) const;
    int findInstance(std::string_view n) const;
    int findChannel(std::string_view n) const;
    int findDataVar(std::string_view n) const;
    int findCommonVar(std::string_view n) const;
    int findEnum(std::string_view n) const;
    int findEnumConstant(std::string_view n) const;
};

/// Structural equality of two parsed models (positions ignored).
bool same_structure(const SystemModel& a, const SystemModel& b);

// ---------------------------------------------------------------------------
// Value rendering and domains

std::string to_string(const Value& v, const SystemModel& model);
std::string to_string(const Type& t);

/// Finite domain of a type. Enum domains include `undef`; channel domains are
/// the declared channels plus `star` and `empty`. `withUndef` adds `undef`
/// where it is not already present (message data slots).
std::vector<Value> domain_of(const Type& t, const SystemModel& model, bool withUndef = false);
bool in_domain(const Value& v, const Type& t, const SystemModel& model, bool withUndef = false);

} // namespace rcheck
