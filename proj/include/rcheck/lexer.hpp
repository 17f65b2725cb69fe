#pragma once

#include "rcheck/diagnostics.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rcheck {

enum class TokenKind : std::uint8_t {
    End,
    Ident,
    QualifiedIdent,  // `inst-name`, only produced in qualified mode
    Int,
    // keywords
    KwAgent,
    KwLocal,
    KwInit,
    KwRelabel,
    KwReceiveGuard,
    KwRepeat,
    KwRep,
    KwSystem,
    KwEnums,
    KwChannels,
    KwMessageStructure,
    KwCommunicationVariables,
    KwTrue,
    KwFalse,
    KwBool,
    KwInt,
    KwChannel,
    KwEmpty,
    KwUndef,
    KwNext,
    // punctuation
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    LAngle,    // <
    RAngle,    // >
    LessEq,    // <=
    GreaterEq, // >=
    EqEq,      // ==
    NotEq,     // !=
    Assign,    // :=
    LeftArrow, // <-
    Arrow,     // ->
    AndAnd,    // &&
    OrOr,      // ||
    Amp,       // &
    Pipe,      // |
    Bang,      // !
    Question,  // ?
    Star,      // *
    Plus,
    Minus,
    Colon,
    Semicolon,
    Comma,
    Equals,    // =
    DotDot,    // ..
};

const char* to_string(TokenKind kind);

struct Token {
    TokenKind kind = TokenKind::End;
    std::string text;
    SourcePos pos;
    std::int64_t number = 0;  // Int only
};

struct LexOptions {
    /// Lex `a-b` (no surrounding whitespace, both identifiers) as one
    /// QualifiedIdent token. Used for property and constraint text.
    bool qualifiedNames = false;
};

/// Splits source text into tokens. `#` starts a line comment. The returned
/// stream always ends with an End token.
std::vector<Token> tokenize(std::string_view source, LexOptions options = {});

} // namespace rcheck
