#include "rcheck/lexer.hpp"

#include <array>
#include <cctype>
#include <utility>

namespace rcheck {

const char* to_string(TokenKind kind) {
    switch (kind) {
    case TokenKind::End: return "end of input";
    case TokenKind::Ident: return "identifier";
    case TokenKind::QualifiedIdent: return "qualified name";
    case TokenKind::Int: return "integer";
    case TokenKind::KwAgent: return "'agent'";
    case TokenKind::KwLocal: return "'local'";
    case TokenKind::KwInit: return "'init'";
    case TokenKind::KwRelabel: return "'relabel'";
    case TokenKind::KwReceiveGuard: return "'receive-guard'";
    case TokenKind::KwRepeat: return "'repeat'";
    case TokenKind::KwRep: return "'rep'";
    case TokenKind::KwSystem: return "'system'";
    case TokenKind::KwEnums: return "'enums'";
    case TokenKind::KwChannels: return "'channels'";
    case TokenKind::KwMessageStructure: return "'message-structure'";
    case TokenKind::KwCommunicationVariables: return "'communication-variables'";
    case TokenKind::KwTrue: return "'TRUE'";
    case TokenKind::KwFalse: return "'FALSE'";
    case TokenKind::KwBool: return "'bool'";
    case TokenKind::KwInt: return "'int'";
    case TokenKind::KwChannel: return "'channel'";
    case TokenKind::KwEmpty: return "'empty'";
    case TokenKind::KwUndef: return "'undef'";
    case TokenKind::KwNext: return "'next'";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::LBracket: return "'['";
    case TokenKind::RBracket: return "']'";
    case TokenKind::LBrace: return "'{'";
    case TokenKind::RBrace: return "'}'";
    case TokenKind::LAngle: return "'<'";
    case TokenKind::RAngle: return "'>'";
    case TokenKind::LessEq: return "'<='";
    case TokenKind::GreaterEq: return "'>='";
    case TokenKind::EqEq: return "'=='";
    case TokenKind::NotEq: return "'!='";
    case TokenKind::Assign: return "':='";
    case TokenKind::LeftArrow: return "'<-'";
    case TokenKind::Arrow: return "'->'";
    case TokenKind::AndAnd: return "'&&'";
    case TokenKind::OrOr: return "'||'";
    case TokenKind::Amp: return "'&'";
    case TokenKind::Pipe: return "'|'";
    case TokenKind::Bang: return "'!'";
    case TokenKind::Question: return "'?'";
    case TokenKind::Star: return "'*'";
    case TokenKind::Plus: return "'+'";
    case TokenKind::Minus: return "'-'";
    case TokenKind::Colon: return "':'";
    case TokenKind::Semicolon: return "';'";
    case TokenKind::Comma: return "','";
    case TokenKind::Equals: return "'='";
    case TokenKind::DotDot: return "'..'";
    }
    return "token";
}

namespace {

constexpr std::array<std::pair<std::string_view, TokenKind>, 19> kKeywords{{
    {"agent", TokenKind::KwAgent},
    {"local", TokenKind::KwLocal},
    {"init", TokenKind::KwInit},
    {"relabel", TokenKind::KwRelabel},
    {"repeat", TokenKind::KwRepeat},
    {"rep", TokenKind::KwRep},
    {"system", TokenKind::KwSystem},
    {"enums", TokenKind::KwEnums},
    {"channels", TokenKind::KwChannels},
    {"TRUE", TokenKind::KwTrue},
    {"FALSE", TokenKind::KwFalse},
    {"bool", TokenKind::KwBool},
    {"int", TokenKind::KwInt},
    {"channel", TokenKind::KwChannel},
    {"empty", TokenKind::KwEmpty},
    {"undef", TokenKind::KwUndef},
    {"next", TokenKind::KwNext},
    {"receive-guard", TokenKind::KwReceiveGuard},
    {"message-structure", TokenKind::KwMessageStructure},
}};

constexpr std::string_view kCommunicationVariables = "communication-variables";

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
public:
    Lexer(std::string_view src, LexOptions opts) : src_(src), opts_(opts) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_blank();
            Token t;
            t.pos = {line_, col_};
            if (at_end()) {
                t.kind = TokenKind::End;
                out.push_back(std::move(t));
                return out;
            }
            char c = peek();
            if (ident_start(c)) {
                lex_word(t);
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                lex_number(t);
            } else {
                lex_punct(t);
            }
            out.push_back(std::move(t));
        }
    }

private:
    bool at_end() const { return i_ >= src_.size(); }
    char peek(std::size_t k = 0) const { return i_ + k < src_.size() ? src_[i_ + k] : '\0'; }

    void advance(std::size_t n = 1) {
        for (std::size_t k = 0; k < n && i_ < src_.size(); ++k) {
            if (src_[i_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++i_;
        }
    }

    void skip_blank() {
        while (!at_end()) {
            char c = peek();
            if (c == '#') {
                while (!at_end() && peek() != '\n') advance();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v') {
                advance();
            } else {
                break;
            }
        }
    }

    std::size_t word_end(std::size_t from) const {
        std::size_t j = from;
        while (j < src_.size() && ident_char(src_[j])) ++j;
        return j;
    }

    void lex_word(Token& t) {
        std::size_t end = word_end(i_);
        // Hyphenated section keywords are matched as a whole.
        if (end < src_.size() && src_[end] == '-' && end + 1 < src_.size() && ident_start(src_[end + 1])) {
            std::size_t end2 = word_end(end + 1);
            std::string_view joined = src_.substr(i_, end2 - i_);
            for (const auto& [kw, kind] : kKeywords) {
                if (kw == joined) {
                    t.kind = kind;
                    t.text = std::string(joined);
                    advance(end2 - i_);
                    return;
                }
            }
            if (joined == kCommunicationVariables) {
                t.kind = TokenKind::KwCommunicationVariables;
                t.text = std::string(joined);
                advance(end2 - i_);
                return;
            }
            if (opts_.qualifiedNames) {
                t.kind = TokenKind::QualifiedIdent;
                t.text = std::string(joined);
                advance(end2 - i_);
                return;
            }
        }
        std::string_view word = src_.substr(i_, end - i_);
        t.kind = TokenKind::Ident;
        for (const auto& [kw, kind] : kKeywords) {
            if (kw == word) {
                t.kind = kind;
                break;
            }
        }
        t.text = std::string(word);
        advance(end - i_);
    }

    void lex_number(Token& t) {
        std::size_t j = i_;
        while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
        if (j - i_ > 9) {
            throw Error(ErrorCode::SyntaxError, "integer literal too large", SourcePos{line_, col_});
        }
        t.kind = TokenKind::Int;
        t.text = std::string(src_.substr(i_, j - i_));
        t.number = std::stoll(t.text);
        advance(j - i_);
    }

    void lex_punct(Token& t) {
        char c = peek();
        char n = peek(1);
        auto two = [&](TokenKind k) {
            t.kind = k;
            t.text = std::string(src_.substr(i_, 2));
            advance(2);
        };
        auto one = [&](TokenKind k) {
            t.kind = k;
            t.text = std::string(1, c);
            advance(1);
        };
        switch (c) {
        case '(': return one(TokenKind::LParen);
        case ')': return one(TokenKind::RParen);
        case '[': return one(TokenKind::LBracket);
        case ']': return one(TokenKind::RBracket);
        case '{': return one(TokenKind::LBrace);
        case '}': return one(TokenKind::RBrace);
        case '<':
            if (n == '=') return two(TokenKind::LessEq);
            if (n == '-') return two(TokenKind::LeftArrow);
            return one(TokenKind::LAngle);
        case '>':
            if (n == '=') return two(TokenKind::GreaterEq);
            return one(TokenKind::RAngle);
        case '=':
            if (n == '=') return two(TokenKind::EqEq);
            return one(TokenKind::Equals);
        case '!':
            if (n == '=') return two(TokenKind::NotEq);
            return one(TokenKind::Bang);
        case ':':
            if (n == '=') return two(TokenKind::Assign);
            return one(TokenKind::Colon);
        case '-':
            if (n == '>') return two(TokenKind::Arrow);
            return one(TokenKind::Minus);
        case '&':
            if (n == '&') return two(TokenKind::AndAnd);
            return one(TokenKind::Amp);
        case '|':
            if (n == '|') return two(TokenKind::OrOr);
            return one(TokenKind::Pipe);
        case '.':
            if (n == '.') return two(TokenKind::DotDot);
            break;
        case '?': return one(TokenKind::Question);
        case '*': return one(TokenKind::Star);
        case '+': return one(TokenKind::Plus);
        case ';': return one(TokenKind::Semicolon);
        case ',': return one(TokenKind::Comma);
        default: break;
        }
        std::string shown = std::isprint(static_cast<unsigned char>(c))
                                ? std::string("'") + c + "'"
                                : "byte 0x" + hex(static_cast<unsigned char>(c));
        throw Error(ErrorCode::IllegalCharacter, "illegal character " + shown, SourcePos{line_, col_});
    }

    static std::string hex(unsigned char b) {
        const char* digits = "0123456789abcdef";
        return {digits[b >> 4], digits[b & 15]};
    }

    std::string_view src_;
    LexOptions opts_;
    std::size_t i_ = 0;
    int line_ = 1;
    int col_ = 1;
};

} // namespace

std::vector<Token> tokenize(std::string_view source, LexOptions options) {
    return Lexer(source, options).run();
}

} // namespace rcheck
