#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ait/error.hpp"

namespace ait {

/// Name of the quote operator atom, the one atom allowed to contain `'`.
inline constexpr std::string_view quote_atom_name = "'";

/// Characters allowed in atom names: printable ASCII except `(`, `)`, `'`
/// and space.  Case-sensitive.  Digits carry no numeric meaning.
constexpr bool is_atom_char(char c) noexcept {
    return c > 0x20 && c < 0x7f && c != '(' && c != ')' && c != '\'';
}

constexpr bool is_whitespace(char c) noexcept {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}

/// A symbolic expression: an atom or a (possibly empty) list.
class SExpr {
public:
    using List = std::vector<SExpr>;

    SExpr() : node_(List{}) {}

    static SExpr atom(std::string name) { return SExpr(std::move(name)); }
    static SExpr list(List items = {}) { return SExpr(std::move(items)); }
    static SExpr nil() { return SExpr(); }

    bool is_atom() const noexcept { return std::holds_alternative<std::string>(node_); }
    bool is_list() const noexcept { return !is_atom(); }
    bool is_nil() const noexcept { return is_list() && items().empty(); }
    bool is_atom(std::string_view name) const noexcept { return is_atom() && this->name() == name; }

    const std::string& name() const { return std::get<std::string>(node_); }
    const List& items() const { return std::get<List>(node_); }
    List& items() { return std::get<List>(node_); }

    friend bool operator==(const SExpr&, const SExpr&) = default;

private:
    explicit SExpr(std::string name) : node_(std::move(name)) {}
    explicit SExpr(List items) : node_(std::move(items)) {}

    std::variant<std::string, List> node_;
};

enum class TokenKind { open, close, quote_mark, atom };

struct Token {
    TokenKind kind;
    std::string text;        // lexeme
    std::size_t position;    // byte offset in the input

    friend bool operator==(const Token&, const Token&) = default;
};

/// Raised for text that is not a sequence of well-formed S-expressions.
/// kind() is one of IllegalCharacter, UnbalancedParens, DanglingQuote.
class ParseError : public error {
public:
    ParseError(std::string kind, std::size_t position);
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

std::vector<Token> tokenize(std::string_view text);

/// Every top-level expression, in order.
///
/// A quote mark directly followed (no whitespace) by the start of an
/// expression is sugar: `'x` reads as `(' x)`.  A quote mark followed by
/// whitespace or `)` is the quote atom itself, which is how the canonical
/// form `(' x)` reads back.  A quote mark at end of input is dangling.
std::vector<SExpr> parse(std::string_view text);

/// Exactly one expression, else error("ExpectedOneExpression").
SExpr parse_one(std::string_view text);

/// Single spaces between siblings, no sugar, no trailing whitespace.
std::string print_canonical(const SExpr& x);
/// Top-level sequence joined by single spaces.
std::string print_canonical(std::span<const SExpr> xs);

/// Parses `text` as a machine prefix: at least one expression, and `text`
/// must already be in canonical form.  nullopt otherwise.
std::optional<std::vector<SExpr>> parse_canonical_program(std::string_view text);

} // namespace ait
