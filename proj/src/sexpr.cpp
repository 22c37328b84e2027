#include "ait/sexpr.hpp"

#include <string>

namespace ait {

ParseError::ParseError(std::string kind, std::size_t position)
    : error(kind, kind + " at offset " + std::to_string(position)), position_(position) {}

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (is_whitespace(c)) {
            ++i;
        } else if (c == '(') {
            out.push_back({TokenKind::open, "(", i++});
        } else if (c == ')') {
            out.push_back({TokenKind::close, ")", i++});
        } else if (c == '\'') {
            out.push_back({TokenKind::quote_mark, "'", i++});
        } else if (is_atom_char(c)) {
            std::size_t start = i;
            while (i < text.size() && is_atom_char(text[i])) ++i;
            out.push_back({TokenKind::atom, std::string(text.substr(start, i - start)), start});
        } else {
            throw ParseError("IllegalCharacter", i);
        }
    }
    return out;
}

std::vector<SExpr> parse(std::string_view text) {
    const auto tokens = tokenize(text);

    // Open lists and pending sugar quotes, innermost last.  A sugar quote
    // wraps the next completed expression.
    struct Pending {
        bool sugar_quote;
        std::size_t position;
        SExpr::List items;
    };
    std::vector<Pending> stack;
    std::vector<SExpr> top;

    auto complete = [&](SExpr e) {
        while (!stack.empty() && stack.back().sugar_quote) {
            stack.pop_back();
            e = SExpr::list({SExpr::atom(std::string(quote_atom_name)), std::move(e)});
        }
        if (stack.empty())
            top.push_back(std::move(e));
        else
            stack.back().items.push_back(std::move(e));
    };

    for (std::size_t k = 0; k < tokens.size(); ++k) {
        const Token& t = tokens[k];
        switch (t.kind) {
        case TokenKind::open:
            stack.push_back({false, t.position, {}});
            break;
        case TokenKind::close: {
            if (stack.empty()) throw ParseError("UnbalancedParens", t.position);
            SExpr::List items = std::move(stack.back().items);
            stack.pop_back();
            complete(SExpr::list(std::move(items)));
            break;
        }
        case TokenKind::quote_mark: {
            if (k + 1 == tokens.size()) throw ParseError("DanglingQuote", t.position);
            const Token& next = tokens[k + 1];
            if (next.position == t.position + 1 && next.kind != TokenKind::close)
                stack.push_back({true, t.position, {}});
            else
                complete(SExpr::atom(std::string(quote_atom_name)));
            break;
        }
        case TokenKind::atom:
            complete(SExpr::atom(t.text));
            break;
        }
    }
    if (!stack.empty()) {
        // Sugar quotes are only pushed when an expression start follows, so
        // the innermost unfinished item is always an open list.
        for (auto it = stack.rbegin(); it != stack.rend(); ++it)
            if (!it->sugar_quote) throw ParseError("UnbalancedParens", it->position);
        throw ParseError("DanglingQuote", stack.back().position);
    }
    return top;
}

SExpr parse_one(std::string_view text) {
    auto xs = parse(text);
    if (xs.size() != 1)
        throw error("ExpectedOneExpression",
                    "expected exactly one expression, found " + std::to_string(xs.size()));
    return std::move(xs.front());
}

namespace {

void print_into(const SExpr& x, std::string& out) {
    if (x.is_atom()) {
        out += x.name();
        return;
    }
    out.push_back('(');
    bool first = true;
    for (const auto& item : x.items()) {
        if (!first) out.push_back(' ');
        first = false;
        print_into(item, out);
    }
    out.push_back(')');
}

} // namespace

std::string print_canonical(const SExpr& x) {
    std::string out;
    print_into(x, out);
    return out;
}

std::string print_canonical(std::span<const SExpr> xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out.push_back(' ');
        print_into(xs[i], out);
    }
    return out;
}

std::optional<std::vector<SExpr>> parse_canonical_program(std::string_view text) {
    std::vector<SExpr> forms;
    try {
        forms = parse(text);
    } catch (const ParseError&) {
        return std::nullopt;
    }
    if (forms.empty() || print_canonical(forms) != text) return std::nullopt;
    return forms;
}

} // namespace ait
