#pragma once

#include <cctype>
#include <memory>
#include <string>
#include <string_view>

#include "locvar/error.hpp"

namespace locvar {

/// Tokens with fixed meaning in the regex grammar; they can never be alphabet letters.
inline constexpr std::string_view reserved_tokens = "#@|*()";

/// Ordered list of single-character letters. Order matters: it fixes DFA column order
/// and canonical numbering.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::string symbols) : symbols_(std::move(symbols)) {
        if (symbols_.empty()) throw Error("alphabet must be nonempty");
        for (std::size_t i = 0; i < symbols_.size(); ++i) {
            const char c = symbols_[i];
            if (!std::isprint(static_cast<unsigned char>(c)) || reserved_tokens.find(c) != std::string_view::npos)
                throw Error(std::string("invalid alphabet symbol '") + c + "'");
            if (symbols_.find(c) != i) throw Error(std::string("duplicate alphabet symbol '") + c + "'");
        }
    }

    std::size_t size() const noexcept { return symbols_.size(); }
    char operator[](std::size_t i) const { return symbols_[i]; }
    const std::string& symbols() const noexcept { return symbols_; }
    bool contains(char c) const noexcept { return symbols_.find(c) != std::string::npos; }

    std::size_t index(char c) const {
        const auto pos = symbols_.find(c);
        if (pos == std::string::npos) throw UnknownSymbol(c);
        return pos;
    }

    friend bool operator==(const Alphabet&, const Alphabet&) = default;
    friend auto operator<=>(const Alphabet&, const Alphabet&) = default;

private:
    std::string symbols_;
};

class Regex {
public:
    enum class Kind { Empty, Epsilon, Literal, Union, Concat, Star };

    static Regex empty() { return Regex(Kind::Empty); }
    static Regex epsilon() { return Regex(Kind::Epsilon); }
    static Regex literal(char c) {
        Regex r(Kind::Literal);
        r.symbol_ = c;
        return r;
    }
    static Regex alt(Regex l, Regex r) { return binary(Kind::Union, std::move(l), std::move(r)); }
    static Regex concat(Regex l, Regex r) { return binary(Kind::Concat, std::move(l), std::move(r)); }
    static Regex star(Regex inner) {
        Regex r(Kind::Star);
        r.left_ = std::make_shared<const Regex>(std::move(inner));
        return r;
    }

    Kind kind() const noexcept { return kind_; }
    char symbol() const noexcept { return symbol_; }
    const Regex& left() const { return *left_; }
    const Regex& right() const { return *right_; }
    const Regex& inner() const { return *left_; }

    friend bool operator==(const Regex& a, const Regex& b) {
        if (a.kind_ != b.kind_ || a.symbol_ != b.symbol_) return false;
        switch (a.kind_) {
            case Kind::Union:
            case Kind::Concat: return *a.left_ == *b.left_ && *a.right_ == *b.right_;
            case Kind::Star: return *a.left_ == *b.left_;
            default: return true;
        }
    }

private:
    explicit Regex(Kind k) : kind_(k) {}
    static Regex binary(Kind k, Regex l, Regex r) {
        Regex out(k);
        out.left_ = std::make_shared<const Regex>(std::move(l));
        out.right_ = std::make_shared<const Regex>(std::move(r));
        return out;
    }

    Kind kind_ = Kind::Empty;
    char symbol_ = 0;
    std::shared_ptr<const Regex> left_;
    std::shared_ptr<const Regex> right_;
};

namespace detail {

class RegexParser {
public:
    RegexParser(std::string_view text, const Alphabet& alphabet) : text_(text), alphabet_(alphabet) {}

    Regex parse() {
        Regex r = parse_union();
        if (pos_ != text_.size()) throw SyntaxError(pos_, std::string("unexpected '") + text_[pos_] + "'");
        return r;
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    Regex parse_union() {
        Regex r = parse_concat();
        while (!at_end() && peek() == '|') {
            ++pos_;
            r = Regex::alt(std::move(r), parse_concat());
        }
        return r;
    }

    bool starts_atom() const { return !at_end() && peek() != '|' && peek() != ')' && peek() != '*'; }

    Regex parse_concat() {
        if (!starts_atom()) {
            if (at_end()) throw SyntaxError(pos_, "unexpected end of input");
            throw SyntaxError(pos_, std::string("unexpected '") + peek() + "'");
        }
        Regex r = parse_star();
        while (starts_atom()) r = Regex::concat(std::move(r), parse_star());
        return r;
    }

    Regex parse_star() {
        Regex r = parse_atom();
        while (!at_end() && peek() == '*') {
            ++pos_;
            r = Regex::star(std::move(r));
        }
        return r;
    }

    Regex parse_atom() {
        const char c = peek();
        const std::size_t start = pos_++;
        switch (c) {
            case '#': return Regex::empty();
            case '@': return Regex::epsilon();
            case '(': {
                Regex r = parse_union();
                if (at_end() || peek() != ')') throw SyntaxError(pos_, "missing ')' for '(' at " + std::to_string(start));
                ++pos_;
                return r;
            }
            default:
                if (!alphabet_.contains(c)) throw UnknownSymbol(c);
                return Regex::literal(c);
        }
    }

    std::string_view text_;
    const Alphabet& alphabet_;
    std::size_t pos_ = 0;
};

inline int precedence(Regex::Kind k) {
    switch (k) {
        case Regex::Kind::Union: return 0;
        case Regex::Kind::Concat: return 1;
        default: return 2;
    }
}

inline void print(const Regex& r, std::string& out) {
    auto child = [&out](const Regex& c, int min_prec) {
        const bool paren = precedence(c.kind()) < min_prec;
        if (paren) out += '(';
        print(c, out);
        if (paren) out += ')';
    };
    switch (r.kind()) {
        case Regex::Kind::Empty: out += '#'; break;
        case Regex::Kind::Epsilon: out += '@'; break;
        case Regex::Kind::Literal: out += r.symbol(); break;
        case Regex::Kind::Union:
            child(r.left(), 0);
            out += '|';
            child(r.right(), 0);
            break;
        case Regex::Kind::Concat:
            child(r.left(), 1);
            child(r.right(), 1);
            break;
        case Regex::Kind::Star:
            child(r.inner(), 3);
            out += '*';
            break;
    }
}

}  // namespace detail

/// Parses the ASCII grammar: `#` empty, `@` epsilon, letters, `|`, juxtaposition, `*`, parens.
/// Precedence is star > concat > union.
inline Regex parse_regex(std::string_view text, const Alphabet& alphabet) {
    return detail::RegexParser(text, alphabet).parse();
}

inline std::string to_string(const Regex& r) {
    std::string out;
    detail::print(r, out);
    return out;
}

}  // namespace locvar
