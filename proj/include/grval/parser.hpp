#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "grval/ncpoly.hpp"

namespace grval {

namespace detail {

/// Recursive-descent parser for
///   expr  := term (('+' | '-') term)*
///   term  := unary (('*' | '/') unary)*        divisor must be a nonzero scalar
///   unary := ('+' | '-') unary | power
///   power := atom ('^' digits)?
///   atom  := digits | identifier | '(' expr ')'
/// Products keep factor order. An identifier that is not a generator name
/// denotes the field variable when the coefficient field has one (t).
template <Field F>
class PolyParser {
public:
    PolyParser(std::string_view src, std::size_t offset, const std::vector<std::string>& gens, const F& field)
        : src_(src), offset_(offset), gens_(gens), field_(field)
    {
    }

    FreePoly<F> parse_all()
    {
        skip_ws();
        if (at_end()) fail("empty expression");
        auto p = expr();
        skip_ws();
        if (!at_end()) fail(std::string("unexpected '") + src_[pos_] + "'");
        return p;
    }

private:
    static constexpr std::size_t kMaxExponent = 4096;

    [[noreturn]] void fail(const std::string& msg, Errc code = Errc::SyntaxError) const
    {
        throw SyntaxError(code, offset_ + pos_, msg);
    }

    bool at_end() const { return pos_ >= src_.size(); }
    void skip_ws()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    bool accept(char c)
    {
        skip_ws();
        if (!at_end() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    FreePoly<F> expr()
    {
        auto acc = term();
        for (;;) {
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                return acc;
        }
    }

    FreePoly<F> term()
    {
        auto acc = unary();
        for (;;) {
            if (accept('*')) {
                acc = acc * unary();
            }
            else if (accept('/')) {
                const std::size_t at = pos_;
                auto d = unary();
                auto c = d.as_constant();
                if (!c) {
                    pos_ = at;
                    fail("division by a non-scalar");
                }
                if (field_.is_zero(*c)) {
                    pos_ = at;
                    fail("division by zero", Errc::DivisionByZero);
                }
                acc = acc.scaled(field_.inv(*c));
            }
            else {
                return acc;
            }
        }
    }

    FreePoly<F> unary()
    {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    FreePoly<F> power()
    {
        auto base = atom();
        if (!accept('^')) return base;
        skip_ws();
        const std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a nonnegative integer exponent");
        const std::string digits(src_.substr(start, pos_ - start));
        if (digits.size() > 6 || std::stoul(digits) > kMaxExponent) fail("exponent too large");
        auto e = std::stoul(digits);
        auto result = FreePoly<F>::constant(field_, gens_.size(), field_.one());
        for (unsigned long i = 0; i < e; ++i) result = result * base;
        return result;
    }

    FreePoly<F> atom()
    {
        skip_ws();
        if (at_end()) fail("unexpected end of input");
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            auto inner = expr();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (!at_end() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            const Integer n(std::string(src_.substr(start, pos_ - start)));
            return FreePoly<F>::constant(field_, gens_.size(), field_.from_integer(n));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (!at_end() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
            const std::string name(src_.substr(start, pos_ - start));
            for (std::size_t i = 0; i < gens_.size(); ++i)
                if (gens_[i] == name) return FreePoly<F>::generator(field_, gens_.size(), static_cast<std::uint32_t>(i));
            if (field_.variable() && *field_.variable() == name)
                return FreePoly<F>::constant(field_, gens_.size(), field_.variable_element());
            pos_ = start;
            fail("unknown generator '" + name + "'", Errc::UnknownGenerator);
        }
        fail(std::string("unexpected '") + c + "'");
    }

    std::string_view src_;
    std::size_t offset_;
    std::size_t pos_ = 0;
    const std::vector<std::string>& gens_;
    const F& field_;
};

} // namespace detail

template <Field F>
FreePoly<F> parse_poly(std::string_view src, const std::vector<std::string>& gens, const F& field)
{
    return detail::PolyParser<F>(src, 0, gens, field).parse_all();
}

/// Parses "lhs = rhs"; positions in errors refer to the whole string.
template <Field F>
std::pair<FreePoly<F>, FreePoly<F>> parse_equation(std::string_view src, const std::vector<std::string>& gens,
                                                   const F& field)
{
    const auto eq = src.find('=');
    if (eq == std::string_view::npos) throw SyntaxError(Errc::SyntaxError, src.size(), "expected '='");
    if (src.find('=', eq + 1) != std::string_view::npos)
        throw SyntaxError(Errc::SyntaxError, src.find('=', eq + 1), "more than one '='");
    auto lhs = detail::PolyParser<F>(src.substr(0, eq), 0, gens, field).parse_all();
    auto rhs = detail::PolyParser<F>(src.substr(eq + 1), eq + 1, gens, field).parse_all();
    return {std::move(lhs), std::move(rhs)};
}

} // namespace grval
