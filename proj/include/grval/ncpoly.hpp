#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "grval/error.hpp"
#include "grval/fields.hpp"

namespace grval {

/// A word in the free monoid on generators 0..arity-1; the empty word is 1.
using Word = std::vector<std::uint32_t>;

/// Degree-lexicographic order, generator order as listed.
struct DeglexLess {
    bool operator()(const Word& a, const Word& b) const
    {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

namespace detail {

inline std::string word_string(const Word& w, const std::vector<std::string>& names)
{
    std::string out;
    for (std::size_t i = 0; i < w.size();) {
        std::size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        if (!out.empty()) out += "*";
        out += names.at(w[i]);
        if (j - i > 1) out += "^" + std::to_string(j - i);
        i = j;
    }
    return out;
}

/// Formats sum_i c_i * m_i in the parser grammar. Monomials are given as
/// already-formatted strings, "" standing for 1.
template <Field F>
std::string format_terms(const F& field, const std::vector<std::pair<std::string, typename F::Element>>& terms)
{
    if (terms.empty()) return "0";
    std::string out;
    for (const auto& [mono, c] : terms) {
        const bool negative = field.is_negative(c);
        const auto mag = negative ? field.neg(c) : c;
        out += out.empty() ? (negative ? "-" : "") : (negative ? " - " : " + ");
        std::string coef = field.to_string(mag);
        if (coef.find(' ') != std::string::npos) coef = "(" + coef + ")";
        if (mono.empty())
            out += coef;
        else if (field.equal(mag, field.one()))
            out += mono;
        else
            out += coef + "*" + mono;
    }
    return out;
}

} // namespace detail

/// Noncommutative polynomial in K<x_0..x_{arity-1}>: a finite map from
/// words to nonzero coefficients.
template <Field F>
class FreePoly {
public:
    using Coef = typename F::Element;
    using Terms = std::map<Word, Coef, DeglexLess>;

    FreePoly(F field, std::size_t arity) : field_(std::move(field)), arity_(arity) {}

    static FreePoly constant(F field, std::size_t arity, const Coef& c)
    {
        FreePoly p(std::move(field), arity);
        p.add_term({}, c);
        return p;
    }
    static FreePoly generator(F field, std::size_t arity, std::uint32_t index)
    {
        FreePoly p(std::move(field), arity);
        p.add_term({index}, p.field_.one());
        return p;
    }
    static FreePoly monomial(F field, std::size_t arity, Word w, const Coef& c)
    {
        FreePoly p(std::move(field), arity);
        p.add_term(std::move(w), c);
        return p;
    }

    const F& field() const { return field_; }
    std::size_t arity() const { return arity_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    /// Adds c*w, dropping the term if it cancels.
    void add_term(Word w, const Coef& c)
    {
        if (field_.is_zero(c)) return;
        for (auto g : w)
            if (g >= arity_) throw Error(Errc::InvalidArity, "generator index out of range");
        auto [it, inserted] = terms_.try_emplace(std::move(w), c);
        if (!inserted) {
            it->second = field_.add(it->second, c);
            if (field_.is_zero(it->second)) terms_.erase(it);
        }
    }

    Coef coefficient(const Word& w) const
    {
        auto it = terms_.find(w);
        return it == terms_.end() ? field_.zero() : it->second;
    }

    /// Total degree; -1 for the zero polynomial.
    int degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.size()); }

    bool is_homogeneous() const
    {
        return terms_.empty() || terms_.begin()->first.size() == terms_.rbegin()->first.size();
    }

    std::optional<Coef> as_constant() const
    {
        if (terms_.empty()) return field_.zero();
        if (terms_.size() == 1 && terms_.begin()->first.empty()) return terms_.begin()->second;
        return std::nullopt;
    }

    FreePoly scaled(const Coef& s) const
    {
        FreePoly r(field_, arity_);
        if (field_.is_zero(s)) return r;
        for (const auto& [w, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), w, field_.mul(c, s));
        return r;
    }

    FreePoly& operator+=(const FreePoly& o)
    {
        check_compatible(o);
        for (const auto& [w, c] : o.terms_) add_term(w, c);
        return *this;
    }
    FreePoly& operator-=(const FreePoly& o)
    {
        check_compatible(o);
        for (const auto& [w, c] : o.terms_) add_term(w, field_.neg(c));
        return *this;
    }
    friend FreePoly operator+(FreePoly a, const FreePoly& b) { return a += b; }
    friend FreePoly operator-(FreePoly a, const FreePoly& b) { return a -= b; }
    friend FreePoly operator-(const FreePoly& a) { return a.scaled(a.field_.neg(a.field_.one())); }

    /// Words concatenate.
    friend FreePoly operator*(const FreePoly& a, const FreePoly& b)
    {
        a.check_compatible(b);
        FreePoly r(a.field_, a.arity_);
        for (const auto& [u, c] : a.terms_)
            for (const auto& [w, d] : b.terms_) {
                Word uw = u;
                uw.insert(uw.end(), w.begin(), w.end());
                r.add_term(std::move(uw), a.field_.mul(c, d));
            }
        return r;
    }

    friend bool operator==(const FreePoly& a, const FreePoly& b)
    {
        if (!(a.field_ == b.field_) || a.arity_ != b.arity_ || a.terms_.size() != b.terms_.size()) return false;
        auto it = b.terms_.begin();
        for (const auto& [w, c] : a.terms_) {
            if (w != it->first || !a.field_.equal(c, it->second)) return false;
            ++it;
        }
        return true;
    }

    /// Terms in descending degree-lexicographic order, parser grammar.
    std::string to_string(const std::vector<std::string>& names) const
    {
        std::vector<std::pair<std::string, Coef>> out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
            out.emplace_back(detail::word_string(it->first, names), it->second);
        return detail::format_terms(field_, out);
    }

    void check_compatible(const FreePoly& o) const
    {
        if (!(field_ == o.field_)) throw Error(Errc::FieldMismatch, field_.name() + " vs " + o.field_.name());
        if (arity_ != o.arity_)
            throw Error(Errc::FieldMismatch,
                        "generator arity " + std::to_string(arity_) + " vs " + std::to_string(o.arity_));
    }

private:
    F field_;
    std::size_t arity_;
    Terms terms_;
};

template <Field F>
FreePoly<F> homogeneous_component(const FreePoly<F>& f, std::size_t n)
{
    FreePoly<F> r(f.field(), f.arity());
    for (const auto& [w, c] : f.terms())
        if (w.size() == n) r.add_term(w, c);
    return r;
}

/// Maps coefficients through a ring homomorphism into another field.
template <Field To, Field From, class Map>
FreePoly<To> map_coefficients(const FreePoly<From>& f, const To& target, Map&& map)
{
    FreePoly<To> r(target, f.arity());
    for (const auto& [w, c] : f.terms()) r.add_term(w, map(c));
    return r;
}

} // namespace grval
