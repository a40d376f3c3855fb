#pragma once

#include <concepts>
#include <cstdint>
#include <gmpxx.h>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "grval/error.hpp"

namespace grval {

using Integer = mpz_class;
using Rational = mpq_class;

/// Coefficient fields are descriptor objects: elements are plain values and
/// all arithmetic goes through the descriptor, so that F_p elements do not
/// need to carry their modulus around.
template <class F>
concept Field = requires(const F& f, const typename F::Element& a, const Integer& n) {
    { f.zero() } -> std::same_as<typename F::Element>;
    { f.one() } -> std::same_as<typename F::Element>;
    { f.from_integer(n) } -> std::same_as<typename F::Element>;
    { f.is_zero(a) } -> std::same_as<bool>;
    { f.add(a, a) } -> std::same_as<typename F::Element>;
    { f.sub(a, a) } -> std::same_as<typename F::Element>;
    { f.mul(a, a) } -> std::same_as<typename F::Element>;
    { f.neg(a) } -> std::same_as<typename F::Element>;
    { f.inv(a) } -> std::same_as<typename F::Element>;
    { f.div(a, a) } -> std::same_as<typename F::Element>;
    { f.equal(a, a) } -> std::same_as<bool>;
    { f.to_string(a) } -> std::same_as<std::string>;
    { f.is_negative(a) } -> std::same_as<bool>;
    { f.name() } -> std::same_as<std::string>;
    { f.variable() } -> std::same_as<std::optional<std::string>>;
};

inline bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline Integer random_integer(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi)
{
    return Integer(static_cast<long>(std::uniform_int_distribution<std::int64_t>(lo, hi)(rng)));
}

// ---------------------------------------------------------------------------

class RationalField {
public:
    using Element = Rational;

    Element zero() const { return 0; }
    Element one() const { return 1; }
    Element from_integer(const Integer& n) const { return Element(n); }
    bool is_zero(const Element& a) const { return sgn(a) == 0; }
    Element add(const Element& a, const Element& b) const { return a + b; }
    Element sub(const Element& a, const Element& b) const { return a - b; }
    Element mul(const Element& a, const Element& b) const { return a * b; }
    Element neg(const Element& a) const { return -a; }
    Element inv(const Element& a) const
    {
        if (is_zero(a)) throw Error(Errc::DivisionByZero, "inverse of 0");
        return 1 / a;
    }
    Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }
    bool equal(const Element& a, const Element& b) const { return a == b; }
    bool is_negative(const Element& a) const { return sgn(a) < 0; }
    std::string to_string(const Element& a) const { return a.get_str(); }
    std::string name() const { return "QQ"; }
    std::optional<std::string> variable() const { return std::nullopt; }
    Element variable_element() const { throw Error(Errc::InvalidField, "QQ has no variable"); }
    int characteristic() const { return 0; }

    /// numerator in [-height, height], denominator in [1, height]
    Element random(std::mt19937_64& rng, std::int64_t height) const
    {
        Element r(random_integer(rng, -height, height), random_integer(rng, 1, std::max<std::int64_t>(height, 1)));
        r.canonicalize();
        return r;
    }

    bool operator==(const RationalField&) const = default;
};

// ---------------------------------------------------------------------------

/// Prime field F_p for p < 2^32; elements are representatives in [0, p).
class PrimeField {
public:
    using Element = std::uint64_t;

    explicit PrimeField(std::uint64_t p) : p_(p)
    {
        if (p >= (std::uint64_t{1} << 32)) throw Error(Errc::InvalidField, "prime too large: " + std::to_string(p));
        if (!is_prime(p)) throw Error(Errc::InvalidField, std::to_string(p) + " is not prime");
    }

    std::uint64_t modulus() const { return p_; }

    Element zero() const { return 0; }
    Element one() const { return 1; }
    Element from_integer(const Integer& n) const
    {
        Integer r = n % Integer(static_cast<unsigned long>(p_));
        if (r < 0) r += static_cast<unsigned long>(p_);
        return r.get_ui();
    }
    Element from_int(std::int64_t n) const
    {
        auto r = n % static_cast<std::int64_t>(p_);
        return static_cast<Element>(r < 0 ? r + static_cast<std::int64_t>(p_) : r);
    }
    bool is_zero(Element a) const { return a == 0; }
    Element add(Element a, Element b) const { return (a + b) % p_; }
    Element sub(Element a, Element b) const { return (a + p_ - b) % p_; }
    Element mul(Element a, Element b) const { return (a * b) % p_; }
    Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
    Element inv(Element a) const
    {
        if (a == 0) throw Error(Errc::DivisionByZero, "inverse of 0 in F_" + std::to_string(p_));
        // Fermat
        Element result = 1, base = a, e = p_ - 2;
        while (e) {
            if (e & 1) result = mul(result, base);
            base = mul(base, base);
            e >>= 1;
        }
        return result;
    }
    Element div(Element a, Element b) const { return mul(a, inv(b)); }
    bool equal(Element a, Element b) const { return a == b; }
    bool is_negative(Element) const { return false; }
    std::string to_string(Element a) const { return std::to_string(a); }
    std::string name() const { return "F_" + std::to_string(p_); }
    std::optional<std::string> variable() const { return std::nullopt; }
    Element variable_element() const { throw Error(Errc::InvalidField, name() + " has no variable"); }
    int characteristic() const { return static_cast<int>(p_); }

    Element random(std::mt19937_64& rng, std::int64_t) const
    {
        return std::uniform_int_distribution<Element>(0, p_ - 1)(rng);
    }

    bool operator==(const PrimeField&) const = default;

private:
    std::uint64_t p_;
};

// ---------------------------------------------------------------------------
// Dense univariate polynomials, coefficients low to high, no trailing zeros.

template <Field C>
struct UPolyOps {
    using E = typename C::Element;
    using Poly = std::vector<E>;

    const C& c;

    void trim(Poly& a) const
    {
        while (!a.empty() && c.is_zero(a.back())) a.pop_back();
    }
    Poly add(const Poly& a, const Poly& b) const
    {
        Poly r(std::max(a.size(), b.size()), c.zero());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
        for (std::size_t i = 0; i < b.size(); ++i) r[i] = c.add(r[i], b[i]);
        trim(r);
        return r;
    }
    Poly neg(const Poly& a) const
    {
        Poly r;
        r.reserve(a.size());
        for (const auto& x : a) r.push_back(c.neg(x));
        return r;
    }
    Poly sub(const Poly& a, const Poly& b) const { return add(a, neg(b)); }
    Poly mul(const Poly& a, const Poly& b) const
    {
        if (a.empty() || b.empty()) return {};
        Poly r(a.size() + b.size() - 1, c.zero());
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = c.add(r[i + j], c.mul(a[i], b[j]));
        trim(r);
        return r;
    }
    Poly scale(const Poly& a, const E& s) const
    {
        Poly r;
        r.reserve(a.size());
        for (const auto& x : a) r.push_back(c.mul(x, s));
        trim(r);
        return r;
    }
    /// a = q*b + r, deg r < deg b
    std::pair<Poly, Poly> divmod(Poly a, const Poly& b) const
    {
        if (b.empty()) throw Error(Errc::DivisionByZero, "polynomial division by 0");
        Poly q;
        if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, c.zero());
        const E lead_inv = c.inv(b.back());
        while (a.size() >= b.size()) {
            const std::size_t shift = a.size() - b.size();
            const E f = c.mul(a.back(), lead_inv);
            q[shift] = f;
            for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = c.sub(a[shift + i], c.mul(f, b[i]));
            a.pop_back(); // leading term cancels exactly
            trim(a);
        }
        trim(q);
        return {std::move(q), std::move(a)};
    }
    Poly monic(const Poly& a) const { return a.empty() ? a : scale(a, c.inv(a.back())); }
    Poly gcd(Poly a, Poly b) const
    {
        while (!b.empty()) {
            auto r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return monic(a);
    }
    /// lowest index with a nonzero coefficient
    std::size_t order(const Poly& a) const
    {
        std::size_t i = 0;
        while (i < a.size() && c.is_zero(a[i])) ++i;
        return i;
    }
    bool equal(const Poly& a, const Poly& b) const
    {
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!c.equal(a[i], b[i])) return false;
        return true;
    }
    std::string to_string(const Poly& a, const std::string& var) const
    {
        if (a.empty()) return "0";
        std::string out;
        for (std::size_t k = a.size(); k-- > 0;) {
            if (c.is_zero(a[k])) continue;
            const bool negative = c.is_negative(a[k]);
            const E mag = negative ? c.neg(a[k]) : a[k];
            if (out.empty())
                out += negative ? "-" : "";
            else
                out += negative ? " - " : " + ";
            const bool unit = c.equal(mag, c.one());
            if (k == 0) {
                out += c.to_string(mag);
                continue;
            }
            if (!unit) out += c.to_string(mag) + "*";
            out += var;
            if (k > 1) out += "^" + std::to_string(k);
        }
        return out;
    }
};

/// Field of rational functions C(t) in a variable named "t".
template <Field C>
class RationalFunctionField {
public:
    using CoefElement = typename C::Element;
    using Poly = std::vector<CoefElement>;

    /// canonical: gcd(num, den) = 1, den monic, zero is (0, 1)
    struct Element {
        Poly num;
        Poly den;
        bool operator==(const Element&) const = default;
    };

    explicit RationalFunctionField(C coefficients) : coef_(std::move(coefficients)) {}

    const C& coefficient_field() const { return coef_; }
    UPolyOps<C> polys() const { return UPolyOps<C>{coef_}; }

    Element make(Poly num, Poly den) const
    {
        auto ops = polys();
        ops.trim(num);
        ops.trim(den);
        if (den.empty()) throw Error(Errc::DivisionByZero, "rational function with zero denominator");
        if (num.empty()) return zero();
        auto g = ops.gcd(num, den);
        if (g.size() > 1) {
            num = ops.divmod(num, g).first;
            den = ops.divmod(den, g).first;
        }
        const auto lead_inv = coef_.inv(den.back());
        return Element{ops.scale(num, lead_inv), ops.scale(den, lead_inv)};
    }
    Element from_coefficient(const CoefElement& a) const
    {
        if (coef_.is_zero(a)) return zero();
        return Element{Poly{a}, Poly{coef_.one()}};
    }
    /// t^k for any integer k
    Element t_power(std::int64_t k) const
    {
        Poly mono(static_cast<std::size_t>(k < 0 ? -k : k) + 1, coef_.zero());
        mono.back() = coef_.one();
        return k >= 0 ? Element{mono, Poly{coef_.one()}} : Element{Poly{coef_.one()}, mono};
    }

    Element zero() const { return Element{Poly{}, Poly{coef_.one()}}; }
    Element one() const { return from_coefficient(coef_.one()); }
    Element from_integer(const Integer& n) const { return from_coefficient(coef_.from_integer(n)); }
    bool is_zero(const Element& a) const { return a.num.empty(); }
    Element add(const Element& a, const Element& b) const
    {
        auto ops = polys();
        if (ops.equal(a.den, b.den)) return make(ops.add(a.num, b.num), a.den);
        return make(ops.add(ops.mul(a.num, b.den), ops.mul(b.num, a.den)), ops.mul(a.den, b.den));
    }
    Element neg(const Element& a) const { return Element{polys().neg(a.num), a.den}; }
    Element sub(const Element& a, const Element& b) const { return add(a, neg(b)); }
    Element mul(const Element& a, const Element& b) const
    {
        auto ops = polys();
        return make(ops.mul(a.num, b.num), ops.mul(a.den, b.den));
    }
    Element inv(const Element& a) const
    {
        if (is_zero(a)) throw Error(Errc::DivisionByZero, "inverse of 0");
        return make(a.den, a.num);
    }
    Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }
    bool equal(const Element& a, const Element& b) const { return polys().equal(a.num, b.num) && polys().equal(a.den, b.den); }
    bool is_negative(const Element&) const { return false; }
    std::string to_string(const Element& a) const
    {
        auto ops = polys();
        if (ops.equal(a.den, Poly{coef_.one()})) return ops.to_string(a.num, "t");
        return "(" + ops.to_string(a.num, "t") + ")/(" + ops.to_string(a.den, "t") + ")";
    }
    std::string name() const { return coef_.name() + "(t)"; }
    std::optional<std::string> variable() const { return "t"; }
    Element variable_element() const { return t_power(1); }
    int characteristic() const { return coef_.characteristic(); }

    /// numerator and denominator of degree <= 2 with random coefficients,
    /// times t^k for k in [-2, 2] so that t-adic valuations vary
    Element random(std::mt19937_64& rng, std::int64_t height) const
    {
        auto draw = [&](bool nonzero) {
            for (;;) {
                Poly p;
                const int deg = std::uniform_int_distribution<int>(0, 2)(rng);
                for (int i = 0; i <= deg; ++i) p.push_back(coef_.random(rng, height));
                polys().trim(p);
                if (!nonzero || !p.empty()) return p;
            }
        };
        auto r = make(draw(false), draw(true));
        return mul(r, t_power(std::uniform_int_distribution<int>(-2, 2)(rng)));
    }

    bool operator==(const RationalFunctionField& o) const { return coef_ == o.coef_; }

private:
    C coef_;
};

/// Power by repeated squaring; negative exponents invert first.
template <Field F>
typename F::Element field_power(const F& f, typename F::Element base, std::int64_t e)
{
    if (e < 0) {
        base = f.inv(base);
        e = -e;
    }
    auto result = f.one();
    while (e) {
        if (e & 1) result = f.mul(result, base);
        base = f.mul(base, base);
        e >>= 1;
    }
    return result;
}

} // namespace grval
