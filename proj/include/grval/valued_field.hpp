#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "grval/fields.hpp"
#include "grval/value.hpp"

namespace grval {

/// A field K with a surjective valuation onto Z, its residue field k_v and
/// the canonical uniformizer (p, respectively t).
template <class V>
concept ValuedField = Field<typename V::BaseField> && Field<typename V::ResidueField> &&
    requires(const V& K, const typename V::BaseField::Element& x, const typename V::ResidueField::Element& r) {
        { K.base() } -> std::convertible_to<const typename V::BaseField&>;
        { K.residue_field() } -> std::convertible_to<const typename V::ResidueField&>;
        { K.valuation(x) } -> std::same_as<Value>;
        { K.residue(x) } -> std::same_as<typename V::ResidueField::Element>;
        { K.uniformizer_power(std::int64_t{}) } -> std::same_as<typename V::BaseField::Element>;
        { K.lift(r) } -> std::same_as<typename V::BaseField::Element>;
        { K.describe() } -> std::same_as<std::string>;
    };

template <ValuedField V>
bool in_valuation_ring(const V& K, const typename V::BaseField::Element& x)
{
    return K.valuation(x) >= Value(0);
}

/// x = pi^gamma * u with v(u) = 0.
template <ValuedField V>
std::pair<Value, typename V::BaseField::Element> unit_normalize(const V& K, const typename V::BaseField::Element& x)
{
    const Value gamma = K.valuation(x);
    if (gamma.is_infinite()) throw Error(Errc::ZeroInput, "unit_normalize of 0");
    return {gamma, K.base().mul(x, K.uniformizer_power(-gamma.get()))};
}

inline std::int64_t ord_p(const Integer& n, std::uint64_t p)
{
    Integer rest;
    const Integer prime(static_cast<unsigned long>(p));
    return static_cast<std::int64_t>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t()));
}

// ---------------------------------------------------------------------------

/// Q with the p-adic valuation; residue field F_p.
class PAdicRationals {
public:
    using BaseField = RationalField;
    using ResidueField = PrimeField;
    using Element = Rational;

    explicit PAdicRationals(std::uint64_t p) : residue_(p) {}

    std::uint64_t prime() const { return residue_.modulus(); }
    const BaseField& base() const { return base_; }
    const ResidueField& residue_field() const { return residue_; }

    Value valuation(const Rational& x) const
    {
        if (sgn(x) == 0) return Value::infinity();
        return Value(ord_p(x.get_num(), prime()) - ord_p(x.get_den(), prime()));
    }

    ResidueField::Element residue(const Rational& x) const
    {
        const Value v = valuation(x);
        if (v < Value(0)) throw Error(Errc::NegativeValuation, x.get_str() + " has valuation " + v.to_string());
        if (v > Value(0)) return 0;
        return residue_.div(residue_.from_integer(x.get_num()), residue_.from_integer(x.get_den()));
    }

    Rational uniformizer_power(std::int64_t k) const
    {
        Integer pk;
        mpz_ui_pow_ui(pk.get_mpz_t(), prime(), static_cast<unsigned long>(k < 0 ? -k : k));
        return k >= 0 ? Rational(pk) : Rational(Integer(1), pk);
    }

    Rational lift(ResidueField::Element r) const { return Rational(Integer(static_cast<unsigned long>(r))); }

    std::string describe() const { return "QQ with the " + std::to_string(prime()) + "-adic valuation"; }

    bool operator==(const PAdicRationals& o) const { return residue_ == o.residue_; }

private:
    RationalField base_;
    PrimeField residue_;
};

/// C(t) with the t-adic valuation; residue field C.
template <Field C>
class TAdicRationalFunctions {
public:
    using BaseField = RationalFunctionField<C>;
    using ResidueField = C;
    using Element = typename BaseField::Element;

    explicit TAdicRationalFunctions(C coefficients) : base_(coefficients), residue_(std::move(coefficients)) {}

    const BaseField& base() const { return base_; }
    const ResidueField& residue_field() const { return residue_; }

    Value valuation(const Element& x) const
    {
        if (base_.is_zero(x)) return Value::infinity();
        auto ops = base_.polys();
        return Value(static_cast<std::int64_t>(ops.order(x.num)) - static_cast<std::int64_t>(ops.order(x.den)));
    }

    typename C::Element residue(const Element& x) const
    {
        const Value v = valuation(x);
        if (v < Value(0)) throw Error(Errc::NegativeValuation, base_.to_string(x) + " has valuation " + v.to_string());
        if (v > Value(0)) return residue_.zero();
        return residue_.div(x.num.front(), x.den.front());
    }

    Element uniformizer_power(std::int64_t k) const { return base_.t_power(k); }

    Element lift(const typename C::Element& r) const { return base_.from_coefficient(r); }

    std::string describe() const { return base_.name() + " with the t-adic valuation"; }

    bool operator==(const TAdicRationalFunctions& o) const { return residue_ == o.residue_; }

private:
    BaseField base_;
    C residue_;
};

// ---------------------------------------------------------------------------

/// Runtime description of a field as written in algebra-spec files.
struct FieldDescriptor {
    enum class Kind { Rationals, RationalFunctions, PrimeField };
    enum class Valuation { None, PAdic, TAdic };

    Kind kind = Kind::Rationals;
    Valuation valuation = Valuation::None;
    std::uint64_t p = 0; // p-adic prime
    std::uint64_t q = 0; // coefficient prime for rational functions / prime fields; 0 means QQ

    bool operator==(const FieldDescriptor&) const = default;
};

/// Calls fn with the matching valued field; throws InvalidField for
/// combinations without a valuation surjective onto Z.
template <class Fn>
decltype(auto) with_valued_field(const FieldDescriptor& d, Fn&& fn)
{
    using K = FieldDescriptor::Kind;
    using Val = FieldDescriptor::Valuation;
    if (d.kind == K::Rationals && d.valuation == Val::PAdic) return fn(PAdicRationals(d.p));
    if (d.kind == K::RationalFunctions && d.valuation == Val::TAdic) {
        if (d.q == 0) return fn(TAdicRationalFunctions<RationalField>(RationalField{}));
        return fn(TAdicRationalFunctions<PrimeField>(PrimeField(d.q)));
    }
    throw Error(Errc::InvalidField, "field has no supported valuation (need rationals/p-adic or rational_functions/t-adic)");
}

/// Calls fn with the underlying coefficient field, ignoring the valuation.
template <class Fn>
decltype(auto) with_base_field(const FieldDescriptor& d, Fn&& fn)
{
    using K = FieldDescriptor::Kind;
    switch (d.kind) {
    case K::Rationals: return fn(RationalField{});
    case K::RationalFunctions:
        if (d.q == 0) return fn(RationalFunctionField<RationalField>(RationalField{}));
        return fn(RationalFunctionField<PrimeField>(PrimeField(d.q)));
    case K::PrimeField: return fn(PrimeField(d.q));
    }
    throw Error(Errc::InvalidField, "unknown field kind");
}

} // namespace grval
