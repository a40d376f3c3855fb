#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "grval/hilbert.hpp"
#include "grval/parallel.hpp"
#include "grval/pbw.hpp"
#include "grval/valued_field.hpp"

namespace grval {

/// A PBW algebra A over a valued field whose structure coefficients lie in
/// O_v. Lambda is the O_v-span of the standard monomials, the valuation
/// filtration is F_gamma A = {a : pi^gamma a in Lambda}, and the reduced
/// spec presents Lambda / m_v Lambda over k_v.
template <ValuedField V>
class GaussContext {
public:
    using K = typename V::BaseField;
    using R = typename V::ResidueField;

    GaussContext(V valued, PbwSpec<K> spec)
        : valued_(std::move(valued)), spec_(std::move(spec)), reduced_(build_reduced(valued_, spec_))
    {
        const auto conf = confluence_check(spec_);
        if (!conf.pass()) throw Error(Errc::InvalidSpec, "PBW spec is not confluent");
    }

    const V& valued_field() const { return valued_; }
    const PbwSpec<K>& spec() const { return spec_; }
    const PbwSpec<R>& reduced() const { return reduced_; }

    /// Minimum coefficient valuation; Infinity for 0.
    Value gauss_valuation(const PbwElement<K>& a) const
    {
        Value m = Value::infinity();
        for (const auto& [e, c] : a.terms()) m = min(m, valued_.valuation(c));
        return m;
    }

    /// Coefficientwise residue; every coefficient must lie in O_v.
    PbwElement<R> residue(const PbwElement<K>& a) const
    {
        PbwElement<R> r(valued_.residue_field(), a.generators());
        for (const auto& [e, c] : a.terms()) r.add_term(e, valued_.residue(c));
        return r;
    }

    /// Any lift of a residue element with coefficients in O_v.
    PbwElement<K> lift(const PbwElement<R>& a) const
    {
        PbwElement<K> r(valued_.base(), a.generators());
        for (const auto& [e, c] : a.terms()) r.add_term(e, valued_.lift(c));
        return r;
    }

private:
    static PbwSpec<R> build_reduced(const V& valued, const PbwSpec<K>& spec)
    {
        typename PbwSpec<R>::RuleMap rules;
        const auto g = static_cast<std::uint32_t>(spec.generators());
        for (std::uint32_t j = 0; j < g; ++j)
            for (std::uint32_t i = 0; i < j; ++i) {
                const auto& rule = spec.rule(j, i);
                auto in_ring = [&](const auto& c) {
                    if (!in_valuation_ring(valued, c))
                        throw Error(Errc::InvalidSpec, "structure coefficient " + valued.base().to_string(c) + " of " +
                                                           spec.names()[j] + "*" + spec.names()[i] + " is not in O_v");
                    return valued.residue(c);
                };
                PbwElement<R> tail(valued.residue_field(), g);
                for (const auto& [e, c] : rule.tail.terms()) tail.add_term(e, in_ring(c));
                rules.emplace(std::pair{j, i}, CommutationRule<R>{in_ring(rule.coefficient), std::move(tail)});
            }
        return PbwSpec<R>(valued.residue_field(), spec.names(), std::move(rules), true);
    }

    V valued_;
    PbwSpec<K> spec_;
    PbwSpec<R> reduced_;
};

template <ValuedField V>
Value gauss_valuation(const GaussContext<V>& ctx, const PbwElement<typename V::BaseField>& a)
{
    return ctx.gauss_valuation(a);
}

template <ValuedField V>
const PbwSpec<typename V::ResidueField>& reduced_spec(const GaussContext<V>& ctx)
{
    return ctx.reduced();
}

/// Principal symbol in G_v(A) = Abar[t, t^-1]: degree gamma = -v(a) and the
/// residue of pi^{-v(a)} a, which is nonzero.
template <Field R>
struct Symbol {
    std::int64_t degree;
    PbwElement<R> residue;

    bool operator==(const Symbol&) const = default;
};

template <ValuedField V>
Symbol<typename V::ResidueField> principal_symbol(const GaussContext<V>& ctx, const PbwElement<typename V::BaseField>& a)
{
    const Value m = ctx.gauss_valuation(a);
    if (m.is_infinite()) throw Error(Errc::ZeroElement, "principal symbol of 0");
    const auto scale = ctx.valued_field().uniformizer_power(-m.get());
    return {-m.get(), ctx.residue(a.scaled(scale))};
}

/// Product in Abar[t, t^-1] with trivial twist, K central.
template <Field R>
Symbol<R> symbol_multiply(Rewriter<R>& reduced, const Symbol<R>& s, const Symbol<R>& u)
{
    auto product = reduced.multiply(s.residue, u.residue);
    if (product.is_zero())
        throw Error(Errc::DomainFailure, "product of nonzero symbols vanishes: the reduced algebra has zero divisors");
    return {s.degree + u.degree, std::move(product)};
}

template <ValuedField V>
Symbol<typename V::ResidueField> symbol_multiply(const GaussContext<V>& ctx, const Symbol<typename V::ResidueField>& s,
                                                 const Symbol<typename V::ResidueField>& u)
{
    Rewriter<typename V::ResidueField> rw(ctx.reduced());
    return symbol_multiply(rw, s, u);
}

/// Value of the extended valuation at the left fraction s^-1 a.
template <ValuedField V>
Value fraction_valuation(const GaussContext<V>& ctx, const PbwElement<typename V::BaseField>& a,
                         const PbwElement<typename V::BaseField>& s)
{
    const Value vs = ctx.gauss_valuation(s);
    if (vs.is_infinite()) throw Error(Errc::ZeroDenominator, "fraction with zero denominator");
    return ctx.gauss_valuation(a) - vs.get();
}

/// Finite sums of homogeneous elements of Abar[t, t^-1]; zero components omitted.
template <Field R>
class LaurentGraded {
public:
    LaurentGraded() = default;
    explicit LaurentGraded(const Symbol<R>& s) { add(s); }

    void add(const Symbol<R>& s)
    {
        auto it = components_.find(s.degree);
        if (it == components_.end()) {
            if (!s.residue.is_zero()) components_.emplace(s.degree, s.residue);
            return;
        }
        it->second += s.residue;
        if (it->second.is_zero()) components_.erase(it);
    }

    const std::map<std::int64_t, PbwElement<R>>& components() const { return components_; }
    bool is_zero() const { return components_.empty(); }

    LaurentGraded multiply(Rewriter<R>& reduced, const LaurentGraded& o) const
    {
        LaurentGraded out;
        for (const auto& [d1, a] : components_)
            for (const auto& [d2, b] : o.components_) out.add({d1 + d2, reduced.multiply(a, b)});
        return out;
    }

    /// "(residue)*t^gamma + ..." with ascending gamma
    std::string to_string(const std::vector<std::string>& names) const
    {
        if (components_.empty()) return "0";
        std::string out;
        for (const auto& [d, a] : components_) {
            if (!out.empty()) out += " + ";
            out += "(" + a.to_string(names) + ")*t^" + std::to_string(d);
        }
        return out;
    }

    bool operator==(const LaurentGraded&) const = default;

private:
    std::map<std::int64_t, PbwElement<R>> components_;
};

// ---------------------------------------------------------------------------
// Value-function property suite

struct PropertyFailure {
    std::string check;
    std::string a;
    std::string b;
    std::string expected;
    std::string got;
};

struct ValueFunctionReport {
    std::vector<std::string> checks{"multiplicative", "ultrametric", "symbol"};
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    std::int64_t height = 0;
    std::uint32_t degree = 0;
    std::vector<PropertyFailure> failures;
};

namespace detail {

template <ValuedField V>
void check_value_pair(const GaussContext<V>& ctx, Rewriter<typename V::BaseField>& rw,
                      Rewriter<typename V::ResidueField>& rrw, const PbwElement<typename V::BaseField>& a,
                      const PbwElement<typename V::BaseField>& b, std::vector<PropertyFailure>& out)
{
    const auto& names = ctx.spec().names();
    const auto sa = a.to_string(names), sb = b.to_string(names);
    const auto ab = rw.multiply(a, b);
    const Value va = ctx.gauss_valuation(a), vb = ctx.gauss_valuation(b);
    const Value vab = ctx.gauss_valuation(ab);
    if (!(vab == va + vb)) out.push_back({"multiplicative", sa, sb, (va + vb).to_string(), vab.to_string()});
    const Value vsum = ctx.gauss_valuation(a + b);
    if (vsum < min(va, vb)) out.push_back({"ultrametric", sa, sb, ">= " + min(va, vb).to_string(), vsum.to_string()});
    if (a.is_zero() || b.is_zero()) return;
    const auto sigma_a = principal_symbol(ctx, a), sigma_b = principal_symbol(ctx, b);
    auto show = [&](const Symbol<typename V::ResidueField>& s) {
        return "(" + std::to_string(s.degree) + ", " + s.residue.to_string(names) + ")";
    };
    std::string expected;
    try {
        expected = show(symbol_multiply(rrw, sigma_a, sigma_b));
    }
    catch (const Error& e) {
        if (e.code() != Errc::DomainFailure) throw;
        expected = "DomainFailure";
    }
    const std::string got = ab.is_zero() ? "0" : show(principal_symbol(ctx, ab));
    if (expected != got) out.push_back({"symbol", sa, sb, expected, got});
}

} // namespace detail

/// Draws random pairs and checks v(ab) = v(a) + v(b), v(a + b) >= min and
/// sigma(ab) = sigma(a) sigma(b). Sample i uses its own seed derived from
/// the master seed, so the report does not depend on the worker count.
template <ValuedField V>
ValueFunctionReport verify_value_function(const GaussContext<V>& ctx, std::size_t samples, std::uint64_t seed,
                                          std::int64_t height, std::uint32_t degree)
{
    ValueFunctionReport report;
    report.samples = samples;
    report.seed = seed;
    report.height = height;
    report.degree = degree;
    std::vector<std::vector<PropertyFailure>> per_sample(samples);
    parallel_chunks(samples, [&](std::size_t begin, std::size_t end) {
        Rewriter<typename V::BaseField> rw(ctx.spec());
        Rewriter<typename V::ResidueField> rrw(ctx.reduced());
        for (std::size_t i = begin; i < end; ++i) {
            std::mt19937_64 rng(derive_seed(seed, i));
            const auto a = random_element(ctx.spec(), rng, height, degree);
            const auto b = random_element(ctx.spec(), rng, height, degree);
            detail::check_value_pair(ctx, rw, rrw, a, b, per_sample[i]);
        }
    });
    for (auto& f : per_sample)
        for (auto& x : f) report.failures.push_back(std::move(x));
    return report;
}

/// Checks a single explicit pair, for reports on hand-picked elements.
template <ValuedField V>
std::vector<PropertyFailure> verify_value_pair(const GaussContext<V>& ctx, const PbwElement<typename V::BaseField>& a,
                                               const PbwElement<typename V::BaseField>& b)
{
    Rewriter<typename V::BaseField> rw(ctx.spec());
    Rewriter<typename V::ResidueField> rrw(ctx.reduced());
    std::vector<PropertyFailure> out;
    detail::check_value_pair(ctx, rw, rrw, a, b, out);
    return out;
}

/// The two descriptions of the (gamma, n) layer of the valuation filtration
/// intersected with the degree filtration:
///   first:  v(a) >= -gamma and deg a <= n;
///   second: pi^gamma a has all coefficients in O_v and all monomials of degree <= n.
template <ValuedField V>
std::pair<bool, bool> filtration_membership(const GaussContext<V>& ctx, const PbwElement<typename V::BaseField>& a,
                                            std::int64_t gamma, int n)
{
    const bool by_value = ctx.gauss_valuation(a) >= Value(-gamma) && a.degree() <= n;
    const auto scaled = a.scaled(ctx.valued_field().uniformizer_power(gamma));
    bool by_lattice = true;
    for (const auto& [e, c] : scaled.terms())
        if (!in_valuation_ring(ctx.valued_field(), c) || static_cast<int>(total_degree(e)) > n) by_lattice = false;
    return {by_value, by_lattice};
}

// ---------------------------------------------------------------------------
// Double gradation

struct BidegreeRow {
    std::int64_t gamma;
    std::size_t n;
    /// (gamma, n)-component of G_f(G_v(A))
    std::uint64_t valuation_then_degree;
    /// (n, gamma)-component of G_v(G_F(A))
    std::uint64_t degree_then_valuation;
    bool equal() const { return valuation_then_degree == degree_then_valuation; }
};

/// Left: G_v(A)_gamma = Abar t^gamma, filtered by degree; its n-th layer is
/// spanned by the standard monomials of the reduced spec of degree exactly n.
/// Right: G_F(A) is presented by the leading relations, its O_v-form reduced
/// mod m_v is a graded k_v-algebra whose degree-n dimension is computed in
/// the free algebra.
template <ValuedField V>
std::vector<BidegreeRow> double_graded_dims(const GaussContext<V>& ctx, std::size_t max_degree, std::int64_t gamma_lo,
                                            std::int64_t gamma_hi)
{
    const auto increments = filtered_dims(ctx.reduced(), max_degree);
    const auto& valued = ctx.valued_field();
    std::vector<FreePoly<typename V::ResidueField>> leading;
    const auto relations = pbw_relations(ctx.spec());
    for (const auto& rel : relations.relations()) {
        const auto top = homogeneous_component(rel, static_cast<std::size_t>(rel.degree()));
        leading.push_back(map_coefficients(top, valued.residue_field(), [&](const auto& c) { return valued.residue(c); }));
    }
    std::erase_if(leading, [](const auto& p) { return p.is_zero(); });
    const Presentation<typename V::ResidueField> graded(valued.residue_field(), ctx.spec().names(), std::move(leading));
    const auto right = hilbert_graded(graded, max_degree);
    std::vector<BidegreeRow> rows;
    for (std::int64_t gamma = gamma_lo; gamma <= gamma_hi; ++gamma)
        for (std::size_t n = 0; n <= max_degree; ++n) {
            const std::uint64_t left = n == 0 ? increments[0] : increments[n] - increments[n - 1];
            rows.push_back({gamma, n, left, right[n]});
        }
    return rows;
}

} // namespace grval
