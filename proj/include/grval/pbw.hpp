#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "grval/hilbert.hpp"
#include "grval/ncpoly.hpp"
#include "grval/parser.hpp"

namespace grval {

/// Exponent vector (a_1..a_g) of the standard monomial x_1^a_1 ... x_g^a_g.
using Exponents = std::vector<std::uint32_t>;

inline std::uint32_t total_degree(const Exponents& e)
{
    std::uint32_t d = 0;
    for (auto a : e) d += a;
    return d;
}

inline Word standard_word(const Exponents& e)
{
    Word w;
    for (std::uint32_t g = 0; g < e.size(); ++g) w.insert(w.end(), e[g], g);
    return w;
}

/// Degree-lexicographic order on the sorted words of standard monomials.
/// With equal degree, a larger exponent at the first differing generator
/// means a smaller word (x^2 < xy).
struct MonomialLess {
    bool operator()(const Exponents& a, const Exponents& b) const
    {
        const auto da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] > b[i];
        return false;
    }
};

/// Element of a PBW algebra in the standard-monomial basis.
template <Field F>
class PbwElement {
public:
    using Coef = typename F::Element;
    using Terms = std::map<Exponents, Coef, MonomialLess>;

    PbwElement(F field, std::size_t generators) : field_(std::move(field)), generators_(generators) {}

    static PbwElement monomial(F field, Exponents e, const Coef& c)
    {
        PbwElement r(std::move(field), e.size());
        r.add_term(std::move(e), c);
        return r;
    }
    static PbwElement constant(F field, std::size_t generators, const Coef& c)
    {
        return monomial(std::move(field), Exponents(generators, 0), c);
    }

    const F& field() const { return field_; }
    std::size_t generators() const { return generators_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add_term(Exponents e, const Coef& c)
    {
        if (e.size() != generators_) throw Error(Errc::SpecMismatch, "exponent vector of wrong length");
        if (field_.is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(std::move(e), c);
        if (!inserted) {
            it->second = field_.add(it->second, c);
            if (field_.is_zero(it->second)) terms_.erase(it);
        }
    }

    Coef coefficient(const Exponents& e) const
    {
        auto it = terms_.find(e);
        return it == terms_.end() ? field_.zero() : it->second;
    }

    /// -1 for zero
    int degree() const { return terms_.empty() ? -1 : static_cast<int>(total_degree(terms_.rbegin()->first)); }

    PbwElement scaled(const Coef& s) const
    {
        PbwElement r(field_, generators_);
        if (field_.is_zero(s)) return r;
        for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, field_.mul(c, s));
        return r;
    }

    void add_scaled(const PbwElement& o, const Coef& s)
    {
        check_compatible(o);
        for (const auto& [e, c] : o.terms_) add_term(e, field_.mul(c, s));
    }

    PbwElement& operator+=(const PbwElement& o)
    {
        check_compatible(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    PbwElement& operator-=(const PbwElement& o)
    {
        check_compatible(o);
        for (const auto& [e, c] : o.terms_) add_term(e, field_.neg(c));
        return *this;
    }
    friend PbwElement operator+(PbwElement a, const PbwElement& b) { return a += b; }
    friend PbwElement operator-(PbwElement a, const PbwElement& b) { return a -= b; }

    friend bool operator==(const PbwElement& a, const PbwElement& b)
    {
        if (!(a.field_ == b.field_) || a.generators_ != b.generators_ || a.terms_.size() != b.terms_.size())
            return false;
        auto it = b.terms_.begin();
        for (const auto& [e, c] : a.terms_) {
            if (e != it->first || !a.field_.equal(c, it->second)) return false;
            ++it;
        }
        return true;
    }

    FreePoly<F> to_free_poly() const
    {
        FreePoly<F> p(field_, generators_);
        for (const auto& [e, c] : terms_) p.add_term(standard_word(e), c);
        return p;
    }

    std::string to_string(const std::vector<std::string>& names) const
    {
        std::vector<std::pair<std::string, Coef>> out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
            out.emplace_back(detail::word_string(standard_word(it->first), names), it->second);
        return detail::format_terms(field_, out);
    }

    void check_compatible(const PbwElement& o) const
    {
        if (!(field_ == o.field_) || generators_ != o.generators_)
            throw Error(Errc::SpecMismatch, "PBW elements from different algebras");
    }

private:
    F field_;
    std::size_t generators_;
    Terms terms_;
};

/// x_high * x_low = coefficient * x_low * x_high + tail, high > low.
template <Field F>
struct CommutationRule {
    typename F::Element coefficient;
    PbwElement<F> tail;
};

/// An algebra given by ordered generators and one commutation rule per pair.
/// Tails have degree <= 2 and every tail monomial is deglex-smaller than
/// x_low * x_high, so rewriting terminates.
template <Field F>
class PbwSpec {
public:
    using Coef = typename F::Element;
    using Rule = CommutationRule<F>;
    using RuleMap = std::map<std::pair<std::uint32_t, std::uint32_t>, Rule>;

    /// Pairs missing from rules commute. allow_zero_coefficient admits rules
    /// x_j x_i -> tail, which arise when reducing modulo m_v.
    PbwSpec(F field, std::vector<std::string> names, RuleMap rules, bool allow_zero_coefficient = false)
        : field_(std::move(field)), names_(std::move(names))
    {
        const auto g = static_cast<std::uint32_t>(names_.size());
        if (g == 0) throw Error(Errc::InvalidArity, "PBW algebra needs at least one generator");
        for (std::uint32_t j = 0; j < g; ++j)
            for (std::uint32_t i = 0; i < j; ++i) rules_.emplace_back(Rule{field_.one(), PbwElement<F>(field_, g)});
        for (auto& [key, rule] : rules) {
            const auto [j, i] = key;
            if (j >= g || i >= j) throw Error(Errc::InvalidSpec, "rule must rewrite x_j*x_i with j > i");
            if (field_.is_zero(rule.coefficient) && !allow_zero_coefficient)
                throw Error(Errc::InvalidSpec, "commutation coefficient of " + names_[j] + "*" + names_[i] + " is 0");
            if (rule.tail.generators() != g || !(rule.tail.field() == field_))
                throw Error(Errc::SpecMismatch, "tail from a different algebra");
            Exponents lead(g, 0);
            lead[i] += 1;
            lead[j] += 1;
            for (const auto& [e, c] : rule.tail.terms()) {
                if (total_degree(e) > 2)
                    throw Error(Errc::InvalidSpec, "tail of " + names_[j] + "*" + names_[i] + " has degree > 2");
                if (!MonomialLess{}(e, lead))
                    throw Error(Errc::InvalidSpec,
                                "tail of " + names_[j] + "*" + names_[i] + " is not deglex-smaller than " +
                                    names_[i] + "*" + names_[j]);
            }
            rules_[index(j, i)] = std::move(rule);
        }
    }

    const F& field() const { return field_; }
    const std::vector<std::string>& names() const { return names_; }
    std::size_t generators() const { return names_.size(); }

    const Rule& rule(std::uint32_t high, std::uint32_t low) const { return rules_.at(index(high, low)); }

    PbwElement<F> zero() const { return PbwElement<F>(field_, generators()); }
    PbwElement<F> one() const { return PbwElement<F>::constant(field_, generators(), field_.one()); }
    PbwElement<F> generator(std::uint32_t k) const
    {
        Exponents e(generators(), 0);
        e.at(k) = 1;
        return PbwElement<F>::monomial(field_, std::move(e), field_.one());
    }

    /// Rules that differ from plain commutation, for reports.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> nontrivial_rules() const
    {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
        for (std::uint32_t j = 0; j < generators(); ++j)
            for (std::uint32_t i = 0; i < j; ++i) {
                const auto& r = rule(j, i);
                if (!field_.equal(r.coefficient, field_.one()) || !r.tail.is_zero()) out.emplace_back(j, i);
            }
        return out;
    }

    /// "x_j*x_i = c*x_i*x_j + tail" for every pair, parser grammar.
    std::vector<std::string> rule_strings() const
    {
        std::vector<std::string> out;
        for (std::uint32_t j = 0; j < generators(); ++j)
            for (std::uint32_t i = 0; i < j; ++i) {
                const auto& r = rule(j, i);
                Exponents lead(generators(), 0);
                lead[i] += 1;
                lead[j] += 1;
                auto rhs = r.tail;
                rhs.add_term(lead, r.coefficient);
                out.push_back(names_[j] + "*" + names_[i] + " = " + rhs.to_string(names_));
            }
        return out;
    }

    friend bool operator==(const PbwSpec& a, const PbwSpec& b)
    {
        if (!(a.field_ == b.field_) || a.names_ != b.names_) return false;
        for (std::size_t k = 0; k < a.rules_.size(); ++k)
            if (!a.field_.equal(a.rules_[k].coefficient, b.rules_[k].coefficient) || !(a.rules_[k].tail == b.rules_[k].tail))
                return false;
        return true;
    }

private:
    static std::size_t index(std::uint32_t high, std::uint32_t low)
    {
        return static_cast<std::size_t>(high) * (high - 1) / 2 + low;
    }

    F field_;
    std::vector<std::string> names_;
    std::vector<Rule> rules_;
};

// ---------------------------------------------------------------------------
// Builders

/// Weyl algebra A_n: generators x_1..x_n, D_1..D_n (named x, D when n = 1),
/// D_i x_i = x_i D_i + 1, all other pairs commute.
template <Field F>
PbwSpec<F> make_weyl(std::size_t n, const F& field)
{
    if (n == 0) throw Error(Errc::InvalidArity, "Weyl algebra needs n >= 1");
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= n; ++i) names.push_back(n == 1 ? "x" : "x" + std::to_string(i));
    for (std::size_t i = 1; i <= n; ++i) names.push_back(n == 1 ? "D" : "D" + std::to_string(i));
    typename PbwSpec<F>::RuleMap rules;
    for (std::uint32_t i = 0; i < n; ++i)
        rules.emplace(std::pair{static_cast<std::uint32_t>(n) + i, i},
                      CommutationRule<F>{field.one(), PbwElement<F>::constant(field, 2 * n, field.one())});
    return PbwSpec<F>(field, std::move(names), std::move(rules));
}

/// Structure constants lambda[i][j][k] with [x_i, x_j] = sum_k lambda[i][j][k] x_k.
template <Field F>
using StructureConstants = std::vector<std::vector<std::vector<typename F::Element>>>;

template <Field F>
void check_antisymmetric(const F& field, const StructureConstants<F>& lambda)
{
    const std::size_t g = lambda.size();
    for (std::size_t i = 0; i < g; ++i) {
        if (lambda[i].size() != g) throw Error(Errc::DimensionMismatch, "structure constants must be g x g x g");
        for (std::size_t j = 0; j < g; ++j) {
            if (lambda[i][j].size() != g) throw Error(Errc::DimensionMismatch, "structure constants must be g x g x g");
            for (std::size_t k = 0; k < g; ++k)
                if (!field.equal(lambda[i][j][k], field.neg(lambda[j][i][k])))
                    throw Error(Errc::NotAntisymmetric, "lambda_{" + std::to_string(i + 1) + std::to_string(j + 1) +
                                                            "}^" + std::to_string(k + 1) + " != -lambda_{" +
                                                            std::to_string(j + 1) + std::to_string(i + 1) + "}^" +
                                                            std::to_string(k + 1));
        }
    }
}

/// Enveloping algebra: x_j x_i = x_i x_j + sum_k lambda_{ji}^k x_k for j > i.
template <Field F>
PbwSpec<F> make_enveloping(const F& field, std::vector<std::string> names, const StructureConstants<F>& lambda)
{
    check_antisymmetric(field, lambda);
    const std::size_t g = lambda.size();
    if (names.size() != g) throw Error(Errc::DimensionMismatch, "need one name per basis vector");
    typename PbwSpec<F>::RuleMap rules;
    for (std::uint32_t j = 0; j < g; ++j)
        for (std::uint32_t i = 0; i < j; ++i) {
            PbwElement<F> tail(field, g);
            for (std::size_t k = 0; k < g; ++k) {
                Exponents e(g, 0);
                e[k] = 1;
                tail.add_term(std::move(e), lambda[j][i][k]);
            }
            rules.emplace(std::pair{j, i}, CommutationRule<F>{field.one(), std::move(tail)});
        }
    return PbwSpec<F>(field, std::move(names), std::move(rules));
}

/// Quantum plane y x = q x y.
template <Field F>
PbwSpec<F> make_quantum_plane(const F& field, const typename F::Element& q)
{
    typename PbwSpec<F>::RuleMap rules;
    rules.emplace(std::pair{1u, 0u}, CommutationRule<F>{q, PbwElement<F>(field, 2)});
    return PbwSpec<F>(field, {"x", "y"}, std::move(rules));
}

/// Jordan plane y x = x y + x^2.
template <Field F>
PbwSpec<F> make_jordan_plane(const F& field)
{
    typename PbwSpec<F>::RuleMap rules;
    rules.emplace(std::pair{1u, 0u}, CommutationRule<F>{field.one(), PbwElement<F>::monomial(field, {2, 0}, field.one())});
    return PbwSpec<F>(field, {"x", "y"}, std::move(rules));
}

/// Builds a spec from equations "x_j*x_i = rhs" (j > i) in the parser grammar;
/// rhs must be a combination of standard monomials.
template <Field F>
PbwSpec<F> parse_pbw_spec(const F& field, std::vector<std::string> names, const std::vector<std::string>& equations)
{
    const std::size_t g = names.size();
    typename PbwSpec<F>::RuleMap rules;
    for (const auto& eq : equations) {
        auto [lhs, rhs] = parse_equation(eq, names, field);
        if (lhs.size() != 1 || lhs.terms().begin()->first.size() != 2 ||
            !field.equal(lhs.terms().begin()->second, field.one()))
            throw SyntaxError(Errc::InvalidSpec, 0, "left side of '" + eq + "' must be exactly x_j*x_i");
        const auto& w = lhs.terms().begin()->first;
        const std::uint32_t j = w[0], i = w[1];
        if (j <= i)
            throw SyntaxError(Errc::InvalidSpec, 0,
                              "left side of '" + eq + "' must be out of order (" + names[j] + " after " + names[i] + ")");
        Exponents lead(g, 0);
        lead[i] += 1;
        lead[j] += 1;
        PbwElement<F> tail(field, g);
        typename F::Element coefficient = field.zero();
        for (const auto& [word, c] : rhs.terms()) {
            if (!std::is_sorted(word.begin(), word.end()))
                throw SyntaxError(Errc::InvalidSpec, 0, "right side of '" + eq + "' contains a non-standard monomial");
            Exponents e(g, 0);
            for (auto letter : word) ++e[letter];
            if (e == lead)
                coefficient = c;
            else
                tail.add_term(std::move(e), c);
        }
        if (!rules.emplace(std::pair{j, i}, CommutationRule<F>{coefficient, std::move(tail)}).second)
            throw SyntaxError(Errc::InvalidSpec, 0, "duplicate rule for " + names[j] + "*" + names[i]);
    }
    return PbwSpec<F>(field, std::move(names), std::move(rules));
}

// ---------------------------------------------------------------------------
// Rewriting

/// Normal forms by exhaustive rewriting of the leftmost out-of-order pair.
/// Word normal forms are memoized for the lifetime of the rewriter.
template <Field F>
class Rewriter {
public:
    explicit Rewriter(const PbwSpec<F>& spec) : spec_(spec) {}

    const PbwSpec<F>& spec() const { return spec_; }

    const PbwElement<F>& word_normal_form(const Word& w)
    {
        if (auto it = memo_.find(w); it != memo_.end()) return it->second;
        std::size_t i = 0;
        while (i + 1 < w.size() && w[i] <= w[i + 1]) ++i;
        PbwElement<F> result(spec_.field(), spec_.generators());
        if (i + 1 >= w.size()) {
            Exponents e(spec_.generators(), 0);
            for (auto letter : w) ++e[letter];
            result.add_term(std::move(e), spec_.field().one());
        }
        else {
            result = rewrite_at(w, i);
        }
        return memo_.emplace(w, std::move(result)).first->second;
    }

    /// Applies the rule at the pair (pos, pos + 1) once, then normalizes.
    PbwElement<F> rewrite_at(const Word& w, std::size_t pos)
    {
        const auto& rule = spec_.rule(w[pos], w[pos + 1]);
        PbwElement<F> result(spec_.field(), spec_.generators());
        if (!spec_.field().is_zero(rule.coefficient)) {
            Word swapped = w;
            std::swap(swapped[pos], swapped[pos + 1]);
            result.add_scaled(word_normal_form(swapped), rule.coefficient);
        }
        for (const auto& [e, c] : rule.tail.terms()) {
            Word replaced(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos));
            const Word mid = standard_word(e);
            replaced.insert(replaced.end(), mid.begin(), mid.end());
            replaced.insert(replaced.end(), w.begin() + static_cast<std::ptrdiff_t>(pos + 2), w.end());
            result.add_scaled(word_normal_form(replaced), c);
        }
        return result;
    }

    PbwElement<F> normal_form(const FreePoly<F>& f)
    {
        if (f.arity() != spec_.generators() || !(f.field() == spec_.field()))
            throw Error(Errc::SpecMismatch, "polynomial does not match the algebra");
        PbwElement<F> result(spec_.field(), spec_.generators());
        for (const auto& [w, c] : f.terms()) result.add_scaled(word_normal_form(w), c);
        return result;
    }

    PbwElement<F> multiply(const PbwElement<F>& a, const PbwElement<F>& b)
    {
        check(a);
        check(b);
        PbwElement<F> result(spec_.field(), spec_.generators());
        for (const auto& [ea, ca] : a.terms())
            for (const auto& [eb, cb] : b.terms()) {
                Word w = standard_word(ea);
                const Word wb = standard_word(eb);
                w.insert(w.end(), wb.begin(), wb.end());
                result.add_scaled(word_normal_form(w), spec_.field().mul(ca, cb));
            }
        return result;
    }

private:
    void check(const PbwElement<F>& a) const
    {
        if (a.generators() != spec_.generators() || !(a.field() == spec_.field()))
            throw Error(Errc::SpecMismatch, "element does not belong to this algebra");
    }

    const PbwSpec<F>& spec_;
    std::map<Word, PbwElement<F>> memo_;
};

template <Field F>
PbwElement<F> normal_form(const PbwSpec<F>& spec, const FreePoly<F>& f)
{
    return Rewriter<F>(spec).normal_form(f);
}

template <Field F>
PbwElement<F> pbw_multiply(const PbwSpec<F>& spec, const PbwElement<F>& a, const PbwElement<F>& b)
{
    return Rewriter<F>(spec).multiply(a, b);
}

/// Parses an expression in the generators and returns its normal form.
template <Field F>
PbwElement<F> parse_element(const PbwSpec<F>& spec, std::string_view src)
{
    return normal_form(spec, parse_poly(src, spec.names(), spec.field()));
}

// ---------------------------------------------------------------------------
// Confluence

template <Field F>
struct ConfluenceFailure {
    /// generators in ascending order: the overlap word is x_k x_j x_i
    std::uint32_t i, j, k;
    /// rewriting x_k*x_j first, respectively x_j*x_i first
    PbwElement<F> left;
    PbwElement<F> right;
};

template <Field F>
struct ConfluenceResult {
    std::vector<ConfluenceFailure<F>> failures;
    std::size_t triples_checked = 0;
    bool pass() const { return failures.empty(); }
};

/// Resolves every overlap x_k x_j x_i (k > j > i) both ways.
template <Field F>
ConfluenceResult<F> confluence_check(const PbwSpec<F>& spec)
{
    ConfluenceResult<F> result;
    Rewriter<F> rw(spec);
    const auto g = static_cast<std::uint32_t>(spec.generators());
    for (std::uint32_t i = 0; i < g; ++i)
        for (std::uint32_t j = i + 1; j < g; ++j)
            for (std::uint32_t k = j + 1; k < g; ++k) {
                const Word w{k, j, i};
                auto left = rw.rewrite_at(w, 0);
                auto right = rw.rewrite_at(w, 1);
                ++result.triples_checked;
                if (!(left == right)) result.failures.push_back({i, j, k, std::move(left), std::move(right)});
            }
    return result;
}

/// dim F_n A = number of standard monomials of degree <= n, n = 0..max_degree.
template <Field F>
std::vector<std::uint64_t> filtered_dims(const PbwSpec<F>& spec, std::size_t max_degree)
{
    // exact[d] = monomials of degree exactly d, built one generator at a time
    std::vector<std::uint64_t> exact(max_degree + 1, 0);
    exact[0] = 1;
    for (std::size_t g = 0; g < spec.generators(); ++g)
        for (std::size_t d = 1; d <= max_degree; ++d) exact[d] += exact[d - 1];
    std::vector<std::uint64_t> dims(max_degree + 1);
    std::uint64_t acc = 0;
    for (std::size_t d = 0; d <= max_degree; ++d) dims[d] = acc += exact[d];
    return dims;
}

/// The defining equations as relations x_j x_i - c x_i x_j - tail.
template <Field F>
Presentation<F> pbw_relations(const PbwSpec<F>& spec)
{
    std::vector<FreePoly<F>> rels;
    const auto g = static_cast<std::uint32_t>(spec.generators());
    for (std::uint32_t j = 0; j < g; ++j)
        for (std::uint32_t i = 0; i < j; ++i) {
            const auto& r = spec.rule(j, i);
            FreePoly<F> p(spec.field(), g);
            p.add_term({j, i}, spec.field().one());
            p.add_term({i, j}, spec.field().neg(r.coefficient));
            p -= r.tail.to_free_poly();
            rels.push_back(std::move(p));
        }
    return Presentation<F>(spec.field(), spec.names(), std::move(rels));
}

/// Random element: up to max_terms monomials of degree <= max_degree with
/// coefficients from field.random(height).
template <Field F>
PbwElement<F> random_element(const PbwSpec<F>& spec, std::mt19937_64& rng, std::int64_t height,
                             std::uint32_t max_degree, std::size_t max_terms = 4)
{
    PbwElement<F> a(spec.field(), spec.generators());
    const auto terms = std::uniform_int_distribution<std::size_t>(1, max_terms)(rng);
    for (std::size_t t = 0; t < terms; ++t) {
        Exponents e(spec.generators(), 0);
        const auto deg = std::uniform_int_distribution<std::uint32_t>(0, max_degree)(rng);
        std::uniform_int_distribution<std::size_t> pick(0, spec.generators() - 1);
        for (std::uint32_t d = 0; d < deg; ++d) ++e[pick(rng)];
        a.add_term(std::move(e), spec.field().random(rng, height));
    }
    return a;
}

} // namespace grval
