#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "grval/hilbert.hpp"
#include "grval/pbw.hpp"
#include "grval/valfilt.hpp"
#include "grval/valued_field.hpp"

namespace grval {

/// pi^{-m} p with m the minimum coefficient valuation: coefficients in O_v,
/// not all in m_v.
template <ValuedField V>
FreePoly<typename V::BaseField> normalize_relation(const V& K, const FreePoly<typename V::BaseField>& p)
{
    if (p.is_zero()) throw Error(Errc::ZeroRelation, "cannot normalize the zero relation");
    Value m = Value::infinity();
    for (const auto& [w, c] : p.terms()) m = min(m, K.valuation(c));
    return p.scaled(K.uniformizer_power(-m.get()));
}

/// Normalizes every relation, then reduces coefficients into k_v.
template <ValuedField V>
Presentation<typename V::ResidueField> reduce_presentation(const V& K, const Presentation<typename V::BaseField>& pres)
{
    std::vector<FreePoly<typename V::ResidueField>> reduced;
    for (const auto& rel : pres.relations()) {
        auto r = map_coefficients(normalize_relation(K, rel), K.residue_field(), [&](const auto& c) { return K.residue(c); });
        // normalization leaves a unit coefficient, so r cannot vanish
        if (!r.is_zero()) reduced.push_back(std::move(r));
    }
    return Presentation<typename V::ResidueField>(K.residue_field(), pres.generators(), std::move(reduced));
}

struct ReductionRow {
    std::size_t n;
    std::uint64_t dim_over_k;
    std::uint64_t dim_over_residue;
    bool equal() const { return dim_over_k == dim_over_residue; }
};

/// Degreewise comparison of Hilbert functions over K and over k_v.
struct ReductionReport {
    std::vector<ReductionRow> rows;
    std::size_t max_degree = 0;
    /// first degree where the dimensions differ
    std::optional<std::size_t> fails_at;

    bool good_reduction() const { return !fails_at; }
    /// For value group Z, Lambda is a graded reductor through max_degree
    /// exactly when the reduction is good through max_degree.
    bool graded_reductor() const { return good_reduction(); }
    std::string verdict() const
    {
        return fails_at ? "FailsAtDegree(" + std::to_string(*fails_at) + ")" : "GoodReduction";
    }
};

template <ValuedField V>
ReductionReport good_reduction_check(const V& K, const Presentation<typename V::BaseField>& pres, std::size_t max_degree)
{
    if (!pres.homogeneous())
        throw Error(Errc::NonHomogeneousPresentation, "good reduction is checked on homogeneous presentations");
    if (max_degree < 1) throw Error(Errc::InvalidSpec, "max degree must be at least 1");
    const auto over_k = hilbert_graded(pres, max_degree);
    const auto over_residue = hilbert_graded(reduce_presentation(K, pres), max_degree);
    ReductionReport report;
    report.max_degree = max_degree;
    for (std::size_t n = 0; n <= max_degree; ++n) {
        if (over_k[n] > over_residue[n])
            throw std::logic_error("reduced ideal larger than the ideal over K in degree " + std::to_string(n));
        report.rows.push_back({n, over_k[n], over_residue[n]});
        if (over_k[n] != over_residue[n] && !report.fails_at) report.fails_at = n;
    }
    return report;
}

/// Top-degree homogeneous component of each relation.
template <Field F>
std::vector<FreePoly<F>> leading_relations(const Presentation<F>& pres)
{
    std::vector<FreePoly<F>> out;
    for (const auto& rel : pres.relations())
        out.push_back(homogeneous_component(rel, static_cast<std::size_t>(rel.degree())));
    return out;
}

struct GradedRelationRow {
    std::size_t n;
    /// dim_n K<X>/(leading relations)
    std::uint64_t leading_quotient;
    /// dim F_n A - dim F_{n-1} A
    std::uint64_t filtered_increment;
    bool equal() const { return leading_quotient == filtered_increment; }
};

/// Compares the graded algebra presented by the leading relations of the
/// defining equations with the associated graded of the degree filtration.
template <Field F>
std::vector<GradedRelationRow> graded_relation_check(const PbwSpec<F>& spec, std::size_t max_degree)
{
    const auto pres = pbw_relations(spec);
    const Presentation<F> leading(spec.field(), spec.names(), leading_relations(pres));
    const auto left = hilbert_graded(leading, max_degree);
    const auto dims = filtered_dims(spec, max_degree);
    std::vector<GradedRelationRow> rows;
    for (std::size_t n = 0; n <= max_degree; ++n)
        rows.push_back({n, left[n], n == 0 ? dims[0] : dims[n] - dims[n - 1]});
    return rows;
}

template <ValuedField V>
std::vector<GradedRelationRow> graded_relation_check(const GaussContext<V>& ctx, std::size_t max_degree)
{
    return graded_relation_check(ctx.spec(), max_degree);
}

// ---------------------------------------------------------------------------
// Lie algebras

/// Lie algebra with basis names and constants [x_i, x_j] = sum_k lambda[i][j][k] x_k.
template <Field F>
struct LieData {
    F field;
    std::vector<std::string> names;
    StructureConstants<F> constants;

    LieData(F f, std::vector<std::string> n, StructureConstants<F> c)
        : field(std::move(f)), names(std::move(n)), constants(std::move(c))
    {
        if (names.size() != constants.size()) throw Error(Errc::DimensionMismatch, "need one name per basis vector");
        check_antisymmetric(field, constants);
    }

    std::size_t dimension() const { return names.size(); }
};

/// Fills entries i > j from the upper triangle. Lower entries given as
/// nullopt are completed; given ones must agree with antisymmetry.
template <Field F>
StructureConstants<F> complete_antisymmetric(const F& field,
                                             const std::vector<std::vector<std::optional<std::vector<typename F::Element>>>>& partial)
{
    const std::size_t g = partial.size();
    StructureConstants<F> full(g, std::vector<std::vector<typename F::Element>>(g, std::vector<typename F::Element>(g, field.zero())));
    for (std::size_t i = 0; i < g; ++i) {
        if (partial[i].size() != g) throw Error(Errc::DimensionMismatch, "constants must be a g x g array of vectors");
        for (std::size_t j = 0; j < g; ++j)
            if (partial[i][j]) {
                if (partial[i][j]->size() != g) throw Error(Errc::DimensionMismatch, "bracket vectors must have g entries");
                full[i][j] = *partial[i][j];
            }
    }
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (!partial[i][j] || !partial[j][i]) {
                auto& src = partial[j][i] ? full[j][i] : full[i][j];
                auto& dst = partial[j][i] ? full[i][j] : full[j][i];
                for (std::size_t k = 0; k < g; ++k) dst[k] = field.neg(src[k]);
            }
    check_antisymmetric(field, full);
    return full;
}

/// Triples i < j < k where [[x_i,x_j],x_k] + [[x_j,x_k],x_i] + [[x_k,x_i],x_j] != 0.
template <Field F>
std::vector<std::array<std::size_t, 3>> jacobi_failures(const F& field, const StructureConstants<F>& lambda)
{
    const std::size_t g = lambda.size();
    auto nested = [&](std::size_t a, std::size_t b, std::size_t c, std::vector<typename F::Element>& acc) {
        for (std::size_t m = 0; m < g; ++m) {
            if (field.is_zero(lambda[a][b][m])) continue;
            for (std::size_t l = 0; l < g; ++l) acc[l] = field.add(acc[l], field.mul(lambda[a][b][m], lambda[m][c][l]));
        }
    };
    std::vector<std::array<std::size_t, 3>> out;
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = i + 1; j < g; ++j)
            for (std::size_t k = j + 1; k < g; ++k) {
                std::vector<typename F::Element> acc(g, field.zero());
                nested(i, j, k, acc);
                nested(j, k, i, acc);
                nested(k, i, j, acc);
                for (const auto& x : acc)
                    if (!field.is_zero(x)) {
                        out.push_back({i, j, k});
                        break;
                    }
            }
    return out;
}

template <ValuedField V>
struct LieReduction {
    /// basis rescaled by pi^scale; constants multiplied by pi^scale
    std::int64_t scale;
    LieData<typename V::BaseField> scaled;
    LieData<typename V::ResidueField> reduced;
    bool jacobi_input;
    bool jacobi_reduced;
    /// every reduced constant vanishes (abelian reduction)
    bool degenerate;
    PbwSpec<typename V::ResidueField> enveloping;
};

/// Rescales x_i -> pi^s x_i with s minimal such that all constants lie in
/// O_v and one is a unit, reduces modulo m_v and builds U(gbar).
template <ValuedField V>
LieReduction<V> lie_reduce(const V& K, const LieData<typename V::BaseField>& data)
{
    const auto& base = K.base();
    if (!jacobi_failures(base, data.constants).empty())
        throw Error(Errc::JacobiFailure, "input structure constants violate the Jacobi identity");
    Value m = Value::infinity();
    for (const auto& row : data.constants)
        for (const auto& vec : row)
            for (const auto& c : vec) m = min(m, K.valuation(c));
    const std::int64_t s = m.is_infinite() ? 0 : -m.get();
    const auto factor = K.uniformizer_power(s);
    StructureConstants<typename V::BaseField> scaled = data.constants;
    StructureConstants<typename V::ResidueField> reduced(
        data.dimension(), std::vector<std::vector<typename V::ResidueField::Element>>(data.dimension()));
    bool degenerate = true;
    for (std::size_t i = 0; i < data.dimension(); ++i)
        for (std::size_t j = 0; j < data.dimension(); ++j)
            for (auto& c : scaled[i][j]) {
                c = base.mul(c, factor);
                reduced[i][j].push_back(K.residue(c));
                if (!K.residue_field().is_zero(reduced[i][j].back())) degenerate = false;
            }
    LieData<typename V::BaseField> scaled_data(base, data.names, std::move(scaled));
    LieData<typename V::ResidueField> reduced_data(K.residue_field(), data.names, std::move(reduced));
    const bool jacobi_reduced = jacobi_failures(K.residue_field(), reduced_data.constants).empty();
    auto env = make_enveloping(K.residue_field(), data.names, reduced_data.constants);
    return LieReduction<V>{s, std::move(scaled_data), std::move(reduced_data), true, jacobi_reduced, degenerate, std::move(env)};
}

} // namespace grval
