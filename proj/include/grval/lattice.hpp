#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "grval/valued_field.hpp"

namespace grval {

template <Field F>
using Vector = std::vector<typename F::Element>;

namespace detail {

/// Reduced row-echelon form over F; returns the nonzero rows and their pivot columns.
template <Field F>
std::pair<std::vector<Vector<F>>, std::vector<std::size_t>> rref(const F& field, std::vector<Vector<F>> rows,
                                                                 std::size_t columns)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t col = 0; col < columns && r < rows.size(); ++col) {
        std::size_t pick = r;
        while (pick < rows.size() && field.is_zero(rows[pick][col])) ++pick;
        if (pick == rows.size()) continue;
        std::swap(rows[r], rows[pick]);
        const auto inv = field.inv(rows[r][col]);
        for (auto& x : rows[r]) x = field.mul(x, inv);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || field.is_zero(rows[i][col])) continue;
            const auto f = rows[i][col];
            for (std::size_t c = 0; c < columns; ++c) rows[i][c] = field.sub(rows[i][c], field.mul(f, rows[r][c]));
        }
        pivots.push_back(col);
        ++r;
    }
    rows.resize(r);
    return {std::move(rows), std::move(pivots)};
}

template <Field F>
std::size_t rank(const F& field, const std::vector<Vector<F>>& rows, std::size_t columns)
{
    return rref(field, rows, columns).first.size();
}

/// Basis of {x in F^columns : row . x = 0 for every row}.
template <Field F>
std::vector<Vector<F>> kernel(const F& field, const std::vector<Vector<F>>& rows, std::size_t columns)
{
    const auto [reduced, pivots] = rref(field, rows, columns);
    std::vector<Vector<F>> out;
    std::size_t p = 0;
    for (std::size_t free = 0; free < columns; ++free) {
        if (p < pivots.size() && pivots[p] == free) {
            ++p;
            continue;
        }
        Vector<F> x(columns, field.zero());
        x[free] = field.one();
        for (std::size_t t = 0; t < pivots.size(); ++t) x[pivots[t]] = field.neg(reduced[t][free]);
        out.push_back(std::move(x));
    }
    return out;
}

/// Solves sum_i x_i rows[i] = target; nullopt if target is not in the span.
/// Rows must be linearly independent for the solution to be unique.
template <Field F>
std::optional<Vector<F>> solve_left(const F& field, const std::vector<Vector<F>>& rows, const Vector<F>& target)
{
    const std::size_t n = rows.size(), d = target.size();
    // equations indexed by coordinates: columns = unknowns plus right side
    std::vector<Vector<F>> eqs(d, Vector<F>(n + 1, field.zero()));
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t i = 0; i < n; ++i) eqs[j][i] = rows[i][j];
        eqs[j][n] = target[j];
    }
    const auto [reduced, pivots] = rref(field, eqs, n + 1);
    Vector<F> x(n, field.zero());
    for (std::size_t t = 0; t < pivots.size(); ++t) {
        if (pivots[t] == n) return std::nullopt;
        x[pivots[t]] = reduced[t][n];
    }
    return x;
}

} // namespace detail

/// A finitely generated O_v-submodule of K^d. Over a DVR it is free; the
/// cached basis is in echelon form with pivots normalized to powers of pi.
template <ValuedField V>
class Lattice {
public:
    using K = typename V::BaseField;
    using Vec = Vector<K>;

    Lattice(V valued, std::size_t ambient, std::vector<Vec> generators)
        : valued_(std::move(valued)), ambient_(ambient), generators_(std::move(generators))
    {
        for (const auto& g : generators_)
            if (g.size() != ambient_)
                throw Error(Errc::DimensionMismatch, "vector of length " + std::to_string(g.size()) +
                                                         " in ambient dimension " + std::to_string(ambient_));
        echelonize();
    }

    /// O_v^d
    static Lattice standard(V valued, std::size_t d)
    {
        std::vector<Vec> gens;
        for (std::size_t i = 0; i < d; ++i) {
            Vec e(d, valued.base().zero());
            e[i] = valued.base().one();
            gens.push_back(std::move(e));
        }
        return Lattice(std::move(valued), d, std::move(gens));
    }

    const V& valued_field() const { return valued_; }
    std::size_t ambient() const { return ambient_; }
    std::size_t rank() const { return basis_.size(); }
    const std::vector<Vec>& basis() const { return basis_; }
    const std::vector<Vec>& generators() const { return generators_; }
    const std::vector<std::size_t>& pivot_columns() const { return pivots_; }

    /// c with w = sum_i c_i basis_i; nullopt if w is outside the K-span.
    std::optional<Vec> coordinates(Vec w) const
    {
        const auto& f = valued_.base();
        if (w.size() != ambient_) throw Error(Errc::DimensionMismatch, "vector has the wrong length");
        Vec c;
        for (std::size_t t = 0; t < basis_.size(); ++t) {
            const auto coef = f.div(w[pivots_[t]], basis_[t][pivots_[t]]);
            for (std::size_t j = 0; j < ambient_; ++j) w[j] = f.sub(w[j], f.mul(coef, basis_[t][j]));
            c.push_back(coef);
        }
        for (const auto& x : w)
            if (!f.is_zero(x)) return std::nullopt;
        return c;
    }

    /// Solvability of B c = w with every c_i in O_v.
    bool contains(const Vec& w) const
    {
        auto c = coordinates(w);
        if (!c) return false;
        return std::all_of(c->begin(), c->end(), [&](const auto& x) { return in_valuation_ring(valued_, x); });
    }

private:
    /// Valuation-pivot elimination: per column, the remaining row with the
    /// entry of least valuation (first on ties) is the pivot; O_v-multiples
    /// of it clear the column below.
    void echelonize()
    {
        const auto& f = valued_.base();
        std::vector<Vec> rows;
        for (const auto& g : generators_)
            if (std::any_of(g.begin(), g.end(), [&](const auto& x) { return !f.is_zero(x); })) rows.push_back(g);
        std::size_t r = 0;
        for (std::size_t col = 0; col < ambient_ && r < rows.size(); ++col) {
            std::optional<std::size_t> pick;
            Value best = Value::infinity();
            for (std::size_t i = r; i < rows.size(); ++i) {
                const Value v = valued_.valuation(rows[i][col]);
                if (v.is_finite() && (!pick || v < best)) {
                    pick = i;
                    best = v;
                }
            }
            if (!pick) continue;
            std::swap(rows[r], rows[*pick]);
            const auto unit_inv = f.div(valued_.uniformizer_power(best.get()), rows[r][col]);
            for (auto& x : rows[r]) x = f.mul(x, unit_inv);
            for (std::size_t i = r + 1; i < rows.size(); ++i) {
                if (f.is_zero(rows[i][col])) continue;
                const auto factor = f.div(rows[i][col], rows[r][col]);
                for (std::size_t j = 0; j < ambient_; ++j) rows[i][j] = f.sub(rows[i][j], f.mul(factor, rows[r][j]));
            }
            pivots_.push_back(col);
            ++r;
        }
        rows.resize(r);
        basis_ = std::move(rows);
    }

    V valued_;
    std::size_t ambient_;
    std::vector<Vec> generators_;
    std::vector<Vec> basis_;
    std::vector<std::size_t> pivots_;
};

template <ValuedField V>
Lattice<V> lattice_basis(const V& K, std::size_t ambient, std::vector<Vector<typename V::BaseField>> gens)
{
    return Lattice<V>(K, ambient, std::move(gens));
}

/// K-span(M) equals the span of subspace.
template <ValuedField V>
bool is_lattice_in(const Lattice<V>& M, const std::vector<Vector<typename V::BaseField>>& subspace)
{
    const auto& f = M.valued_field().base();
    for (const auto& v : subspace)
        if (v.size() != M.ambient()) throw Error(Errc::DimensionMismatch, "subspace vector has the wrong length");
    auto all = M.basis();
    all.insert(all.end(), subspace.begin(), subspace.end());
    const auto rv = detail::rank(f, subspace, M.ambient());
    return M.rank() == rv && detail::rank(f, all, M.ambient()) == rv;
}

/// M intersected with the subspace: V' is cut out by linear forms, the
/// coefficient vectors c with (c B) in V' form a subspace W of K^r, and
/// W meets O_v^r in a free module read off from an O_v-unimodular column
/// reduction of a basis of W.
template <ValuedField V>
Lattice<V> intersect_with_subspace(const Lattice<V>& M, const std::vector<Vector<typename V::BaseField>>& subspace)
{
    using K = typename V::BaseField;
    const auto& valued = M.valued_field();
    const auto& f = valued.base();
    const std::size_t d = M.ambient(), r = M.rank();
    for (const auto& v : subspace)
        if (v.size() != d) throw Error(Errc::DimensionMismatch, "subspace vector has the wrong length");
    if (r == 0) return Lattice<V>(valued, d, {});

    const auto forms = detail::kernel(f, subspace, d);
    // A[i][l] = basis_i . form_l ; W = {c : c A = 0}
    std::vector<Vector<K>> at(forms.size(), Vector<K>(r, f.zero()));
    for (std::size_t l = 0; l < forms.size(); ++l)
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < d; ++j) at[l][i] = f.add(at[l][i], f.mul(M.basis()[i][j], forms[l][j]));
    auto S = detail::kernel(f, at, r);
    const std::size_t s = S.size();

    // unimodular column reduction S U = [T | 0], tracking U^-1
    std::vector<Vector<K>> u_inv(r, Vector<K>(r, f.zero()));
    for (std::size_t i = 0; i < r; ++i) u_inv[i][i] = f.one();
    for (std::size_t t = 0; t < s; ++t) {
        std::optional<std::size_t> pick;
        Value best = Value::infinity();
        for (std::size_t c = t; c < r; ++c) {
            const Value v = valued.valuation(S[t][c]);
            if (v.is_finite() && (!pick || v < best)) {
                pick = c;
                best = v;
            }
        }
        if (!pick) throw std::logic_error("kernel basis is not of full row rank");
        for (auto& row : S) std::swap(row[t], row[*pick]);
        std::swap(u_inv[t], u_inv[*pick]);
        for (std::size_t c = t + 1; c < r; ++c) {
            if (f.is_zero(S[t][c])) continue;
            const auto factor = f.div(S[t][c], S[t][t]);
            for (auto& row : S) row[c] = f.sub(row[c], f.mul(factor, row[t]));
            for (std::size_t j = 0; j < r; ++j) u_inv[t][j] = f.add(u_inv[t][j], f.mul(factor, u_inv[c][j]));
        }
    }
    std::vector<Vector<K>> gens;
    for (std::size_t t = 0; t < s; ++t) {
        Vector<K> w(d, f.zero());
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < d; ++j) w[j] = f.add(w[j], f.mul(u_inv[t][i], M.basis()[i][j]));
        gens.push_back(std::move(w));
    }
    return Lattice<V>(valued, d, std::move(gens));
}

/// Standard coordinates completing the subspace, lexicographically first.
template <Field F>
std::vector<std::size_t> complement_coordinates(const F& f, const std::vector<Vector<F>>& subspace, std::size_t d)
{
    std::vector<Vector<F>> acc = detail::rref(f, subspace, d).first;
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < d; ++i) {
        Vector<F> e(d, f.zero());
        e[i] = f.one();
        auto trial = acc;
        trial.push_back(e);
        if (detail::rank(f, trial, d) > acc.size()) {
            acc.push_back(std::move(e));
            chosen.push_back(i);
        }
    }
    return chosen;
}

/// Image of M in K^d / V', identified with K^q through the complement coordinates.
template <ValuedField V>
Lattice<V> quotient_lattice(const Lattice<V>& M, const std::vector<Vector<typename V::BaseField>>& subspace)
{
    using K = typename V::BaseField;
    const auto& f = M.valued_field().base();
    const std::size_t d = M.ambient();
    auto sub_basis = detail::rref(f, subspace, d).first;
    const auto comp = complement_coordinates(f, sub_basis, d);
    auto full = sub_basis;
    for (auto i : comp) {
        Vector<K> e(d, f.zero());
        e[i] = f.one();
        full.push_back(std::move(e));
    }
    std::vector<Vector<K>> images;
    for (const auto& b : M.basis()) {
        const auto x = detail::solve_left(f, full, b);
        if (!x) throw std::logic_error("completed basis does not span the ambient space");
        images.emplace_back(x->begin() + static_cast<std::ptrdiff_t>(sub_basis.size()), x->end());
    }
    return Lattice<V>(M.valued_field(), comp.size(), std::move(images));
}

/// Sorted e_i with M/N = sum O_v / pi^{e_i}; all e_i >= 0 iff N is inside M.
template <ValuedField V>
std::vector<std::int64_t> elementary_divisors(const Lattice<V>& N, const Lattice<V>& M)
{
    using K = typename V::BaseField;
    const auto& valued = M.valued_field();
    const auto& f = valued.base();
    if (N.ambient() != M.ambient()) throw Error(Errc::DimensionMismatch, "lattices in different ambient spaces");
    if (N.rank() != M.rank()) throw Error(Errc::SpanMismatch, "lattices of different rank");
    std::vector<Vector<K>> C;
    for (const auto& b : N.basis()) {
        auto c = M.coordinates(b);
        if (!c) throw Error(Errc::SpanMismatch, "K-span of N is not inside K-span of M");
        C.push_back(std::move(*c));
    }
    const std::size_t r = C.size();
    std::vector<std::int64_t> out;
    for (std::size_t t = 0; t < r; ++t) {
        std::size_t pi = t, pj = t;
        Value best = Value::infinity();
        for (std::size_t i = t; i < r; ++i)
            for (std::size_t j = t; j < r; ++j) {
                const Value v = valued.valuation(C[i][j]);
                if (v < best) {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        std::swap(C[t], C[pi]);
        for (auto& row : C) std::swap(row[t], row[pj]);
        // pivot has least valuation, so all quotients below lie in O_v
        for (std::size_t i = t + 1; i < r; ++i) {
            if (f.is_zero(C[i][t])) continue;
            const auto factor = f.div(C[i][t], C[t][t]);
            for (std::size_t j = t; j < r; ++j) C[i][j] = f.sub(C[i][j], f.mul(factor, C[t][j]));
        }
        for (std::size_t j = t + 1; j < r; ++j) {
            if (f.is_zero(C[t][j])) continue;
            const auto factor = f.div(C[t][j], C[t][t]);
            for (std::size_t i = t; i < r; ++i) C[i][j] = f.sub(C[i][j], f.mul(factor, C[i][t]));
        }
        out.push_back(best.get());
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct ReductionDim {
    std::size_t dim;
    bool unramified;
};

/// dim_{k_v} M / m_v M, equal to the rank since M is free.
template <ValuedField V>
ReductionDim reduction_dim(const Lattice<V>& M)
{
    return {M.rank(), M.rank() == M.ambient()};
}

} // namespace grval
