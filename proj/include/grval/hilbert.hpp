#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "grval/linalg.hpp"
#include "grval/ncpoly.hpp"
#include "grval/parallel.hpp"

namespace grval {

/// Finitely presented algebra K<X>/(relations).
template <Field F>
class Presentation {
public:
    Presentation(F field, std::vector<std::string> generators, std::vector<FreePoly<F>> relations)
        : field_(std::move(field)), generators_(std::move(generators)), relations_(std::move(relations))
    {
        for (const auto& r : relations_) {
            if (r.is_zero()) throw Error(Errc::ZeroRelation, "presentation relation is zero");
            r.check_compatible(FreePoly<F>(field_, generators_.size()));
        }
    }

    const F& field() const { return field_; }
    const std::vector<std::string>& generators() const { return generators_; }
    const std::vector<FreePoly<F>>& relations() const { return relations_; }
    std::size_t arity() const { return generators_.size(); }

    bool homogeneous() const
    {
        for (const auto& r : relations_)
            if (!r.is_homogeneous()) return false;
        return true;
    }

private:
    F field_;
    std::vector<std::string> generators_;
    std::vector<FreePoly<F>> relations_;
};

inline std::uint64_t word_space_dim(std::size_t arity, std::size_t n)
{
    std::uint64_t d = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (arity && d > (std::uint64_t{1} << 32) / arity)
            throw Error(Errc::InvalidSpec, "word space of degree " + std::to_string(n) + " is too large");
        d *= arity;
    }
    return d;
}

/// Column index of a word of fixed length: lexicographic rank.
inline std::size_t word_index(const Word& w, std::size_t arity)
{
    std::size_t idx = 0;
    for (auto g : w) idx = idx * arity + g;
    return idx;
}

inline Word index_word(std::size_t idx, std::size_t arity, std::size_t n)
{
    Word w(n);
    for (std::size_t k = n; k-- > 0;) {
        w[k] = static_cast<std::uint32_t>(idx % arity);
        idx /= arity;
    }
    return w;
}

template <Field F>
struct IdealComponent {
    std::size_t rank = 0;
    /// reduced row-echelon basis, rows ordered by pivot word
    std::vector<FreePoly<F>> basis;
};

/// Degree-n part of the two-sided ideal generated by homogeneous gens:
/// the span of all w1*g*w2 with |w1| + deg g + |w2| = n.
template <Field F>
IdealComponent<F> ideal_component_rank(const F& field, std::size_t arity, const std::vector<FreePoly<F>>& gens,
                                       std::size_t n, bool want_basis = true)
{
    for (const auto& g : gens)
        if (!g.is_homogeneous()) throw Error(Errc::NonHomogeneousGenerator, "ideal generator is not homogeneous");
    const std::uint64_t full = word_space_dim(arity, n);
    RowEchelon<F> echelon(field);
    auto fill = [&] {
        for (const auto& g : gens) {
            if (g.is_zero() || static_cast<std::size_t>(g.degree()) > n) continue;
            const std::size_t free_letters = n - static_cast<std::size_t>(g.degree());
            const std::uint64_t contexts = word_space_dim(arity, free_letters);
            for (std::size_t left = 0; left <= free_letters; ++left)
                for (std::uint64_t ctx = 0; ctx < contexts; ++ctx) {
                    const Word outer = index_word(ctx, arity, free_letters);
                    const auto split = outer.begin() + static_cast<std::ptrdiff_t>(left);
                    SparseRow<F> row;
                    row.reserve(g.size());
                    for (const auto& [w, c] : g.terms()) {
                        Word full_word(outer.begin(), split);
                        full_word.insert(full_word.end(), w.begin(), w.end());
                        full_word.insert(full_word.end(), split, outer.end());
                        row.emplace_back(word_index(full_word, arity), c);
                    }
                    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
                    echelon.insert(std::move(row));
                    if (echelon.rank() == full) return;
                }
        }
    };
    fill();
    IdealComponent<F> out;
    out.rank = echelon.rank();
    if (want_basis)
        for (const auto& [pivot, row] : echelon.rows()) {
            FreePoly<F> p(field, arity);
            for (const auto& [col, c] : row) p.add_term(index_word(col, arity, n), c);
            out.basis.push_back(std::move(p));
        }
    return out;
}

/// dim_n of the graded algebra for n = 0..max_degree.
template <Field F>
std::vector<std::uint64_t> hilbert_graded(const Presentation<F>& pres, std::size_t max_degree)
{
    if (!pres.homogeneous())
        throw Error(Errc::NonHomogeneousPresentation, "graded Hilbert function needs homogeneous relations");
    std::vector<std::uint64_t> dims(max_degree + 1);
    parallel_for(max_degree + 1, [&](std::size_t n) {
        const auto rank = ideal_component_rank(pres.field(), pres.arity(), pres.relations(), n, false).rank;
        dims[n] = word_space_dim(pres.arity(), n) - rank;
    });
    return dims;
}

} // namespace grval
