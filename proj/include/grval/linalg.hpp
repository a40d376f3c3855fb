#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "grval/fields.hpp"

namespace grval {

/// Sparse row: (column, nonzero coefficient), strictly increasing columns.
template <Field F>
using SparseRow = std::vector<std::pair<std::size_t, typename F::Element>>;

/// Incrementally maintained reduced row-echelon basis over an exact field.
/// The pivot of a row is its leftmost nonzero entry and is normalized to 1;
/// pivot columns are cleared in every other row.
template <Field F>
class RowEchelon {
public:
    using Row = SparseRow<F>;
    using Coef = typename F::Element;

    explicit RowEchelon(F field) : field_(std::move(field)) {}

    std::size_t rank() const { return rows_.size(); }

    /// Reduced rows keyed by pivot column, ascending.
    const std::map<std::size_t, Row>& rows() const { return rows_; }

    /// Reduces row against the basis without modifying it.
    Row reduce(Row row) const
    {
        // the basis is fully reduced, so one pass over the original entries suffices
        std::vector<std::pair<std::size_t, Coef>> hits;
        for (const auto& [col, c] : row)
            if (rows_.count(col)) hits.emplace_back(col, c);
        for (const auto& [col, c] : hits) row = axpy(row, field_.neg(c), rows_.at(col));
        return row;
    }

    bool contains(Row row) const { return reduce(std::move(row)).empty(); }

    /// Returns true when the row enlarged the span.
    bool insert(Row row)
    {
        row = reduce(std::move(row));
        if (row.empty()) return false;
        const auto lead_inv = field_.inv(row.front().second);
        for (auto& [col, c] : row) c = field_.mul(c, lead_inv);
        const std::size_t pivot = row.front().first;
        for (auto& [p, other] : rows_) {
            auto it = std::lower_bound(other.begin(), other.end(), pivot,
                                       [](const auto& e, std::size_t col) { return e.first < col; });
            if (it != other.end() && it->first == pivot) other = axpy(other, field_.neg(it->second), row);
        }
        rows_.emplace(pivot, std::move(row));
        return true;
    }

    /// a + s*b
    Row axpy(const Row& a, const Coef& s, const Row& b) const
    {
        Row out;
        out.reserve(a.size() + b.size());
        std::size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
                out.push_back(a[i++]);
            }
            else if (i == a.size() || b[j].first < a[i].first) {
                auto c = field_.mul(s, b[j].second);
                if (!field_.is_zero(c)) out.emplace_back(b[j].first, std::move(c));
                ++j;
            }
            else {
                auto c = field_.add(a[i].second, field_.mul(s, b[j].second));
                if (!field_.is_zero(c)) out.emplace_back(a[i].first, std::move(c));
                ++i;
                ++j;
            }
        }
        return out;
    }

private:
    F field_;
    std::map<std::size_t, Row> rows_;
};

} // namespace grval
