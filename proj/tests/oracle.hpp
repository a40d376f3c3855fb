#pragma once

// Independent brute-force oracles for the test suites. Nothing here goes
// through the library's sparse linear algebra or rewriting code.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

/// Dense Gaussian elimination over Q.
inline std::size_t rank_q(std::vector<std::vector<mpq_class>> m)
{
    std::size_t rank = 0;
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
        std::size_t p = rank;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[rank]);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == rank || m[i][c] == 0) continue;
            const mpq_class f = m[i][c] / m[rank][c];
            for (std::size_t k = 0; k < cols; ++k) m[i][k] -= f * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

/// Dense Gaussian elimination over F_p of integer rows.
inline std::size_t rank_mod_p(std::vector<std::vector<long>> m, long p)
{
    for (auto& row : m)
        for (auto& x : row) x = ((x % p) + p) % p;
    auto inv = [p](long a) {
        long r = 1, b = a, e = p - 2;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };
    std::size_t rank = 0;
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
        std::size_t q = rank;
        while (q < m.size() && m[q][c] == 0) ++q;
        if (q == m.size()) continue;
        std::swap(m[q], m[rank]);
        const long iv = inv(m[rank][c]);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == rank || m[i][c] == 0) continue;
            const long f = m[i][c] * iv % p;
            for (std::size_t k = 0; k < cols; ++k) m[i][k] = ((m[i][k] - f * m[rank][k]) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

/// Homogeneous noncommutative polynomial as word string -> coefficient.
template <class C>
using StringPoly = std::map<std::string, C>;

inline std::vector<std::string> all_words(const std::string& alphabet, std::size_t n)
{
    std::vector<std::string> out{""};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::string> next;
        for (const auto& w : out)
            for (char c : alphabet) next.push_back(w + c);
        out = std::move(next);
    }
    return out;
}

/// Rows of all u*g*w of length n, as dense vectors over the word basis.
template <class C>
std::vector<std::vector<C>> ideal_rows(const std::vector<StringPoly<C>>& gens, const std::string& alphabet, std::size_t n)
{
    const auto words = all_words(alphabet, n);
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < words.size(); ++i) index[words[i]] = i;
    std::vector<std::vector<C>> rows;
    for (const auto& g : gens) {
        const std::size_t d = g.begin()->first.size();
        if (d > n) continue;
        for (std::size_t left = 0; left <= n - d; ++left)
            for (const auto& u : all_words(alphabet, left))
                for (const auto& w : all_words(alphabet, n - d - left)) {
                    std::vector<C> row(words.size(), C(0));
                    for (const auto& [m, c] : g) row[index.at(u + m + w)] += c;
                    rows.push_back(std::move(row));
                }
    }
    return rows;
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k)
{
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

} // namespace oracle
