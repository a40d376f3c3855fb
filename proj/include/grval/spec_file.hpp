#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "grval/error.hpp"
#include "grval/hilbert.hpp"
#include "grval/lattice.hpp"
#include "grval/parser.hpp"
#include "grval/pbw.hpp"
#include "grval/reduction.hpp"
#include "grval/valued_field.hpp"

namespace grval {

inline constexpr int kFormatVersion = 1;

/// Malformed algebra-spec file, with 1-based line and column.
class SpecFileError : public Error {
public:
    SpecFileError(std::size_t line, std::size_t column, const std::string& what)
        : Error(Errc::InvalidSpec, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line), column_(column)
    {
    }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_, column_;
};

struct SpecValue {
    std::variant<std::string, std::int64_t, std::vector<SpecValue>> data;
    std::size_t line = 0, column = 0;
};

/// Section name -> key -> value; keys before any header live in section "".
using SpecDocument = std::map<std::string, std::map<std::string, SpecValue>>;

namespace detail {

/// Reader for the key/value format:
///   # comment
///   [section]
///   key = "string" | integer | [value, value, ...]   (arrays may span lines)
class SpecReader {
public:
    explicit SpecReader(std::string_view text) : text_(text) {}

    SpecDocument read()
    {
        SpecDocument doc;
        std::string section;
        doc[section];
        for (;;) {
            skip_blank();
            if (at_end()) return doc;
            if (peek() == '[') {
                advance();
                section = identifier("section name");
                expect(']');
                end_of_line();
                if (doc.count(section)) fail("duplicate section [" + section + "]");
                doc[section];
                continue;
            }
            const std::size_t kline = line_, kcol = col_;
            const std::string key = identifier("key");
            skip_spaces();
            expect('=');
            auto value = parse_value();
            end_of_line();
            if (!doc[section].emplace(key, std::move(value)).second) {
                line_ = kline;
                col_ = kcol;
                fail("duplicate key '" + key + "'");
            }
        }
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw SpecFileError(line_, col_, msg); }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    void advance()
    {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        }
        else {
            ++col_;
        }
        ++pos_;
    }
    void skip_spaces()
    {
        while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) advance();
    }
    void skip_comment()
    {
        if (!at_end() && peek() == '#')
            while (!at_end() && peek() != '\n') advance();
    }
    /// whitespace, newlines and comments
    void skip_blank()
    {
        for (;;) {
            skip_spaces();
            skip_comment();
            if (!at_end() && peek() == '\n')
                advance();
            else
                return;
        }
    }
    void end_of_line()
    {
        skip_spaces();
        skip_comment();
        if (!at_end() && peek() != '\n') fail(std::string("unexpected '") + peek() + "'");
    }
    void expect(char c)
    {
        skip_spaces();
        if (at_end() || peek() != c) fail(std::string("expected '") + c + "'");
        advance();
    }
    std::string identifier(const char* what)
    {
        skip_spaces();
        std::string out;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '-')) {
            out += peek();
            advance();
        }
        if (out.empty()) fail(std::string("expected ") + what);
        return out;
    }

    SpecValue parse_value()
    {
        skip_spaces();
        if (at_end()) fail("expected a value");
        SpecValue v;
        v.line = line_;
        v.column = col_;
        const char c = peek();
        if (c == '"') {
            advance();
            std::string s;
            for (;;) {
                if (at_end() || peek() == '\n') fail("unterminated string");
                if (peek() == '"') break;
                if (peek() == '\\') {
                    advance();
                    if (at_end()) fail("unterminated string");
                }
                s += peek();
                advance();
            }
            advance();
            v.data = std::move(s);
            return v;
        }
        if (c == '[') {
            advance();
            std::vector<SpecValue> items;
            for (;;) {
                skip_blank();
                if (at_end()) fail("unterminated array");
                if (peek() == ']') {
                    advance();
                    break;
                }
                items.push_back(parse_value());
                skip_blank();
                if (!at_end() && peek() == ',') {
                    advance();
                    continue;
                }
                skip_blank();
                if (at_end() || peek() != ']') fail("expected ',' or ']'");
            }
            v.data = std::move(items);
            return v;
        }
        if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            if (c == '-') {
                digits += c;
                advance();
            }
            while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
                digits += peek();
                advance();
            }
            if (digits.empty() || digits == "-" || digits.size() > 18) fail("malformed integer");
            v.data = static_cast<std::int64_t>(std::stoll(digits));
            return v;
        }
        fail(std::string("unexpected '") + c + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

} // namespace detail

inline SpecDocument read_spec_document(std::string_view text) { return detail::SpecReader(text).read(); }

struct SpecString {
    std::string text;
    std::size_t line = 0, column = 0;
};

struct AlgebraSection {
    /// "pbw", "presentation" or "enveloping"
    std::string kind;
    std::vector<std::string> generators;
    std::vector<SpecString> relations;
};

struct LieSection {
    std::vector<std::string> generators;
    /// "[x_i, x_j] = linear combination"
    std::vector<SpecString> brackets;
};

/// Typed view of an algebra-spec file.
struct AlgebraSpecFile {
    int format_version = kFormatVersion;
    FieldDescriptor field;
    std::optional<AlgebraSection> algebra;
    std::optional<LieSection> lie;
};

namespace detail {

inline const SpecValue* find_key(const std::map<std::string, SpecValue>& sec, const std::string& key)
{
    auto it = sec.find(key);
    return it == sec.end() ? nullptr : &it->second;
}

inline const std::string& as_string(const SpecValue& v, const std::string& key)
{
    if (auto s = std::get_if<std::string>(&v.data)) return *s;
    throw SpecFileError(v.line, v.column, "'" + key + "' must be a string");
}

inline std::int64_t as_integer(const SpecValue& v, const std::string& key)
{
    if (auto n = std::get_if<std::int64_t>(&v.data)) return *n;
    throw SpecFileError(v.line, v.column, "'" + key + "' must be an integer");
}

inline std::vector<SpecString> as_string_list(const SpecValue& v, const std::string& key)
{
    auto arr = std::get_if<std::vector<SpecValue>>(&v.data);
    if (!arr) throw SpecFileError(v.line, v.column, "'" + key + "' must be an array of strings");
    std::vector<SpecString> out;
    for (const auto& item : *arr) out.push_back({as_string(item, key), item.line, item.column});
    return out;
}

inline std::vector<std::string> as_names(const SpecValue& v, const std::string& key)
{
    std::vector<std::string> out;
    for (auto& s : as_string_list(v, key)) {
        if (s.text.empty() || !(std::isalpha(static_cast<unsigned char>(s.text[0])) || s.text[0] == '_'))
            throw SpecFileError(s.line, s.column, "invalid generator name '" + s.text + "'");
        for (char c : s.text)
            if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
                throw SpecFileError(s.line, s.column, "invalid generator name '" + s.text + "'");
        if (std::find(out.begin(), out.end(), s.text) != out.end())
            throw SpecFileError(s.line, s.column, "duplicate generator '" + s.text + "'");
        out.push_back(s.text);
    }
    return out;
}

inline void reject_unknown(const std::map<std::string, SpecValue>& sec, std::initializer_list<std::string_view> known,
                           const std::string& section)
{
    for (const auto& [key, v] : sec)
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw SpecFileError(v.line, v.column, "unknown key '" + key + "' in [" + section + "]");
}

} // namespace detail

inline FieldDescriptor parse_field_section(const std::map<std::string, SpecValue>& sec)
{
    using namespace detail;
    reject_unknown(sec, {"kind", "valuation", "p", "q"}, "field");
    FieldDescriptor d;
    const auto* kind = find_key(sec, "kind");
    if (!kind) throw SpecFileError(1, 1, "[field] needs 'kind'");
    const auto& k = as_string(*kind, "kind");
    if (k == "rationals")
        d.kind = FieldDescriptor::Kind::Rationals;
    else if (k == "rational_functions")
        d.kind = FieldDescriptor::Kind::RationalFunctions;
    else if (k == "prime_field")
        d.kind = FieldDescriptor::Kind::PrimeField;
    else
        throw SpecFileError(kind->line, kind->column, "unknown field kind '" + k + "'");

    auto read_prime = [&](const char* key) -> std::uint64_t {
        const auto* v = find_key(sec, key);
        if (!v) return 0;
        const auto n = as_integer(*v, key);
        if (n < 2 || n >= (std::int64_t{1} << 32) || !is_prime(static_cast<std::uint64_t>(n)))
            throw SpecFileError(v->line, v->column, "'" + std::string(key) + "' must be a prime below 2^32");
        return static_cast<std::uint64_t>(n);
    };
    d.p = read_prime("p");
    d.q = read_prime("q");

    if (const auto* val = find_key(sec, "valuation")) {
        const auto& s = as_string(*val, "valuation");
        if (s == "p-adic" && d.kind == FieldDescriptor::Kind::Rationals) {
            d.valuation = FieldDescriptor::Valuation::PAdic;
            if (!d.p) throw SpecFileError(val->line, val->column, "p-adic valuation needs a prime 'p'");
        }
        else if (s == "t-adic" && d.kind == FieldDescriptor::Kind::RationalFunctions) {
            d.valuation = FieldDescriptor::Valuation::TAdic;
        }
        else {
            throw SpecFileError(val->line, val->column, "valuation '" + s + "' does not apply to field kind '" + k + "'");
        }
    }
    if (d.kind == FieldDescriptor::Kind::PrimeField && !d.q)
        throw SpecFileError(kind->line, kind->column, "prime_field needs a prime 'q'");
    return d;
}

inline AlgebraSpecFile parse_spec_file(std::string_view text)
{
    using namespace detail;
    const auto doc = read_spec_document(text);
    AlgebraSpecFile out;
    for (const auto& [name, sec] : doc)
        if (name != "" && name != "field" && name != "algebra" && name != "lie") {
            const auto& first = sec.empty() ? SpecValue{} : sec.begin()->second;
            throw SpecFileError(first.line ? first.line : 1, 1, "unknown section [" + name + "]");
        }
    const auto& top = doc.at("");
    reject_unknown(top, {"format_version"}, "top level");
    if (const auto* v = find_key(top, "format_version")) {
        out.format_version = static_cast<int>(as_integer(*v, "format_version"));
        if (out.format_version != kFormatVersion)
            throw SpecFileError(v->line, v->column, "unsupported format_version " + std::to_string(out.format_version));
    }
    if (!doc.count("field")) throw SpecFileError(1, 1, "missing [field] section");
    out.field = parse_field_section(doc.at("field"));

    if (doc.count("lie")) {
        const auto& sec = doc.at("lie");
        reject_unknown(sec, {"generators", "brackets"}, "lie");
        LieSection lie;
        const auto* gens = find_key(sec, "generators");
        if (!gens) throw SpecFileError(1, 1, "[lie] needs 'generators'");
        lie.generators = as_names(*gens, "generators");
        if (const auto* b = find_key(sec, "brackets")) lie.brackets = as_string_list(*b, "brackets");
        out.lie = std::move(lie);
    }
    if (doc.count("algebra")) {
        const auto& sec = doc.at("algebra");
        reject_unknown(sec, {"kind", "generators", "relations"}, "algebra");
        AlgebraSection alg;
        const auto* kind = find_key(sec, "kind");
        if (!kind) throw SpecFileError(1, 1, "[algebra] needs 'kind'");
        alg.kind = as_string(*kind, "kind");
        if (alg.kind != "pbw" && alg.kind != "presentation" && alg.kind != "enveloping")
            throw SpecFileError(kind->line, kind->column, "unknown algebra kind '" + alg.kind + "'");
        if (alg.kind == "enveloping") {
            if (!out.lie) throw SpecFileError(kind->line, kind->column, "kind \"enveloping\" needs a [lie] section");
            alg.generators = out.lie->generators;
        }
        else {
            const auto* gens = find_key(sec, "generators");
            if (!gens) throw SpecFileError(kind->line, kind->column, "[algebra] needs 'generators'");
            alg.generators = as_names(*gens, "generators");
            if (const auto* rels = find_key(sec, "relations")) alg.relations = as_string_list(*rels, "relations");
        }
        out.algebra = std::move(alg);
    }
    return out;
}

namespace detail {

/// Maps a parse error inside a quoted string to its file position.
template <class Fn>
decltype(auto) at_string(const SpecString& s, Fn&& fn)
{
    try {
        return fn();
    }
    catch (const SyntaxError& e) {
        throw SpecFileError(s.line, s.column + 1 + e.position(), e.what());
    }
    catch (const SpecFileError&) {
        throw;
    }
    catch (const Error& e) {
        throw SpecFileError(s.line, s.column, e.what());
    }
}

template <Field F>
void check_field_variable(const F& field, const std::vector<std::string>& names)
{
    if (auto var = field.variable())
        if (std::find(names.begin(), names.end(), *var) != names.end())
            throw SpecFileError(1, 1, "generator name '" + *var + "' clashes with the field variable");
}

} // namespace detail

/// "[a, b] = rhs" with rhs linear in the generators.
template <Field F>
LieData<F> build_lie(const LieSection& lie, const F& field)
{
    detail::check_field_variable(field, lie.generators);
    const std::size_t g = lie.generators.size();
    std::vector<std::vector<std::optional<Vector<F>>>> partial(g, std::vector<std::optional<Vector<F>>>(g));
    for (const auto& b : lie.brackets) {
        detail::at_string(b, [&] {
            const auto& t = b.text;
            const auto open = t.find('['), comma = t.find(','), close = t.find(']');
            if (open == std::string::npos || comma == std::string::npos || close == std::string::npos ||
                !(open < comma && comma < close))
                throw SyntaxError(Errc::SyntaxError, 0, "expected '[a, b] = ...'");
            auto trim = [](std::string s) {
                while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
                while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
                return s;
            };
            auto index_of = [&](const std::string& name, std::size_t at) {
                auto it = std::find(lie.generators.begin(), lie.generators.end(), name);
                if (it == lie.generators.end())
                    throw SyntaxError(Errc::UnknownGenerator, at, "unknown generator '" + name + "'");
                return static_cast<std::size_t>(it - lie.generators.begin());
            };
            const auto i = index_of(trim(t.substr(open + 1, comma - open - 1)), open + 1);
            const auto j = index_of(trim(t.substr(comma + 1, close - comma - 1)), comma + 1);
            const auto eq = t.find('=', close);
            if (eq == std::string::npos || !trim(t.substr(close + 1, eq - close - 1)).empty())
                throw SyntaxError(Errc::SyntaxError, close + 1, "expected '='");
            const auto rhs = detail::PolyParser<F>(std::string_view(t).substr(eq + 1), eq + 1, lie.generators, field).parse_all();
            Vector<F> vec(g, field.zero());
            for (const auto& [w, c] : rhs.terms()) {
                if (w.size() != 1) throw SyntaxError(Errc::SyntaxError, eq + 1, "bracket must be linear in the generators");
                vec[w[0]] = c;
            }
            if (partial[i][j]) throw SyntaxError(Errc::InvalidSpec, open, "bracket given twice");
            partial[i][j] = std::move(vec);
        });
    }
    return LieData<F>(field, lie.generators, complete_antisymmetric(field, partial));
}

template <Field F>
PbwSpec<F> build_pbw(const AlgebraSpecFile& file, const F& field)
{
    if (!file.algebra) throw SpecFileError(1, 1, "missing [algebra] section");
    const auto& alg = *file.algebra;
    if (alg.kind == "enveloping") {
        auto lie = build_lie(*file.lie, field);
        return make_enveloping(field, lie.names, lie.constants);
    }
    if (alg.kind != "pbw") throw SpecFileError(1, 1, "command needs an algebra of kind \"pbw\" or \"enveloping\"");
    detail::check_field_variable(field, alg.generators);
    std::vector<std::string> eqs;
    // validate each equation separately for positioned errors
    for (const auto& r : alg.relations) {
        detail::at_string(r, [&] { return parse_pbw_spec(field, alg.generators, {r.text}); });
        eqs.push_back(r.text);
    }
    try {
        return parse_pbw_spec(field, alg.generators, eqs);
    }
    catch (const Error& e) {
        throw SpecFileError(1, 1, e.what());
    }
}

/// Presentation of the algebra: explicit relations ("p" or "lhs = rhs"), or the defining
/// equations of a PBW/enveloping spec read as relations.
template <Field F>
Presentation<F> build_presentation(const AlgebraSpecFile& file, const F& field)
{
    if (!file.algebra) throw SpecFileError(1, 1, "missing [algebra] section");
    const auto& alg = *file.algebra;
    if (alg.kind != "presentation") return pbw_relations(build_pbw(file, field));
    detail::check_field_variable(field, alg.generators);
    std::vector<FreePoly<F>> rels;
    for (const auto& r : alg.relations)
        rels.push_back(detail::at_string(r, [&] {
            FreePoly<F> p(field, alg.generators.size());
            if (r.text.find('=') == std::string::npos) {
                p = parse_poly(r.text, alg.generators, field);
            }
            else {
                auto [lhs, rhs] = parse_equation(r.text, alg.generators, field);
                p = lhs - rhs;
            }
            if (p.is_zero()) throw SyntaxError(Errc::ZeroRelation, 0, "relation is zero");
            return p;
        }));
    return Presentation<F>(field, alg.generators, std::move(rels));
}

} // namespace grval
