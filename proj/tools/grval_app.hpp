#pragma once

// The grval command-line front end. run() is the whole program; main()
// only forwards to it, so tests can drive commands in-process.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "grval/grval.hpp"

namespace grval::app {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kSuccess = 0, kFail = 1, kInputError = 2, kInternalError = 3 };

namespace detail {

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::InvalidSpec, "cannot read file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline AlgebraSpecFile load_spec(const std::string& path) { return parse_spec_file(read_file(path)); }

template <Field F>
typename F::Element parse_scalar(const F& field, const std::string& text)
{
    const auto c = parse_poly(text, {}, field).as_constant();
    if (!c) throw Error(Errc::SyntaxError, "'" + text + "' is not a scalar");
    return *c;
}

template <Field F>
std::string scalar_string(const F& field, const typename F::Element& c)
{
    return field.to_string(c);
}

inline Json value_json(const Value& v)
{
    if (v.is_infinite()) return "Infinity";
    return v.get();
}

template <Field F>
Vector<F> json_vector(const F& field, const Json& j, const std::string& what)
{
    if (!j.is_array()) throw Error(Errc::SyntaxError, what + " must be an array of coefficient strings");
    Vector<F> v;
    for (const auto& x : j) {
        if (x.is_string())
            v.push_back(parse_scalar(field, x.get<std::string>()));
        else if (x.is_number_integer())
            v.push_back(field.from_integer(x.get<long>()));
        else
            throw Error(Errc::SyntaxError, what + " entries must be strings or integers");
    }
    return v;
}

template <Field F>
std::vector<Vector<F>> json_vectors(const F& field, const Json& j, const std::string& what)
{
    if (!j.is_array()) throw Error(Errc::SyntaxError, what + " must be an array of vectors");
    std::vector<Vector<F>> out;
    for (const auto& v : j) out.push_back(json_vector(field, v, what));
    return out;
}

template <Field F>
Json vector_json(const F& field, const Vector<F>& v)
{
    Json out = Json::array();
    for (const auto& x : v) out.push_back(field.to_string(x));
    return out;
}

template <Field F>
Json vectors_json(const F& field, const std::vector<Vector<F>>& vs)
{
    Json out = Json::array();
    for (const auto& v : vs) out.push_back(vector_json(field, v));
    return out;
}

template <Field F>
std::string vector_string(const F& field, const Vector<F>& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + field.to_string(v[i]);
    return s + ")";
}

inline std::string join(const std::vector<std::uint64_t>& xs)
{
    std::string s;
    for (auto x : xs) s += (s.empty() ? "" : " ") + std::to_string(x);
    return s;
}

template <Field R>
Json symbol_json(const Symbol<R>& s, const std::vector<std::string>& names)
{
    return Json{{"degree", s.degree}, {"residue", s.residue.to_string(names)}};
}

template <Field F>
Json constants_json(const F& field, const StructureConstants<F>& c)
{
    Json out = Json::array();
    for (const auto& row : c) {
        Json r = Json::array();
        for (const auto& v : row) r.push_back(vector_json(field, v));
        out.push_back(std::move(r));
    }
    return out;
}

/// "[a, b] = rhs" for i < j.
template <Field F>
std::vector<std::string> bracket_strings(const LieData<F>& lie)
{
    std::vector<std::string> out;
    const std::size_t g = lie.dimension();
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = i + 1; j < g; ++j) {
            FreePoly<F> rhs(lie.field, g);
            for (std::size_t k = 0; k < g; ++k) rhs.add_term({static_cast<std::uint32_t>(k)}, lie.constants[i][j][k]);
            out.push_back("[" + lie.names[i] + ", " + lie.names[j] + "] = " + rhs.to_string(lie.names));
        }
    return out;
}

inline std::string quoted(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

/// Spec file for U(gbar) over F_p.
template <Field F>
std::string enveloping_spec_text(const LieData<F>& lie, std::uint64_t p)
{
    std::ostringstream s;
    s << "# Enveloping algebra of the reduced Lie algebra over F_" << p << ".\n";
    s << "format_version = " << kFormatVersion << "\n\n[field]\nkind = \"prime_field\"\nq = " << p << "\n\n";
    s << "[lie]\ngenerators = [";
    for (std::size_t i = 0; i < lie.names.size(); ++i) s << (i ? ", " : "") << quoted(lie.names[i]);
    s << "]\nbrackets = [\n";
    for (const auto& b : bracket_strings(lie)) s << "  " << quoted(b) << ",\n";
    s << "]\n\n[algebra]\nkind = \"enveloping\"\n";
    return s.str();
}

/// The result of one command: JSON document, human text, exit code.
struct Outcome {
    Json json;
    std::string text;
    int code = kSuccess;
};

inline Json header(const std::string& command)
{
    return Json{{"format_version", kFormatVersion}, {"command", command}};
}

// ---------------------------------------------------------------------------
// Commands

inline Outcome check_pbw(const std::string& path)
{
    const auto file = load_spec(path);
    return with_base_field(file.field, [&](const auto& K) {
        const auto spec = build_pbw(file, K);
        const auto result = confluence_check(spec);
        const auto& names = spec.names();
        Outcome o{header("check-pbw"), {}, kSuccess};
        o.json["field"] = K.name();
        o.json["generators"] = names;
        o.json["rules"] = spec.rule_strings();
        o.json["triples_checked"] = result.triples_checked;
        o.json["verdict"] = result.pass() ? "Pass" : "Fail";
        o.json["failures"] = Json::array();
        std::ostringstream t;
        t << (result.pass() ? "Pass" : "Fail") << " (" << result.triples_checked << " overlaps checked)\n";
        for (const auto& f : result.failures) {
            const auto diff = f.left - f.right;
            Json w{{"triple", {names[f.i], names[f.j], names[f.k]}},
                   {"overlap", names[f.k] + "*" + names[f.j] + "*" + names[f.i]},
                   {"left", f.left.to_string(names)},
                   {"right", f.right.to_string(names)},
                   {"difference", diff.to_string(names)}};
            t << "witness (" << names[f.i] << ", " << names[f.j] << ", " << names[f.k] << "): overlap "
              << w["overlap"].get<std::string>() << "\n"
              << "  rewriting " << names[f.k] << "*" << names[f.j] << " first: " << w["left"].get<std::string>() << "\n"
              << "  rewriting " << names[f.j] << "*" << names[f.i] << " first: " << w["right"].get<std::string>() << "\n"
              << "  difference: " << w["difference"].get<std::string>() << "\n";
            o.json["failures"].push_back(std::move(w));
        }
        o.text = t.str();
        o.code = result.pass() ? kSuccess : kFail;
        return o;
    });
}

inline Outcome normal_form_cmd(const std::string& path, const std::string& expr)
{
    const auto file = load_spec(path);
    return with_base_field(file.field, [&](const auto& K) {
        const auto spec = build_pbw(file, K);
        const auto nf = parse_element(spec, expr);
        Outcome o{header("nf"), {}, kSuccess};
        o.json["input"] = expr;
        o.json["normal_form"] = nf.to_string(spec.names());
        o.text = nf.to_string(spec.names()) + "\n";
        return o;
    });
}

template <ValuedField V>
GaussContext<V> load_context(const AlgebraSpecFile& file, const V& valued)
{
    auto spec = build_pbw(file, valued.base());
    return GaussContext<V>(valued, std::move(spec));
}

inline Outcome valuation_cmd(const std::string& path, const std::string& expr)
{
    const auto file = load_spec(path);
    return with_valued_field(file.field, [&](const auto& V) {
        const auto ctx = load_context(file, V);
        const auto a = parse_element(ctx.spec(), expr);
        const auto v = ctx.gauss_valuation(a);
        Outcome o{header("val"), {}, kSuccess};
        o.json["field"] = V.describe();
        o.json["input"] = expr;
        o.json["normal_form"] = a.to_string(ctx.spec().names());
        o.json["valuation"] = value_json(v);
        o.text = v.to_string() + "\n";
        return o;
    });
}

inline Outcome symbol_cmd(const std::string& path, const std::string& expr)
{
    const auto file = load_spec(path);
    return with_valued_field(file.field, [&](const auto& V) {
        const auto ctx = load_context(file, V);
        const auto a = parse_element(ctx.spec(), expr);
        const auto s = principal_symbol(ctx, a);
        Outcome o{header("symbol"), {}, kSuccess};
        o.json["field"] = V.describe();
        o.json["input"] = expr;
        o.json["symbol"] = symbol_json(s, ctx.spec().names());
        o.text = "degree " + std::to_string(s.degree) + ", residue " + s.residue.to_string(ctx.spec().names()) + "\n";
        return o;
    });
}

inline Outcome hilbert_cmd(const std::string& path, std::size_t max_degree, const std::string& mode)
{
    const auto file = load_spec(path);
    return with_base_field(file.field, [&](const auto& K) {
        std::vector<std::uint64_t> dims;
        if (mode == "graded") {
            const auto pres = build_presentation(file, K);
            dims = hilbert_graded(pres, max_degree);
        }
        else {
            const auto spec = build_pbw(file, K);
            if (!confluence_check(spec).pass())
                throw Error(Errc::InvalidSpec, "filtered dimensions need a confluent PBW spec");
            dims = filtered_dims(spec, max_degree);
        }
        Outcome o{header("hilbert"), {}, kSuccess};
        o.json["mode"] = mode;
        o.json["max_degree"] = max_degree;
        o.json["dims"] = dims;
        o.text = join(dims) + "\n";
        return o;
    });
}

inline Outcome good_reduction_cmd(const std::string& path, std::size_t max_degree)
{
    const auto file = load_spec(path);
    return with_valued_field(file.field, [&](const auto& V) {
        const auto pres = build_presentation(file, V.base());
        const auto report = good_reduction_check(V, pres, max_degree);
        const auto reduced = reduce_presentation(V, pres);
        Outcome o{header("good-reduction"), {}, kSuccess};
        o.json["field"] = V.describe();
        o.json["max_degree"] = max_degree;
        Json red = Json::array();
        for (const auto& r : reduced.relations()) red.push_back(r.to_string(reduced.generators()));
        o.json["reduced_relations"] = red;
        Json rows = Json::array();
        std::ostringstream t;
        t << "n  dim_K  dim_kv\n";
        for (const auto& r : report.rows) {
            rows.push_back({{"n", r.n}, {"dim_K", r.dim_over_k}, {"dim_kv", r.dim_over_residue}, {"equal", r.equal()}});
            t << r.n << "  " << r.dim_over_k << "  " << r.dim_over_residue << (r.equal() ? "" : "  <-") << "\n";
        }
        o.json["rows"] = rows;
        o.json["verdict"] = report.verdict();
        o.json["graded_reductor"] = report.graded_reductor();
        t << "verdict: " << report.verdict() << " (checked through degree " << max_degree << ")\n";
        t << "graded reductor: " << (report.graded_reductor() ? "yes" : "no") << "\n";
        o.text = t.str();
        o.code = report.good_reduction() ? kSuccess : kFail;
        return o;
    });
}

inline Outcome graded_check_cmd(const std::string& path, std::size_t max_degree)
{
    const auto file = load_spec(path);
    return with_base_field(file.field, [&](const auto& K) {
        const auto spec = build_pbw(file, K);
        if (!confluence_check(spec).pass()) throw Error(Errc::InvalidSpec, "graded check needs a confluent PBW spec");
        const auto rows = graded_relation_check(spec, max_degree);
        Outcome o{header("graded-check"), {}, kSuccess};
        Json js = Json::array();
        std::ostringstream t;
        t << "n  leading  filtered\n";
        bool all = true;
        for (const auto& r : rows) {
            js.push_back({{"n", r.n}, {"leading_quotient", r.leading_quotient}, {"filtered_increment", r.filtered_increment},
                          {"equal", r.equal()}});
            t << r.n << "  " << r.leading_quotient << "  " << r.filtered_increment << (r.equal() ? "" : "  <-") << "\n";
            all = all && r.equal();
        }
        o.json["max_degree"] = max_degree;
        o.json["rows"] = js;
        o.json["all_equal"] = all;
        t << (all ? "all degrees agree" : "mismatch") << "\n";
        o.text = t.str();
        o.code = all ? kSuccess : kFail;
        return o;
    });
}

inline Outcome double_graded_cmd(const std::string& path, std::size_t max_degree, std::int64_t lo, std::int64_t hi)
{
    if (lo > hi) throw Error(Errc::InvalidSpec, "empty gamma window");
    const auto file = load_spec(path);
    return with_valued_field(file.field, [&](const auto& V) {
        const auto ctx = load_context(file, V);
        const auto rows = double_graded_dims(ctx, max_degree, lo, hi);
        Outcome o{header("double-graded"), {}, kSuccess};
        Json js = Json::array();
        std::ostringstream t;
        t << "gamma  n  G_f(G_v)  G_v(G_F)\n";
        bool all = true;
        for (const auto& r : rows) {
            js.push_back({{"gamma", r.gamma}, {"n", r.n}, {"valuation_then_degree", r.valuation_then_degree},
                          {"degree_then_valuation", r.degree_then_valuation}, {"equal", r.equal()}});
            t << r.gamma << "  " << r.n << "  " << r.valuation_then_degree << "  " << r.degree_then_valuation
              << (r.equal() ? "" : "  <-") << "\n";
            all = all && r.equal();
        }
        o.json["max_degree"] = max_degree;
        o.json["gamma"] = {lo, hi};
        o.json["rows"] = js;
        o.json["all_equal"] = all;
        o.text = t.str();
        o.code = all ? kSuccess : kFail;
        return o;
    });
}

struct PropsOptions {
    std::size_t samples = 200;
    std::uint64_t seed = 1;
    std::int64_t height = 100;
    std::uint32_t degree = 3;
    std::size_t max_degree = 3;
};

inline Outcome props_cmd(const std::string& path, const PropsOptions& opt)
{
    const auto file = load_spec(path);
    return with_valued_field(file.field, [&](const auto& V) {
        const auto ctx = load_context(file, V);
        const auto& names = ctx.spec().names();
        const auto report = verify_value_function(ctx, opt.samples, opt.seed, opt.height, opt.degree);

        // layers F_gamma A cut by degree, compared on one element per sample
        std::vector<Json> layer_failures(opt.samples);
        parallel_for(opt.samples, [&](std::size_t i) {
            std::mt19937_64 rng(derive_seed(opt.seed ^ 0x5eedf11e5ULL, i));
            const auto a = random_element(ctx.spec(), rng, opt.height, opt.degree);
            Json f = Json::array();
            for (std::int64_t gamma = -3; gamma <= 3; ++gamma)
                for (int n = 0; n <= static_cast<int>(opt.degree); ++n) {
                    const auto [by_value, by_lattice] = filtration_membership(ctx, a, gamma, n);
                    if (by_value != by_lattice)
                        f.push_back({{"a", a.to_string(names)}, {"gamma", gamma}, {"n", n},
                                     {"by_value", by_value}, {"by_lattice", by_lattice}});
                }
            layer_failures[i] = std::move(f);
        });
        Json filtration_failures = Json::array();
        for (auto& f : layer_failures)
            for (auto& x : f) filtration_failures.push_back(std::move(x));

        const auto rows = double_graded_dims(ctx, opt.max_degree, -2, 2);
        const bool graded_ok = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.equal(); });

        Outcome o{header("props"), {}, kSuccess};
        o.json["field"] = V.describe();
        o.json["seed"] = opt.seed;
        o.json["samples"] = opt.samples;
        o.json["height"] = opt.height;
        o.json["degree"] = opt.degree;
        o.json["checks"] = report.checks;
        Json fails = Json::array();
        for (const auto& f : report.failures)
            fails.push_back({{"check", f.check}, {"a", f.a}, {"b", f.b}, {"expected", f.expected}, {"got", f.got}});
        o.json["failures"] = fails;
        o.json["filtration"] = {{"checked", opt.samples}, {"failures", filtration_failures}};
        Json dg = Json::array();
        for (const auto& r : rows)
            if (!r.equal()) dg.push_back({{"gamma", r.gamma}, {"n", r.n}});
        o.json["double_graded"] = {{"max_degree", opt.max_degree}, {"gamma", {-2, 2}}, {"all_equal", graded_ok}, {"mismatches", dg}};

        std::ostringstream t;
        t << "seed " << opt.seed << ", " << opt.samples << " samples, height " << opt.height << ", degree " << opt.degree
          << "\n";
        std::map<std::string, std::size_t> per_check;
        for (const auto& f : report.failures) ++per_check[f.check];
        for (const auto& c : report.checks) t << c << ": " << per_check[c] << " failures\n";
        t << "filtration layers: " << filtration_failures.size() << " failures\n";
        t << "double gradation: " << (graded_ok ? "all bidegrees agree" : "mismatch") << "\n";
        for (const auto& f : report.failures)
            t << "  " << f.check << ": a = " << f.a << ", b = " << f.b << ", expected " << f.expected << ", got "
              << f.got << "\n";
        o.text = t.str();
        o.code = report.failures.empty() && filtration_failures.empty() && graded_ok ? kSuccess : kFail;
        return o;
    });
}

inline Outcome lie_reduce_cmd(const std::string& path, std::uint64_t p, const std::string& emit)
{
    if (p < 2 || p >= (std::uint64_t{1} << 32) || !is_prime(p)) throw Error(Errc::InvalidField, "--p must be a prime below 2^32");
    Json input;
    try {
        input = Json::parse(read_file(path));
    }
    catch (const Json::parse_error& e) {
        throw Error(Errc::SyntaxError, e.what());
    }
    const RationalField QQ;
    if (!input.is_object() || !input.contains("constants")) throw Error(Errc::InvalidSpec, "expected {\"constants\": ...}");
    const auto& c = input["constants"];
    if (!c.is_array()) throw Error(Errc::InvalidSpec, "constants must be a g x g array");
    const std::size_t g = c.size();
    std::vector<std::string> names;
    if (input.contains("generators")) {
        for (const auto& n : input["generators"]) names.push_back(n.get<std::string>());
    }
    else {
        for (std::size_t i = 1; i <= g; ++i) names.push_back("x" + std::to_string(i));
    }
    std::vector<std::vector<std::optional<Vector<RationalField>>>> partial(g);
    for (std::size_t i = 0; i < g; ++i) {
        if (!c[i].is_array() || c[i].size() != g) throw Error(Errc::DimensionMismatch, "constants must be a g x g array");
        for (std::size_t j = 0; j < g; ++j)
            partial[i].push_back(c[i][j].is_null() ? std::nullopt
                                                   : std::optional(json_vector(QQ, c[i][j], "constants")));
    }
    const LieData<RationalField> data(QQ, names, complete_antisymmetric(QQ, partial));
    const PAdicRationals V(p);
    const auto r = lie_reduce(V, data);
    const PrimeField& kv = V.residue_field();
    const bool confluent = confluence_check(r.enveloping).pass();

    Outcome o{header("lie-reduce"), {}, kSuccess};
    o.json["p"] = p;
    o.json["generators"] = names;
    o.json["scale"] = r.scale;
    o.json["scaled_constants"] = constants_json(QQ, r.scaled.constants);
    o.json["reduced_constants"] = constants_json(kv, r.reduced.constants);
    o.json["jacobi_input"] = r.jacobi_input;
    o.json["jacobi_reduced"] = r.jacobi_reduced;
    o.json["degenerate"] = r.degenerate;
    o.json["enveloping_rules"] = r.enveloping.rule_strings();
    o.json["enveloping_confluent"] = confluent;
    const auto text = enveloping_spec_text(r.reduced, p);
    if (!emit.empty()) {
        std::ofstream out(emit, std::ios::binary);
        if (!out) throw Error(Errc::InvalidSpec, "cannot write '" + emit + "'");
        out << text;
        o.json["emitted"] = emit;
    }
    std::ostringstream t;
    t << "scale: basis multiplied by " << p << "^" << r.scale << "\n";
    t << "scaled brackets:\n";
    for (const auto& b : bracket_strings(r.scaled)) t << "  " << b << "\n";
    t << "reduced brackets over F_" << p << ":\n";
    for (const auto& b : bracket_strings(r.reduced)) t << "  " << b << "\n";
    t << "Jacobi (input): " << (r.jacobi_input ? "holds" : "fails") << "\n";
    t << "Jacobi (reduced): " << (r.jacobi_reduced ? "holds" : "fails") << "\n";
    if (r.degenerate) t << "note: the reduced Lie algebra is abelian\n";
    t << "enveloping spec: " << (confluent ? "Pass" : "Fail") << "\n";
    if (!emit.empty()) t << "wrote " << emit << "\n";
    o.text = t.str();
    o.code = r.jacobi_reduced && confluent ? kSuccess : kFail;
    return o;
}

inline Outcome lattice_cmd(const std::string& op, const std::string& path, const FieldDescriptor& fd)
{
    Json input;
    try {
        input = Json::parse(read_file(path));
    }
    catch (const Json::parse_error& e) {
        throw Error(Errc::SyntaxError, e.what());
    }
    if (!input.is_object() || !input.contains("generators"))
        throw Error(Errc::InvalidSpec, "expected {\"generators\": [...]}");
    return with_valued_field(fd, [&](const auto& V) {
        using VF = std::decay_t<decltype(V)>;
        const auto& K = V.base();
        const auto gens = json_vectors(K, input["generators"], "generators");
        std::size_t d = 0;
        if (input.contains("ambient"))
            d = input["ambient"].get<std::size_t>();
        else if (!gens.empty())
            d = gens[0].size();
        else
            throw Error(Errc::DimensionMismatch, "empty generator list needs \"ambient\"");
        const Lattice<VF> M(V, d, gens);
        Outcome o{header("lattice " + op), {}, kSuccess};
        o.json["field"] = V.describe();
        o.json["ambient"] = d;
        std::ostringstream t;
        auto describe = [&](const Lattice<VF>& L, const std::string& label) {
            t << label << ": rank " << L.rank() << " in K^" << L.ambient() << "\n";
            for (const auto& b : L.basis()) t << "  " << vector_string(K, b) << "\n";
            return Json{{"ambient", L.ambient()}, {"rank", L.rank()}, {"basis", vectors_json(K, L.basis())}};
        };
        auto subspace = [&] {
            if (!input.contains("subspace")) throw Error(Errc::InvalidSpec, "this operation needs \"subspace\"");
            auto s = json_vectors(K, input["subspace"], "subspace");
            for (const auto& v : s)
                if (v.size() != d) throw Error(Errc::DimensionMismatch, "subspace vector has the wrong length");
            return s;
        };
        if (op == "basis") {
            o.json["lattice"] = describe(M, "lattice");
            if (input.contains("subspace")) {
                const bool in = is_lattice_in(M, subspace());
                o.json["is_lattice_in_subspace"] = in;
                t << "lattice in the subspace: " << (in ? "yes" : "no") << "\n";
            }
        }
        else if (op == "intersect") {
            const auto I = intersect_with_subspace(M, subspace());
            o.json["intersection"] = describe(I, "intersection");
        }
        else if (op == "quotient") {
            const auto sub = subspace();
            const auto Q = quotient_lattice(M, sub);
            const auto comp = complement_coordinates(K, sub, d);
            o.json["complement_coordinates"] = comp;
            o.json["quotient"] = describe(Q, "quotient");
        }
        else if (op == "divisors") {
            // divisors of this lattice against "lattice" (default O_v^d)
            const Lattice<VF> ref = input.contains("lattice") ? Lattice<VF>(V, d, json_vectors(K, input["lattice"], "lattice"))
                                                              : Lattice<VF>::standard(V, d);
            const auto e = elementary_divisors(M, ref);
            o.json["divisors"] = e;
            const bool inside = std::all_of(e.begin(), e.end(), [](auto x) { return x >= 0; });
            o.json["contained"] = inside;
            t << "elementary divisors:";
            for (auto x : e) t << " " << x;
            t << "\ncontained: " << (inside ? "yes" : "no") << "\n";
        }
        else if (op == "reduce") {
            const auto r = reduction_dim(M);
            o.json["dim"] = r.dim;
            o.json["unramified"] = r.unramified;
            t << "dim over k_v: " << r.dim << "\nunramified: " << (r.unramified ? "yes" : "no") << "\n";
        }
        else {
            throw Error(Errc::InvalidSpec, "unknown lattice operation '" + op + "'");
        }
        o.text = t.str();
        return o;
    });
}

} // namespace detail

/// Runs the CLI on argv; output goes to out, diagnostics to err.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Valuation filtrations on PBW algebras: exact computations", "grval"};
    app.require_subcommand(1);
    bool json = false;
    app.add_flag("--json", json, "Print machine-readable JSON");

    std::function<detail::Outcome()> action;
    std::string spec, expr, mode = "graded", emit, lattice_op;
    std::size_t max_degree = 4;
    std::int64_t gamma_lo = -2, gamma_hi = 2;
    std::uint64_t p = 0, q = 0;
    std::string valuation = "p-adic";
    detail::PropsOptions props;

    auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", json, "Print machine-readable JSON"); };
    auto add_spec = [&](CLI::App* sub) { sub->add_option("spec", spec, "Algebra-spec file")->required(); };

    auto* check = app.add_subcommand("check-pbw", "Decide confluence of the rewriting rules");
    add_spec(check);
    add_json(check);
    check->callback([&] { action = [&] { return detail::check_pbw(spec); }; });

    auto* val = app.add_subcommand("val", "Gauss valuation of an element");
    add_spec(val);
    val->add_option("expression", expr, "Element in the generators")->required();
    add_json(val);
    val->callback([&] { action = [&] { return detail::valuation_cmd(spec, expr); }; });

    auto* sym = app.add_subcommand("symbol", "Principal symbol of an element");
    add_spec(sym);
    sym->add_option("expression", expr, "Element in the generators")->required();
    add_json(sym);
    sym->callback([&] { action = [&] { return detail::symbol_cmd(spec, expr); }; });

    auto* nf = app.add_subcommand("nf", "PBW normal form of an expression");
    add_spec(nf);
    nf->add_option("expression", expr, "Expression in the generators")->required();
    add_json(nf);
    nf->callback([&] { action = [&] { return detail::normal_form_cmd(spec, expr); }; });

    auto* hil = app.add_subcommand("hilbert", "Dimensions of graded pieces or filtration layers");
    add_spec(hil);
    hil->add_option("--max-degree", max_degree, "Largest degree")->default_val(4);
    hil->add_option("--mode", mode, "graded or filtered")->check(CLI::IsMember({"graded", "filtered"}))->default_val("graded");
    add_json(hil);
    hil->callback([&] { action = [&] { return detail::hilbert_cmd(spec, max_degree, mode); }; });

    auto* good = app.add_subcommand("good-reduction", "Compare Hilbert functions over K and k_v");
    add_spec(good);
    good->add_option("--max-degree", max_degree, "Largest degree")->default_val(4);
    add_json(good);
    good->callback([&] { action = [&] { return detail::good_reduction_cmd(spec, max_degree); }; });

    auto* graded = app.add_subcommand("graded-check", "Leading relations against filtered dimensions");
    add_spec(graded);
    graded->add_option("--max-degree", max_degree, "Largest degree")->default_val(4);
    add_json(graded);
    graded->callback([&] { action = [&] { return detail::graded_check_cmd(spec, max_degree); }; });

    auto* dbl = app.add_subcommand("double-graded", "Bidegree dimensions of G_f(G_v(A)) and G_v(G_F(A))");
    add_spec(dbl);
    dbl->add_option("--max-degree", max_degree, "Largest degree")->default_val(4);
    dbl->add_option("--gamma-min", gamma_lo, "Smallest Laurent degree")->default_val(-2);
    dbl->add_option("--gamma-max", gamma_hi, "Largest Laurent degree")->default_val(2);
    add_json(dbl);
    dbl->callback([&] { action = [&] { return detail::double_graded_cmd(spec, max_degree, gamma_lo, gamma_hi); }; });

    auto* lie = app.add_subcommand("lie-reduce", "Reduce Lie structure constants modulo p");
    lie->add_option("constants", spec, "JSON constants file")->required();
    lie->add_option("--p", p, "Prime")->required();
    lie->add_option("--emit", emit, "Write the enveloping spec of the reduction to this file");
    add_json(lie);
    lie->callback([&] { action = [&] { return detail::lie_reduce_cmd(spec, p, emit); }; });

    auto* pr = app.add_subcommand("props", "Randomized value-function and filtration checks");
    add_spec(pr);
    pr->add_option("--samples", props.samples, "Number of random pairs")->default_val(200);
    pr->add_option("--seed", props.seed, "Master seed")->default_val(1);
    pr->add_option("--height", props.height, "Coefficient height bound")->default_val(100);
    pr->add_option("--degree", props.degree, "Degree bound of random elements")->default_val(3);
    pr->add_option("--max-degree", props.max_degree, "Degree bound of the double-gradation table")->default_val(3);
    add_json(pr);
    pr->callback([&] { action = [&] { return detail::props_cmd(spec, props); }; });

    auto* lat = app.add_subcommand("lattice", "O_v-lattices in K^d");
    lat->add_option("operation", lattice_op, "basis, intersect, quotient, divisors or reduce")
        ->required()
        ->check(CLI::IsMember({"basis", "intersect", "quotient", "divisors", "reduce"}));
    lat->add_option("input", spec, "JSON file with generators, subspace, lattice")->required();
    lat->add_option("--valuation", valuation, "p-adic or t-adic")->check(CLI::IsMember({"p-adic", "t-adic"}))->default_val("p-adic");
    lat->add_option("--p", p, "Prime of the p-adic valuation");
    lat->add_option("--q", q, "Coefficient prime for t-adic lattices (default: rationals)");
    add_json(lat);
    lat->callback([&] {
        action = [&] {
            FieldDescriptor fd;
            if (valuation == "p-adic") {
                if (p < 2 || p >= (std::uint64_t{1} << 32) || !is_prime(p))
                    throw Error(Errc::InvalidField, "--p must be a prime below 2^32");
                fd = {FieldDescriptor::Kind::Rationals, FieldDescriptor::Valuation::PAdic, p, 0};
            }
            else {
                if (q != 0 && (q >= (std::uint64_t{1} << 32) || !is_prime(q)))
                    throw Error(Errc::InvalidField, "--q must be a prime below 2^32");
                fd = {FieldDescriptor::Kind::RationalFunctions, FieldDescriptor::Valuation::TAdic, 0, q};
            }
            return detail::lattice_cmd(lattice_op, spec, fd);
        };
    });

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kInputError;
    }
    try {
        auto o = action();
        if (json)
            out << o.json.dump(2) << "\n";
        else
            out << o.text;
        return o.code;
    }
    catch (const Error& e) {
        err << "error: " << (spec.empty() ? "" : spec + ": ") << e.what() << "\n";
        return kInputError;
    }
    catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternalError;
    }
}

} // namespace grval::app
