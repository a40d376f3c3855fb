#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "grval/grval.hpp"

using namespace grval;

namespace {

std::string gallery(const std::string& name)
{
    std::ifstream in(std::string(GRVAL_GALLERY_DIR) + "/" + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SpecFileError parse_error(const std::string& text)
{
    try {
        parse_spec_file(text);
    }
    catch (const SpecFileError& e) {
        return e;
    }
    ADD_FAILURE() << "no error for:\n" << text;
    return SpecFileError(0, 0, "");
}

const std::string kQField = "[field]\nkind = \"rationals\"\nvaluation = \"p-adic\"\np = 3\n";

} // namespace

TEST(SpecFile, ParsesFieldDescriptors)
{
    const auto w = parse_spec_file(gallery("weyl1.spec"));
    EXPECT_EQ(w.format_version, 1);
    EXPECT_EQ(w.field.kind, FieldDescriptor::Kind::Rationals);
    EXPECT_EQ(w.field.valuation, FieldDescriptor::Valuation::PAdic);
    EXPECT_EQ(w.field.p, 2u);

    const auto t = parse_spec_file(gallery("qplane-tadic.spec"));
    EXPECT_EQ(t.field.kind, FieldDescriptor::Kind::RationalFunctions);
    EXPECT_EQ(t.field.valuation, FieldDescriptor::Valuation::TAdic);
    EXPECT_EQ(t.field.q, 3u);
    ASSERT_TRUE(t.algebra);
    EXPECT_EQ(t.algebra->kind, "pbw");
    EXPECT_EQ(t.algebra->generators, (std::vector<std::string>{"x", "y"}));
    ASSERT_EQ(t.algebra->relations.size(), 1u);
    EXPECT_EQ(t.algebra->relations[0].text, "y*x = (1 + t)*x*y");
}

TEST(SpecFile, EnvelopingTakesGeneratorsFromLie)
{
    const auto f = parse_spec_file(gallery("sl2.spec"));
    ASSERT_TRUE(f.lie && f.algebra);
    EXPECT_EQ(f.algebra->kind, "enveloping");
    EXPECT_EQ(f.algebra->generators, (std::vector<std::string>{"h", "e", "f"}));
    EXPECT_EQ(f.lie->brackets.size(), 3u);
}

TEST(SpecFile, StringPositionsAreRecorded)
{
    const auto f = parse_spec_file(kQField + "[algebra]\nkind = \"pbw\"\ngenerators = [\"x\", \"D\"]\n"
                                             "relations = [\"D*x = x*D + 1\"]\n");
    ASSERT_EQ(f.algebra->relations.size(), 1u);
    EXPECT_EQ(f.algebra->relations[0].line, 8u);
    EXPECT_EQ(f.algebra->relations[0].column, 14u);
}

TEST(SpecFile, ReportsLineAndColumn)
{
    auto e = parse_error(kQField + "bogus = 1\n");
    EXPECT_EQ(e.line(), 5u);
    EXPECT_EQ(e.column(), 9u);
    EXPECT_NE(std::string(e.what()).find("unknown key 'bogus'"), std::string::npos);

    e = parse_error("[field]\nkind = \"reals\"\n");
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 8u);

    e = parse_error("[field\n");
    EXPECT_EQ(e.line(), 1u);

    e = parse_error(kQField + "[extra]\nx = 1\n");
    EXPECT_NE(std::string(e.what()).find("unknown section [extra]"), std::string::npos);

    e = parse_error("format_version = 2\n" + kQField);
    EXPECT_EQ(e.line(), 1u);

    e = parse_error("[field]\nkind = \"rationals\"\nvaluation = \"p-adic\"\np = 6\n");
    EXPECT_EQ(e.line(), 4u);
    EXPECT_EQ(e.code(), Errc::InvalidSpec);
}

TEST(SpecFile, RejectsStructuralMistakes)
{
    parse_error("[algebra]\nkind = \"pbw\"\ngenerators = [\"x\"]\n");                 // no field
    parse_error("[field]\nkind = \"prime_field\"\n");                                // no q
    parse_error("[field]\nkind = \"prime_field\"\nq = 5\nvaluation = \"p-adic\"\n"); // no valuation on F_q
    parse_error(kQField + "[algebra]\nkind = \"enveloping\"\n");                      // no lie
    parse_error(kQField + "[algebra]\nkind = \"pbw\"\ngenerators = [\"x\", \"x\"]\n");
    parse_error(kQField + "[algebra]\nkind = \"pbw\"\ngenerators = [\"1x\"]\n");
    parse_error(kQField + "[algebra]\nkind = \"pbw\"\ngenerators = \"x\"\n");
    parse_error(kQField + "[algebra]\nkind = \"group\"\n");
}

TEST(SpecFile, ExpressionErrorsPointIntoTheString)
{
    const auto file = parse_spec_file(kQField + "[algebra]\nkind = \"pbw\"\ngenerators = [\"x\", \"D\"]\n"
                                                "relations = [\"D*x = x*Q + 1\"]\n");
    try {
        build_pbw(file, RationalField{});
        FAIL() << "no error";
    }
    catch (const SpecFileError& e) {
        EXPECT_EQ(e.line(), 8u);
        EXPECT_GT(e.column(), 14u);
    }
}

TEST(SpecFile, BuildsTheWeylAlgebra)
{
    const RationalField QQ;
    const auto spec = build_pbw(parse_spec_file(gallery("weyl1.spec")), QQ);
    const auto direct = make_weyl(1, QQ);
    EXPECT_EQ(spec.rule_strings(), direct.rule_strings());
    EXPECT_TRUE(confluence_check(spec).pass());
}

TEST(SpecFile, BuildsEnvelopingAlgebraFromBrackets)
{
    const RationalField QQ;
    const auto spec = build_pbw(parse_spec_file(gallery("sl2.spec")), QQ);
    const auto direct = make_enveloping(QQ, {"h", "e", "f"}, fixtures::sl2_constants(QQ));
    EXPECT_EQ(spec.rule_strings(), direct.rule_strings());
}

TEST(SpecFile, RuleStringsRoundTrip)
{
    // relations printed by rule_strings parse back to the same rules
    for (const char* name : {"weyl2.spec", "sl2.spec", "jordan.spec", "qplane-p3.spec"}) {
        const RationalField QQ;
        const auto file = parse_spec_file(gallery(name));
        const auto spec = build_pbw(file, QQ);
        std::string text = kQField + "[algebra]\nkind = \"pbw\"\ngenerators = [";
        for (std::size_t i = 0; i < spec.names().size(); ++i) text += (i ? ", \"" : "\"") + spec.names()[i] + "\"";
        text += "]\nrelations = [\n";
        for (const auto& r : spec.rule_strings()) text += "  \"" + r + "\",\n";
        text += "]\n";
        const auto again = build_pbw(parse_spec_file(text), QQ);
        EXPECT_EQ(again.rule_strings(), spec.rule_strings()) << name;
    }
}

TEST(SpecFile, TadicCoefficientsUseTheVariable)
{
    const auto file = parse_spec_file(gallery("qplane-tadic.spec"));
    const RationalFunctionField<PrimeField> K(PrimeField(3));
    const auto spec = build_pbw(file, K);
    const auto yx = parse_element(spec, "y*x");
    EXPECT_EQ(yx.to_string(spec.names()), "(t + 1)*x*y");
}

TEST(SpecFile, PresentationAcceptsEquations)
{
    const RationalField QQ;
    const auto a = build_presentation(parse_spec_file(gallery("qplane-presentation.spec")), QQ);
    const auto b = build_presentation(
        parse_spec_file(kQField + "[algebra]\nkind = \"presentation\"\ngenerators = [\"x\", \"y\"]\n"
                                  "relations = [\"y*x = 3*x*y\"]\n"),
        QQ);
    ASSERT_EQ(a.relations().size(), 1u);
    ASSERT_EQ(b.relations().size(), 1u);
    EXPECT_EQ(a.relations()[0], b.relations()[0]);
}
