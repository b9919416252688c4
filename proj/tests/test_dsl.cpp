#include <doctest.h>

#include <random>
#include <string>

#include "aflux/dsl.hpp"
#include "aflux/errors.hpp"
#include "aflux/filter.hpp"
#include "aflux/value.hpp"

#include "support.hpp"

using namespace aflux;

namespace {

std::string render(const FilterExpr& e) {
    if (e.is_compare()) {
        const CompareNode& c = e.as_compare();
        std::string op;
        switch (c.op) {
            case CompareOp::GT: op = ">"; break;
            case CompareOp::LT: op = "<"; break;
            case CompareOp::EQ: op = "=="; break;
            case CompareOp::CONTAINS: op = "%"; break;
        }
        std::string operand = c.operand.is_number()
                                  ? format_number(c.operand.as_number())
                                  : "\"" + c.operand.as_text() + "\"";
        return c.keyword + " " + op + " " + operand;
    }
    if (e.is_not()) return "~(" + render(*e.as_not().inner) + ")";
    if (e.is_and())
        return "(" + render(*e.as_and().left) + " & " + render(*e.as_and().right) + ")";
    return "(" + render(*e.as_or().left) + " | " + render(*e.as_or().right) + ")";
}

std::size_t offset_of(const std::string& text) {
    try {
        parse_filter_dsl(text);
    } catch (const ParseError& e) {
        return e.offset();
    }
    FAIL("expected ParseError for: ", text);
    return std::size_t(-1);
}

}  // namespace

TEST_CASE("comparisons parse into the four operators") {
    CHECK(structurally_equal(parse_filter_dsl("Egap > 6"), key("Egap") > 6.0));
    CHECK(structurally_equal(parse_filter_dsl("Egap < 2"), key("Egap") < 2.0));
    CHECK(structurally_equal(parse_filter_dsl("natoms == 3"), key("natoms") == 3.0));
    CHECK(structurally_equal(parse_filter_dsl("author % \"curtarolo\""),
                             key("author") % "curtarolo"));
    CHECK(structurally_equal(parse_filter_dsl("compound == \"Mg1O2\""),
                             key("compound") == "Mg1O2"));
}

TEST_CASE("numbers accept signs, decimals, and exponents") {
    CHECK(parse_filter_dsl("Egap > -1.5").as_compare().operand.as_number() == -1.5);
    CHECK(parse_filter_dsl("Egap > +3").as_compare().operand.as_number() == 3.0);
    CHECK(parse_filter_dsl("Egap > .5").as_compare().operand.as_number() == 0.5);
    CHECK(parse_filter_dsl("volume_cell < 1e3").as_compare().operand.as_number() == 1000.0);
    double z = parse_filter_dsl("Egap == -0").as_compare().operand.as_number();
    CHECK(std::signbit(z));
}

TEST_CASE("the band-gap window expression matches its fluent form") {
    FilterExpr windows = ((key("Egap") > 0.0) & (key("Egap") < 2.0)) |
                         ((key("Egap") > 5.0) & (key("Egap") < 7.0));
    CHECK(structurally_equal(
        parse_filter_dsl("Egap > 0 & Egap < 2 | Egap > 5 & Egap < 7"), windows));
}

TEST_CASE("conjunction binds tighter than disjunction") {
    FilterExpr parsed = parse_filter_dsl("Egap > 1 | density > 2 & natoms < 4");
    REQUIRE(parsed.is_or());
    CHECK(parsed.as_or().left->is_compare());
    CHECK(parsed.as_or().right->is_and());

    FilterExpr grouped = parse_filter_dsl("(Egap > 1 | density > 2) & natoms < 4");
    REQUIRE(grouped.is_and());
    CHECK(grouped.as_and().left->is_or());
}

TEST_CASE("chains associate to the left") {
    FilterExpr e = parse_filter_dsl("Egap > 1 & density > 2 & natoms < 4");
    REQUIRE(e.is_and());
    CHECK(e.as_and().left->is_and());
    CHECK(e.as_and().right->is_compare());
}

TEST_CASE("negation binds tightest") {
    CHECK(structurally_equal(parse_filter_dsl("~Egap == 0"), ~(key("Egap") == 0.0)));
    CHECK(structurally_equal(parse_filter_dsl("~~Egap == 0"), ~~(key("Egap") == 0.0)));
    CHECK(structurally_equal(parse_filter_dsl("~(Egap > 1 | natoms < 2)"),
                             ~((key("Egap") > 1.0) | (key("natoms") < 2.0))));
    FilterExpr e = parse_filter_dsl("~Egap == 0 & natoms < 4");
    REQUIRE(e.is_and());
    CHECK(e.as_and().left->is_not());
}

TEST_CASE("whitespace is free around every token") {
    FilterExpr tight = parse_filter_dsl("Egap>6&natoms<4|compound%\"Mg\"");
    FilterExpr loose = parse_filter_dsl("  Egap  >  6  &  natoms < 4 | compound % \"Mg\" ");
    CHECK(structurally_equal(tight, loose));
    REQUIRE(tight.is_or());
}

TEST_CASE("quoted strings keep their bytes verbatim") {
    FilterExpr e = parse_filter_dsl("author == \"s. curtarolo, duke\"");
    CHECK(e.as_compare().operand.as_text() == "s. curtarolo, duke");
    CHECK(parse_filter_dsl("compound == \"\"").as_compare().operand.as_text().empty());
}

TEST_CASE("unknown operators name the four that exist") {
    try {
        parse_filter_dsl("Egap >> 6");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 5);
        CHECK(std::string(e.what()) ==
              "unknown operator '>>' at offset 5; expected '>' or '<' or '==' or '%'");
    }
    CHECK(offset_of("Egap = 6") == 5);
    CHECK(offset_of("Egap === 6") == 5);
    CHECK(offset_of("Egap != 6") == 5);
}

TEST_CASE("parse errors point at the offending byte") {
    CHECK(offset_of("") == 0);
    CHECK(offset_of("5 > 3") == 0);
    CHECK(offset_of("Egap 6") == 5);             // missing operator
    CHECK(offset_of("Egap > ") == 7);            // missing operand
    CHECK(offset_of("Egap > one") == 7);         // bare word operand
    CHECK(offset_of("author % curtarolo") == 9); // strings need quotes
    CHECK(offset_of("Egap == \"open") == 8);     // unterminated string
    CHECK(offset_of("(Egap > 1") == 9);          // unclosed parenthesis
    CHECK(offset_of("Egap > 1 density < 2") == 9);
    CHECK(offset_of("Egap > 1 & ") == 11);
    CHECK(offset_of("Egap > 1 | | natoms < 2") == 11);
    CHECK(offset_of("~") == 1);
}

TEST_CASE("trailing input names the joiners it would accept") {
    try {
        parse_filter_dsl("Egap > 1 density < 2");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        REQUIRE(e.expected().size() == 3);
        CHECK(e.expected()[0] == "'&'");
        CHECK(e.expected()[1] == "'|'");
        CHECK(e.expected()[2] == "end of input");
    }
}

TEST_CASE("substring comparison refuses a numeric operand outright") {
    CHECK_THROWS_AS(parse_filter_dsl("Egap % 6"), InvalidComparisonError);
}

TEST_CASE("random filters survive a render and reparse") {
    std::mt19937 rng(6502);
    for (int i = 0; i < 100; ++i) {
        FilterExpr original = testsupport::random_filter(rng, 3);
        std::string text = render(original);
        CAPTURE(text);
        FilterExpr reparsed = parse_filter_dsl(text);
        CHECK(structurally_equal(reparsed, original));
    }
}
