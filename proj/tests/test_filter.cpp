#include <doctest.h>

#include <map>
#include <random>

#include "aflux/errors.hpp"
#include "aflux/filter.hpp"
#include "aflux/fixture.hpp"
#include "aflux/keyword.hpp"

#include "support.hpp"

using namespace aflux;

namespace {

PropertyFn map_properties(const std::map<std::string, TypedValue>& values) {
    return [&values](const std::string& kw) -> const TypedValue* {
        auto it = values.find(kw);
        return it == values.end() ? nullptr : &it->second;
    };
}

bool normal_form(const FilterExpr& e) {
    if (e.is_compare()) return true;
    if (e.is_not()) return e.as_not().inner->is_compare();
    if (e.is_and()) {
        // Left-associated chain: the right child is never another And.
        return !e.as_and().right->is_and() && normal_form(*e.as_and().left) &&
               normal_form(*e.as_and().right);
    }
    return !e.as_or().right->is_or() && normal_form(*e.as_or().left) &&
           normal_form(*e.as_or().right);
}

}  // namespace

TEST_CASE("fluent builders produce comparison leaves") {
    FilterExpr e = key("Egap") > 6.0;
    REQUIRE(e.is_compare());
    CHECK(e.as_compare().keyword == "Egap");
    CHECK(e.as_compare().op == CompareOp::GT);
    CHECK(e.as_compare().operand.as_number() == 6.0);

    FilterExpr c = key("author") % "curtarolo";
    CHECK(c.as_compare().op == CompareOp::CONTAINS);
    CHECK(c.as_compare().operand.as_text() == "curtarolo");
}

TEST_CASE("substring matching refuses numeric operands") {
    CHECK_THROWS_AS(compare("Egap", CompareOp::CONTAINS, Literal::number(6)),
                    InvalidComparisonError);
}

TEST_CASE("numeric comparisons are strict") {
    TypedValue six = TypedValue::number(6.0);
    CHECK_FALSE(match_compare(CompareOp::GT, Literal::number(6), six));
    CHECK_FALSE(match_compare(CompareOp::LT, Literal::number(6), six));
    CHECK(match_compare(CompareOp::EQ, Literal::number(6), six));
    CHECK(match_compare(CompareOp::GT, Literal::number(5.999), six));
    CHECK(match_compare(CompareOp::LT, Literal::number(6.001), six));
}

TEST_CASE("string comparisons are prefix, suffix, substring and equality") {
    TypedValue name = TypedValue::text("s.curtarolo");
    CHECK(match_compare(CompareOp::LT, Literal::text("curtarolo"), name));
    CHECK_FALSE(match_compare(CompareOp::GT, Literal::text("curtarolo"), name));
    CHECK(match_compare(CompareOp::GT, Literal::text("s.c"), name));
    CHECK(match_compare(CompareOp::CONTAINS, Literal::text("curta"), name));
    CHECK_FALSE(match_compare(CompareOp::EQ, Literal::text("curtarolo"), name));
    CHECK(match_compare(CompareOp::EQ, Literal::text("s.curtarolo"), name));

    // Case-sensitive byte comparison, no locale involved.
    CHECK_FALSE(match_compare(CompareOp::CONTAINS, Literal::text("Curta"), name));
}

TEST_CASE("list kinds match when any element matches") {
    TypedValue authors = TypedValue::text_list({"curtarolo", "toher"});
    CHECK(match_compare(CompareOp::EQ, Literal::text("toher"), authors));
    CHECK(match_compare(CompareOp::GT, Literal::text("curt"), authors));
    CHECK_FALSE(match_compare(CompareOp::EQ, Literal::text("oses"), authors));

    TypedValue counts = TypedValue::number_list({1, 2, 3});
    CHECK(match_compare(CompareOp::GT, Literal::number(2.5), counts));
    CHECK_FALSE(match_compare(CompareOp::GT, Literal::number(3), counts));
    CHECK(match_compare(CompareOp::EQ, Literal::number(2), counts));
}

TEST_CASE("type mismatches and non-comparable kinds never match") {
    CHECK_FALSE(match_compare(CompareOp::EQ, Literal::number(6), TypedValue::text("6")));
    CHECK_FALSE(match_compare(CompareOp::EQ, Literal::text("6"), TypedValue::number(6)));
    CHECK_FALSE(match_compare(CompareOp::EQ, Literal::number(1),
                              TypedValue::matrix({{1, 2}, {3, 4}})));
    Kpoints kp;
    kp.relaxation_grid = {8, 8, 8};
    kp.band_path = {"G-X"};
    kp.points_per_segment = 16;
    CHECK_FALSE(match_compare(CompareOp::EQ, Literal::text("G-X"), TypedValue::kpoints(kp)));
}

TEST_CASE("missing properties make comparisons false under classical connectives") {
    std::map<std::string, TypedValue> values{{"Egap", TypedValue::number(8.8)}};
    PropertyFn props = map_properties(values);

    CHECK(evaluate(key("Egap") > 6.0, props));
    CHECK_FALSE(evaluate(key("density") > 0.0, props));
    CHECK(evaluate(~(key("density") > 0.0), props));
    CHECK(evaluate((key("density") > 0.0) | (key("Egap") > 6.0), props));
    CHECK_FALSE(evaluate((key("density") > 0.0) & (key("Egap") > 6.0), props));
}

TEST_CASE("validation reports unknown keywords and kind mismatches") {
    RegistryPtr registry = embedded_registry();

    CHECK(validate(key("Egap") > 6.0, *registry).empty());
    CHECK(validate(key("author") % "curt", *registry).empty());

    auto unknown = validate(key("Egapp") > 6.0, *registry);
    REQUIRE(unknown.size() == 1);
    CHECK(unknown[0].keyword == "Egapp");

    auto text_on_number = validate(key("Egap") == "wide", *registry);
    REQUIRE(text_on_number.size() == 1);

    auto number_on_string = validate(key("compound") > 6.0, *registry);
    REQUIRE(number_on_string.size() == 1);

    auto on_matrix = validate(key("positions_cartesian") == 0.0, *registry);
    REQUIRE(on_matrix.size() == 1);
    auto on_kpoints = validate(key("kpoints") == "G-X", *registry);
    REQUIRE(on_kpoints.size() == 1);

    auto both = validate((key("Egapp") > 1.0) & (key("kpoints") == "x"), *registry);
    CHECK(both.size() == 2);

    CHECK_THROWS_AS(require_valid(key("Egapp") > 6.0, *registry), ValidationError);
    CHECK_NOTHROW(require_valid(key("Egap") > 6.0, *registry));
}

TEST_CASE("keywords_of lists first appearances without duplicates") {
    FilterExpr e = (key("Egap") > 0.0) & ((key("natoms") < 5.0) | (key("Egap") < 2.0));
    CHECK(keywords_of(e) == std::vector<std::string>{"Egap", "natoms"});
}

TEST_CASE("structural equality distinguishes zero from negative zero") {
    CHECK(structurally_equal(key("Egap") == 0.0, key("Egap") == 0.0));
    CHECK_FALSE(structurally_equal(key("Egap") == 0.0, key("Egap") == -0.0));
    CHECK_FALSE(structurally_equal(key("Egap") == 0.0, key("Egap") > 0.0));
    CHECK_FALSE(structurally_equal(key("Egap") == 0.0, key("natoms") == 0.0));
}

TEST_CASE("normalize pushes negation to leaves and left-associates chains") {
    FilterExpr e = ~((key("Egap") > 6.0) & ~(key("natoms") < 5.0));
    FilterExpr n = normalize(e);
    CHECK(normal_form(n));
    // De Morgan: Or(Not(GT), LT)
    REQUIRE(n.is_or());
    CHECK(n.as_or().left->is_not());
    CHECK(n.as_or().right->is_compare());

    FilterExpr chain = (key("Egap") > 1.0) & ((key("Egap") > 2.0) & (key("Egap") > 3.0));
    CHECK(normal_form(normalize(chain)));

    FilterExpr dbl = ~~(key("Egap") > 6.0);
    CHECK(structurally_equal(normalize(dbl), key("Egap") > 6.0));
}

TEST_CASE("normalize preserves evaluation on 200 random trees") {
    std::mt19937 rng(40923);
    Dataset ds = fixture_dataset();
    const KeywordRegistry& registry = ds.registry();

    for (int i = 0; i < 200; ++i) {
        FilterExpr e = testsupport::random_filter(rng, 4);
        FilterExpr n = normalize(e);

        CHECK(normal_form(n));
        CHECK(structurally_equal(normalize(n), n));  // idempotent
        CHECK(keywords_of(e) == keywords_of(n));

        // Same verdict on every fixture record, judged by the test-side
        // raw-string evaluator rather than the code under test.
        for (std::size_t r = 0; r < ds.records().size(); r += 7) {
            const Record& rec = ds.records()[r];
            CHECK(testsupport::brute_holds(e, rec, registry) ==
                  testsupport::brute_holds(n, rec, registry));
        }
    }
}

TEST_CASE("library evaluation agrees with the raw-string evaluator on the fixture") {
    std::mt19937 rng(52188);
    Dataset ds = fixture_dataset();
    const KeywordRegistry& registry = ds.registry();

    for (int i = 0; i < 100; ++i) {
        FilterExpr e = testsupport::random_filter(rng, 3);
        for (std::size_t r = 0; r < ds.records().size(); r += 3) {
            PropertyFn props = [&](const std::string& kw) { return ds.value(r, kw); };
            CHECK(evaluate(e, props) ==
                  testsupport::brute_holds(e, ds.records()[r], registry));
        }
    }
}
