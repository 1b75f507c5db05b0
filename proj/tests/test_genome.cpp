// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: Copyright 2026 The kexpr Authors

#include <doctest.h>

#include "kexpr/errors.hpp"
#include "kexpr/genome.hpp"
#include "kexpr/operators.hpp"
#include "test_support.hpp"

using namespace kexpr;
using kexpr::test::gene_from_karva;

namespace {

const std::vector<std::string> kAtoE { "A", "B", "C", "D", "E" };

} // namespace

TEST_CASE("layout geometry")
{
    const SymbolSet tp(function_set("tp"), { "a" });
    const auto l8 = layout_of(8, tp, true);
    CHECK(l8.tail_len == 9);
    CHECK(l8.length() == 17);
    CHECK(l8.dc_len == 9);

    const auto l4 = layout_of(4, tp, false);
    CHECK(l4.tail_len == 5);
    CHECK(l4.length() == 9);
    CHECK(l4.dc_len == 0);

    const auto l1 = layout_of(1, tp, false);
    CHECK(l1.tail_len == 2);
    CHECK(l1.length() == 3);

    const SymbolSet unary({ { Function::Sin, 1 } }, { "a" });
    CHECK(layout_of(5, unary, false).tail_len == 1);
}

TEST_CASE("symbol set rejects empty function or variable lists")
{
    CHECK_THROWS_AS(SymbolSet({}, { "a" }), ConfigError);
    CHECK_THROWS_AS(SymbolSet(function_set("tp"), {}), ConfigError);
    CHECK_THROWS_AS(function_set("nope"), ConfigError);
}

TEST_CASE("decode a three-symbol gene")
{
    const auto s = test::schema("tp", { "a", "b" }, 1, 1, false);
    const auto g = gene_from_karva(s, "+.a.b");
    const auto tree = decode(g, s);
    CHECK(tree == ExpressionTree::make_function(Function::Add, { ExpressionTree::make_variable("a"),
                                                                 ExpressionTree::make_variable("b") }));
    CHECK(tree.size() == 3);
    CHECK(expressed_length(g, s) == 3);
}

TEST_CASE("decode the humidity gene with a negative constant")
{
    const auto s = test::schema("dew", { "d0", "d1" }, 4, 1);
    const double c1 = -9.381786492548889;
    const auto g = gene_from_karva(s, "*.ln.C1.d0.C0.C1.d1.d1.C1", { -1.0538681881248397, c1 });
    REQUIRE(is_valid(g, s));
    CHECK(expressed_length(g, s) == 4);
    const auto expected = ExpressionTree::make_function(
        Function::Mul,
        { ExpressionTree::make_function(Function::Ln, { ExpressionTree::make_variable("d0") }),
          ExpressionTree::make_constant(c1) });
    CHECK(decode(g, s) == expected);
}

TEST_CASE("a terminal at the root expresses a single node")
{
    const auto s = test::schema("dew", { "d0", "d1" }, 4, 1);
    const auto g = gene_from_karva(s, "d0.d0.C0.d0.d1.C1.C0.d0.d1");
    CHECK(expressed_length(g, s) == 1);
    CHECK(decode(g, s) == ExpressionTree::make_variable("d0"));
    CHECK(chromosome_size(test::chromosome({ g }), s) == 1);
}

TEST_CASE("sizes of the reported test problem solutions")
{
    const auto s = test::schema("tp", kAtoE, 8, 1);
    const auto g = gene_from_karva(s, "cos.*.sin.sqrt.C.cos.E");
    CHECK(chromosome_size(test::chromosome({ g }), s) == 7);
    CHECK(to_infix(decode(g, s)) == "cos((sin(C)*sqrt(cos(E))))");

    const auto s3 = test::schema("tp", kAtoE, 8, 3);
    const auto chrom = test::chromosome({ gene_from_karva(s3, "cos.sin.A"),
                                          gene_from_karva(s3, "*.E./.B.C0", { 7.0, 0.0 }),
                                          gene_from_karva(s3, "sin.*.C1.A", { 0.0, 0.0 }) });
    CHECK(chromosome_size(chrom, s3) == 12);
    CHECK(express(chrom, s3).size() == 14);
    CHECK(render(chrom, s3, RenderStyle::Infix) == "(cos(sin(A)))+((E*(B/7.0)))+(sin((0.0*A)))");
}

TEST_CASE("two genes linked by addition render as (a)+(b)")
{
    const auto s = test::schema("tp", { "a", "b" }, 2, 2, false);
    const auto chrom = test::chromosome({ gene_from_karva(s, "a"), gene_from_karva(s, "b") });
    CHECK(render(chrom, s, RenderStyle::Infix) == "(a)+(b)");
    const auto linked = express(chrom, s);
    CHECK(linked.function == Function::Add);
    CHECK(linked.size() == 3);
    CHECK(chromosome_size(chrom, s) == 2);
}

TEST_CASE("karva rendering prints every position and the constant table")
{
    const auto s = test::schema("dew", { "d0", "d1" }, 4, 1);
    const auto g = gene_from_karva(s, "*.ln.C1.d0.C0.C1.d1.d1.C1", { -1.0538681881248397, -9.381786492548889 });
    CHECK(render(test::chromosome({ g }), s, RenderStyle::Karva)
          == "Gene 0\n*.ln.C1.d0.C0.C1.d1.d1.C1\nC0: -1.0538681881248397\nC1: -9.381786492548889\n");
}

TEST_CASE("format_real")
{
    CHECK(format_real(7.0) == "7.0");
    CHECK(format_real(0.0) == "0.0");
    CHECK(format_real(-9.381786492548889) == "-9.381786492548889");
    CHECK(format_real(0.1) == "0.1");
    CHECK(format_real(1e300) == "1e+300");
}

TEST_CASE("validity checks catch broken genes")
{
    const auto s = test::schema("tp", { "a", "b" }, 3, 1);
    auto g = gene_from_karva(s, "+.a.b");
    CHECK(is_valid(g, s));

    SUBCASE("function in the tail") {
        g.symbols[s.layout.head_len] = Symbol::function(0);
        CHECK_FALSE(is_valid(g, s));
    }
    SUBCASE("wrong length") {
        g.symbols.pop_back();
        CHECK_FALSE(is_valid(g, s));
    }
    SUBCASE("dc index out of range") {
        g.dc[0] = s.symbols.constant_slots();
        CHECK_FALSE(is_valid(g, s));
    }
    SUBCASE("constant outside the range") {
        g.constants[0] = 11.0;
        CHECK_FALSE(is_valid(g, s));
    }
    SUBCASE("unknown variable index") {
        g.symbols[1] = Symbol::variable(7);
        CHECK_FALSE(is_valid(g, s));
    }
}

TEST_CASE("random genes decode, and infix text parses back to the same size")
{
    Rng rng(2024);
    for (int head : { 1, 4, 8 }) {
        const auto s = test::schema("tp", kAtoE, head, 3);
        for (int i = 0; i < 300; ++i) {
            const auto chrom = random_chromosome(s, rng);
            REQUIRE(is_valid(chrom, s));
            std::size_t total = 0;
            for (const auto& g : chrom.genes) {
                const auto len = expressed_length(g, s);
                CHECK(len >= 1);
                CHECK(len <= static_cast<std::size_t>(s.layout.length()));
                CHECK(decode(g, s).size() == len);
                total += len;
            }
            CHECK(chromosome_size(chrom, s) == total);
            CHECK(express(chrom, s).size() == total + chrom.genes.size() - 1);
        }
    }
}
