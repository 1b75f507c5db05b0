// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: Copyright 2026 The kexpr Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "kexpr/symbols.hpp"

namespace kexpr {

/// Head/tail/Dc geometry shared by every gene of a chromosome.
/// The tail is long enough (h*(a-1)+1) that any head decodes to a closed tree.
struct GeneLayout {
    int head_len = 1;
    int max_arity = 2;
    int tail_len = 2;
    int dc_len = 0;
    bool rnc_enabled = false;

    int length() const noexcept { return head_len + tail_len; }
    bool operator==(const GeneLayout&) const = default;
};

GeneLayout layout_of(int head_len, const SymbolSet& symbols, bool rnc_enabled);

/// One position of a Karva string. `index` refers into the symbol set's
/// functions or variables, or names the constant slot Ck.
struct Symbol {
    enum class Kind : std::uint8_t { Function, Variable, Constant };

    Kind kind = Kind::Variable;
    std::uint16_t index = 0;

    static Symbol function(std::size_t i) { return { Kind::Function, static_cast<std::uint16_t>(i) }; }
    static Symbol variable(std::size_t i) { return { Kind::Variable, static_cast<std::uint16_t>(i) }; }
    static Symbol constant(std::size_t k) { return { Kind::Constant, static_cast<std::uint16_t>(k) }; }

    bool is_function() const noexcept { return kind == Kind::Function; }
    bool operator==(const Symbol&) const = default;
};

struct Gene {
    std::vector<Symbol> symbols;   // head_len + tail_len
    std::vector<int> dc;           // dc_len indices into constants
    std::vector<double> constants; // constant slots C0..Cm-1

    bool operator==(const Gene&) const = default;
};

struct Chromosome {
    std::vector<Gene> genes;
    Function linking = Function::Add;

    bool operator==(const Chromosome&) const = default;
};

/// Everything needed to interpret a chromosome: symbols, gene geometry,
/// gene count and linking function.
struct GenomeSchema {
    SymbolSet symbols;
    GeneLayout layout;
    std::size_t genes = 1;
    Function linking = Function::Add;
};

GenomeSchema make_schema(SymbolSet symbols, int head_len, std::size_t genes, bool rnc_enabled,
                         Function linking = Function::Add);

bool is_valid(const Gene& gene, const GenomeSchema& schema);
bool is_valid(const Chromosome& chrom, const GenomeSchema& schema);

/// Decoded expression. A plain recursive value: functions own their children.
struct ExpressionTree {
    enum class Kind : std::uint8_t { Function, Variable, Constant };

    Kind kind = Kind::Constant;
    Function function = Function::Add;
    std::string variable;
    double value = 0.0;
    std::vector<ExpressionTree> children;

    static ExpressionTree make_constant(double v);
    static ExpressionTree make_variable(std::string name);
    static ExpressionTree make_function(Function f, std::vector<ExpressionTree> args);

    /// Node count.
    std::size_t size() const noexcept;

    bool operator==(const ExpressionTree& other) const;
};

/// Number of leading symbols that belong to the expressed tree.
std::size_t expressed_length(const Gene& gene, const GenomeSchema& schema);

/// Breadth-first Karva decoding of the expressed region.
ExpressionTree decode(const Gene& gene, const GenomeSchema& schema);

/// Gene trees joined left-associatively by the linking function.
ExpressionTree express(const Chromosome& chrom, const GenomeSchema& schema);

/// Sum of gene tree sizes; linking nodes are not counted.
std::size_t chromosome_size(const Chromosome& chrom, const GenomeSchema& schema);

enum class RenderStyle { Karva, Infix };

std::string render(const Chromosome& chrom, const GenomeSchema& schema, RenderStyle style);

/// Fully parenthesized infix text of a single tree.
std::string to_infix(const ExpressionTree& tree);

/// Shortest text that reads back to the same double, with a ".0" suffix on
/// integral values ("7.0", "-9.381786492548889").
std::string format_real(double value);

} // namespace kexpr
