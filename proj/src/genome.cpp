// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: Copyright 2026 The kexpr Authors

#include "kexpr/genome.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "kexpr/errors.hpp"

namespace kexpr {

GeneLayout layout_of(int head_len, const SymbolSet& symbols, bool rnc_enabled)
{
    if (head_len < 1) {
        throw ConfigError("gene head size must be >= 1");
    }
    if (symbols.functions().empty()) {
        throw ConfigError("gene layout requires at least one function");
    }
    GeneLayout layout;
    layout.head_len = head_len;
    layout.max_arity = symbols.max_arity();
    layout.tail_len = head_len * (layout.max_arity - 1) + 1;
    layout.rnc_enabled = rnc_enabled;
    layout.dc_len = rnc_enabled ? layout.tail_len : 0;
    return layout;
}

GenomeSchema make_schema(SymbolSet symbols, int head_len, std::size_t genes, bool rnc_enabled,
                         Function linking)
{
    if (genes < 1) {
        throw ConfigError("number of genes must be >= 1");
    }
    if (arity(linking) != 2) {
        throw ConfigError("linking function must be binary");
    }
    if (rnc_enabled && symbols.constant_slots() < 1) {
        throw ConfigError("random constants enabled with zero constant slots");
    }
    auto layout = layout_of(head_len, symbols, rnc_enabled);
    return GenomeSchema { std::move(symbols), layout, genes, linking };
}

bool is_valid(const Gene& gene, const GenomeSchema& schema)
{
    const auto& layout = schema.layout;
    const auto& symbols = schema.symbols;
    if (gene.symbols.size() != static_cast<std::size_t>(layout.length())) {
        return false;
    }
    const auto slots = layout.rnc_enabled ? static_cast<std::size_t>(symbols.constant_slots()) : 0U;
    for (std::size_t i = 0; i < gene.symbols.size(); ++i) {
        const auto& s = gene.symbols[i];
        switch (s.kind) {
        case Symbol::Kind::Function:
            if (i >= static_cast<std::size_t>(layout.head_len) || s.index >= symbols.functions().size()) {
                return false;
            }
            break;
        case Symbol::Kind::Variable:
            if (s.index >= symbols.variables().size()) {
                return false;
            }
            break;
        case Symbol::Kind::Constant:
            if (s.index >= slots) {
                return false;
            }
            break;
        }
    }
    if (gene.dc.size() != static_cast<std::size_t>(layout.dc_len) || gene.constants.size() != slots) {
        return false;
    }
    for (int k : gene.dc) {
        if (k < 0 || static_cast<std::size_t>(k) >= slots) {
            return false;
        }
    }
    const auto& range = symbols.constant_range();
    for (double c : gene.constants) {
        if (!std::isfinite(c) || c < range.lower || c > range.upper) {
            return false;
        }
    }
    return true;
}

bool is_valid(const Chromosome& chrom, const GenomeSchema& schema)
{
    if (chrom.genes.size() != schema.genes || chrom.genes.empty() || chrom.linking != schema.linking) {
        return false;
    }
    for (const auto& g : chrom.genes) {
        if (!is_valid(g, schema)) {
            return false;
        }
    }
    return true;
}

ExpressionTree ExpressionTree::make_constant(double v)
{
    ExpressionTree t;
    t.kind = Kind::Constant;
    t.value = v;
    return t;
}

ExpressionTree ExpressionTree::make_variable(std::string name)
{
    ExpressionTree t;
    t.kind = Kind::Variable;
    t.variable = std::move(name);
    return t;
}

ExpressionTree ExpressionTree::make_function(Function f, std::vector<ExpressionTree> args)
{
    ExpressionTree t;
    t.kind = Kind::Function;
    t.function = f;
    t.children = std::move(args);
    return t;
}

std::size_t ExpressionTree::size() const noexcept
{
    std::size_t n = 1;
    for (const auto& c : children) {
        n += c.size();
    }
    return n;
}

bool ExpressionTree::operator==(const ExpressionTree& other) const
{
    if (kind != other.kind) {
        return false;
    }
    switch (kind) {
    case Kind::Constant:
        return value == other.value;
    case Kind::Variable:
        return variable == other.variable;
    case Kind::Function:
        return function == other.function && children == other.children;
    }
    return false;
}

namespace {

int symbol_arity(const Symbol& s, const SymbolSet& symbols)
{
    return s.is_function() ? symbols.functions()[s.index].arity() : 0;
}

ExpressionTree build(const Gene& gene, const GenomeSchema& schema, const std::vector<std::size_t>& first_child,
                     std::size_t pos)
{
    const auto& s = gene.symbols[pos];
    switch (s.kind) {
    case Symbol::Kind::Variable:
        return ExpressionTree::make_variable(schema.symbols.variables()[s.index]);
    case Symbol::Kind::Constant:
        return ExpressionTree::make_constant(gene.constants[s.index]);
    case Symbol::Kind::Function:
        break;
    }
    const auto& fs = schema.symbols.functions()[s.index];
    std::vector<ExpressionTree> args;
    args.reserve(static_cast<std::size_t>(fs.arity()));
    for (int a = 0; a < fs.arity(); ++a) {
        args.push_back(build(gene, schema, first_child, first_child[pos] + static_cast<std::size_t>(a)));
    }
    return ExpressionTree::make_function(fs.function, std::move(args));
}

std::string symbol_text(const Symbol& s, const SymbolSet& symbols)
{
    switch (s.kind) {
    case Symbol::Kind::Function:
        return std::string(symbols.functions()[s.index].symbol());
    case Symbol::Kind::Variable:
        return symbols.variables()[s.index];
    case Symbol::Kind::Constant:
        return "C" + std::to_string(s.index);
    }
    return {};
}

void write_infix(std::ostream& os, const ExpressionTree& t)
{
    switch (t.kind) {
    case ExpressionTree::Kind::Constant:
        if (std::signbit(t.value)) {
            os << '(' << format_real(t.value) << ')';
        } else {
            os << format_real(t.value);
        }
        return;
    case ExpressionTree::Kind::Variable:
        os << t.variable;
        return;
    case ExpressionTree::Kind::Function:
        break;
    }
    if (t.children.size() == 2) {
        os << '(';
        write_infix(os, t.children[0]);
        os << print_symbol(t.function);
        write_infix(os, t.children[1]);
        os << ')';
    } else {
        os << print_symbol(t.function) << '(';
        write_infix(os, t.children[0]);
        os << ')';
    }
}

} // namespace

std::size_t expressed_length(const Gene& gene, const GenomeSchema& schema)
{
    std::size_t open = 1;
    std::size_t i = 0;
    while (open > 0) {
        if (i >= gene.symbols.size()) {
            throw ConfigError("gene does not close within its head and tail");
        }
        open += static_cast<std::size_t>(symbol_arity(gene.symbols[i], schema.symbols));
        --open;
        ++i;
    }
    return i;
}

ExpressionTree decode(const Gene& gene, const GenomeSchema& schema)
{
    // Level order: children of the i-th expressed node are the next unread
    // symbols, handed out in reading order.
    const auto len = expressed_length(gene, schema);
    std::vector<std::size_t> first_child(len, 0);
    std::size_t next = 1;
    for (std::size_t i = 0; i < len; ++i) {
        first_child[i] = next;
        next += static_cast<std::size_t>(symbol_arity(gene.symbols[i], schema.symbols));
    }
    return build(gene, schema, first_child, 0);
}

ExpressionTree express(const Chromosome& chrom, const GenomeSchema& schema)
{
    auto tree = decode(chrom.genes.front(), schema);
    for (std::size_t g = 1; g < chrom.genes.size(); ++g) {
        std::vector<ExpressionTree> args;
        args.push_back(std::move(tree));
        args.push_back(decode(chrom.genes[g], schema));
        tree = ExpressionTree::make_function(chrom.linking, std::move(args));
    }
    return tree;
}

std::size_t chromosome_size(const Chromosome& chrom, const GenomeSchema& schema)
{
    // Decoding is unnecessary: the expressed region length is the node count.
    std::size_t n = 0;
    for (const auto& g : chrom.genes) {
        n += expressed_length(g, schema);
    }
    return n;
}

std::string to_infix(const ExpressionTree& tree)
{
    std::ostringstream os;
    write_infix(os, tree);
    return os.str();
}

std::string render(const Chromosome& chrom, const GenomeSchema& schema, RenderStyle style)
{
    std::ostringstream os;
    if (style == RenderStyle::Infix) {
        for (std::size_t g = 0; g < chrom.genes.size(); ++g) {
            if (g > 0) {
                os << print_symbol(chrom.linking);
            }
            os << '(';
            write_infix(os, decode(chrom.genes[g], schema));
            os << ')';
        }
        return os.str();
    }
    for (std::size_t g = 0; g < chrom.genes.size(); ++g) {
        const auto& gene = chrom.genes[g];
        if (g > 0) {
            os << '\n';
        }
        os << "Gene " << g << '\n';
        for (std::size_t i = 0; i < gene.symbols.size(); ++i) {
            os << (i > 0 ? "." : "") << symbol_text(gene.symbols[i], schema.symbols);
        }
        os << '\n';
        for (std::size_t k = 0; k < gene.constants.size(); ++k) {
            os << 'C' << k << ": " << format_real(gene.constants[k]) << '\n';
        }
    }
    return os.str();
}

std::string format_real(double value)
{
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    std::string s(buf, end);
    if (s.find_first_of(".e") == std::string::npos) {
        s += ".0";
    }
    return s;
}

} // namespace kexpr
