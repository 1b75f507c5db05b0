// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: Copyright 2026 The kexpr Authors

#include "kexpr/evalkit.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <random>

namespace kexpr {

std::optional<Eigen::Index> Dataset::column(std::string_view name) const
{
    auto it = std::find(variables.begin(), variables.end(), name);
    if (it == variables.end()) {
        return std::nullopt;
    }
    return static_cast<Eigen::Index>(it - variables.begin());
}

void Dataset::validate() const
{
    if (variables.empty()) {
        throw DataError("dataset has no input variables");
    }
    if (inputs.cols() != static_cast<Eigen::Index>(variables.size())) {
        throw DataError("dataset column count does not match variable names");
    }
    if (target.size() != inputs.rows()) {
        throw DataError("dataset target length does not match row count");
    }
    if (inputs.rows() < 2) {
        throw DataError("dataset needs at least two rows");
    }
    if (!inputs.allFinite() || !target.allFinite()) {
        throw DataError("dataset contains non-finite values");
    }
    if (!((target.array() - target.mean()).square().sum() > 0.0)) {
        throw DataError("dataset target has zero variance");
    }
}

namespace detail {

namespace {
void collect(const ExpressionTree& t, std::span<const std::string> names, std::vector<Eigen::Index>& out)
{
    if (t.kind == ExpressionTree::Kind::Variable) {
        auto it = std::find(names.begin(), names.end(), t.variable);
        if (it == names.end()) {
            throw ConfigError("unknown variable '" + t.variable + "'");
        }
        out.push_back(static_cast<Eigen::Index>(it - names.begin()));
        return;
    }
    for (const auto& c : t.children) {
        collect(c, names, out);
    }
}
} // namespace

std::vector<Eigen::Index> bind_variables(const ExpressionTree& tree, std::span<const std::string> names)
{
    std::vector<Eigen::Index> columns;
    collect(tree, names, columns);
    return columns;
}

} // namespace detail

ObjectiveVector objectives(const Chromosome& chrom, const GenomeSchema& schema, const Dataset& data)
{
    const auto size = chromosome_size(chrom, schema);
    const Eigen::ArrayXd predictions = evaluate(express(chrom, schema), data);
    if (!predictions.allFinite()) {
        return ObjectiveVector::invalid(size);
    }
    const double error = rrse(predictions, data.target);
    if (!std::isfinite(error)) {
        return ObjectiveVector::invalid(size);
    }
    return { error, size, true };
}

Problem problem_from_name(std::string_view text)
{
    std::string name(text);
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (name == "tp1") {
        return Problem::Tp1;
    }
    if (name == "tp2") {
        return Problem::Tp2;
    }
    if (name == "dew") {
        return Problem::Dew;
    }
    throw ConfigError("unknown problem '" + std::string(name) + "' (expected tp1, tp2 or dew)");
}

Dataset synth_dataset(Problem problem, std::size_t rows, std::uint64_t seed)
{
    if (rows < 2) {
        throw DataError("synthetic dataset needs at least two rows");
    }
    std::mt19937_64 rng(seed);
    const auto n = static_cast<Eigen::Index>(rows);
    Dataset data;
    if (problem == Problem::Dew) {
        std::uniform_real_distribution<double> temperature(0.0, 35.0);
        std::uniform_real_distribution<double> humidity(50.0, 100.0);
        data.variables = { "d0", "d1" };
        data.target_name = "dv";
        data.inputs.resize(n, 2);
        data.target.resize(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double t = temperature(rng);
            const double rh = humidity(rng);
            data.inputs(i, 0) = t;
            data.inputs(i, 1) = rh;
            data.target(i) = t - (100.0 - rh) / 5.0;
        }
        return data;
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    data.variables = { "a", "b", "c", "d", "e" };
    data.target_name = "y";
    data.inputs.resize(n, 5);
    data.target.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < 5; ++j) {
            data.inputs(i, j) = unit(rng);
        }
        const double a = data.inputs(i, 0), b = data.inputs(i, 1), c = data.inputs(i, 2), d = data.inputs(i, 3),
                     e = data.inputs(i, 4);
        data.target(i) = problem == Problem::Tp1
            ? std::cos(std::sqrt(std::sin(c))) * std::cos(b) * std::sin(a) + std::tan(d - e)
            : std::sin(a) * (std::cos(b) / std::sqrt(std::pow(10.0, c)) + std::tan(d - a));
    }
    return data;
}

Dataset slice(const Dataset& data, Eigen::Index first, Eigen::Index count)
{
    Dataset out;
    out.variables = data.variables;
    out.target_name = data.target_name;
    out.inputs = data.inputs.middleRows(first, count);
    out.target = data.target.segment(first, count);
    return out;
}

std::pair<Dataset, Dataset> split(const Dataset& data, double train_fraction)
{
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw DataError("train fraction must lie strictly between 0 and 1");
    }
    const auto n = data.rows();
    const auto train = static_cast<Eigen::Index>(std::floor(train_fraction * static_cast<double>(n)));
    if (train < 2 || n - train < 2) {
        throw DataError("split leaves fewer than two rows in a part");
    }
    return { slice(data, 0, train), slice(data, train, n - train) };
}

namespace {

class InfixParser {
public:
    explicit InfixParser(std::string_view text)
        : text_(text)
    {
    }

    ExpressionTree parse()
    {
        auto tree = expression();
        skip();
        if (pos_ != text_.size()) {
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        }
        return tree;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

    void skip()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c)
    {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) {
            fail(std::string("expected '") + c + "'");
        }
    }

    static ExpressionTree binary(Function f, ExpressionTree lhs, ExpressionTree rhs)
    {
        std::vector<ExpressionTree> args;
        args.push_back(std::move(lhs));
        args.push_back(std::move(rhs));
        return ExpressionTree::make_function(f, std::move(args));
    }

    ExpressionTree expression()
    {
        auto lhs = term();
        for (;;) {
            if (accept('+')) {
                lhs = binary(Function::Add, std::move(lhs), term());
            } else if (accept('-')) {
                lhs = binary(Function::Sub, std::move(lhs), term());
            } else {
                return lhs;
            }
        }
    }

    ExpressionTree term()
    {
        auto lhs = unary();
        for (;;) {
            if (accept('*')) {
                lhs = binary(Function::Mul, std::move(lhs), unary());
            } else if (accept('/')) {
                lhs = binary(Function::Div, std::move(lhs), unary());
            } else {
                return lhs;
            }
        }
    }

    // A minus sign directly in front of a literal is part of the literal
    // ("(-4.688)" is one constant node); otherwise -x reads as 0 - x.
    ExpressionTree unary()
    {
        if (accept('-')) {
            skip();
            if (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
                auto literal = number();
                literal.value = -literal.value;
                return power(std::move(literal));
            }
            return binary(Function::Sub, ExpressionTree::make_constant(0.0), unary());
        }
        return power(primary());
    }

    ExpressionTree power(ExpressionTree base)
    {
        if (accept('^')) {
            return binary(Function::Pow, std::move(base), unary());
        }
        return base;
    }

    ExpressionTree number()
    {
        skip();
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr == first) {
            fail("malformed number");
        }
        pos_ += static_cast<std::size_t>(ptr - first);
        return ExpressionTree::make_constant(value);
    }

    ExpressionTree primary()
    {
        skip();
        if (pos_ >= text_.size()) {
            fail("unexpected end of expression");
        }
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            auto inner = expression();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return number();
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const auto start = pos_;
            while (pos_ < text_.size()
                   && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            std::string name(text_.substr(start, pos_ - start));
            skip();
            if (pos_ < text_.size() && text_[pos_] == '(') {
                const auto f = function_from_name(name);
                if (!f) {
                    pos_ = start;
                    fail("unknown function '" + name + "'");
                }
                ++pos_;
                std::vector<ExpressionTree> args;
                args.push_back(expression());
                for (int i = 1; i < arity(*f); ++i) {
                    expect(',');
                    args.push_back(expression());
                }
                expect(')');
                return ExpressionTree::make_function(*f, std::move(args));
            }
            return ExpressionTree::make_variable(std::move(name));
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

ExpressionTree parse_infix(std::string_view text) { return InfixParser(text).parse(); }

} // namespace kexpr
