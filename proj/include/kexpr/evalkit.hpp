// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: Copyright 2026 The kexpr Authors

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "kexpr/errors.hpp"
#include "kexpr/genome.hpp"

namespace kexpr {

/// Named input columns plus a target column. Rows are kept in their original
/// (time) order.
struct Dataset {
    std::vector<std::string> variables;
    Eigen::MatrixXd inputs; // rows x variables
    Eigen::VectorXd target;
    std::string target_name = "y";

    Eigen::Index rows() const noexcept { return inputs.rows(); }
    std::optional<Eigen::Index> column(std::string_view name) const;

    /// Throws DataError when the shape, row count or target variance is off.
    void validate() const;
};

/// Two minimized objectives. Invalid individuals carry an infinite error.
struct ObjectiveVector {
    double error = std::numeric_limits<double>::infinity();
    std::size_t size = 0;
    bool valid = false;

    static ObjectiveVector invalid(std::size_t size)
    {
        return { std::numeric_limits<double>::infinity(), size, false };
    }
    bool operator==(const ObjectiveVector&) const = default;
};

namespace detail {

template <typename Scalar>
Scalar apply(Function f, Scalar a, Scalar b)
{
    using std::cos;
    using std::exp;
    using std::log;
    using std::pow;
    using std::sin;
    using std::sqrt;
    using std::tan;
    switch (f) {
    case Function::Add: return a + b;
    case Function::Sub: return a - b;
    case Function::Mul: return a * b;
    case Function::Div: return a / b;
    case Function::Pow: return pow(a, b);
    case Function::Exp: return exp(a);
    case Function::Ln: return log(a);
    case Function::Sin: return sin(a);
    case Function::Cos: return cos(a);
    case Function::Tan: return tan(a);
    case Function::Sqrt: return sqrt(a);
    }
    return std::numeric_limits<Scalar>::quiet_NaN();
}

template <typename Scalar>
std::optional<Scalar> eval_row(const ExpressionTree& t, std::span<const Scalar> row,
                               std::span<const Eigen::Index> columns, std::size_t& leaf)
{
    switch (t.kind) {
    case ExpressionTree::Kind::Constant:
        return static_cast<Scalar>(t.value);
    case ExpressionTree::Kind::Variable:
        return row[static_cast<std::size_t>(columns[leaf++])];
    case ExpressionTree::Kind::Function:
        break;
    }
    auto a = eval_row(t.children[0], row, columns, leaf);
    if (!a) {
        return std::nullopt;
    }
    Scalar b {};
    if (t.children.size() > 1) {
        auto rb = eval_row(t.children[1], row, columns, leaf);
        if (!rb) {
            return std::nullopt;
        }
        b = *rb;
    }
    const Scalar r = apply(t.function, *a, b);
    if (!std::isfinite(r)) {
        return std::nullopt;
    }
    return r;
}

template <typename Array>
Array apply_array(Function f, const Array& a, const Array& b)
{
    switch (f) {
    case Function::Add: return a + b;
    case Function::Sub: return a - b;
    case Function::Mul: return a * b;
    case Function::Div: return a / b;
    case Function::Pow: return a.pow(b);
    case Function::Exp: return a.exp();
    case Function::Ln: return a.log();
    case Function::Sin: return a.sin();
    case Function::Cos: return a.cos();
    case Function::Tan: return a.tan();
    case Function::Sqrt: return a.sqrt();
    }
    return Array::Constant(a.size(), std::numeric_limits<typename Array::Scalar>::quiet_NaN());
}

template <typename Derived>
Eigen::Array<typename Derived::Scalar, Eigen::Dynamic, 1>
eval_columns(const ExpressionTree& t, const Eigen::MatrixBase<Derived>& inputs,
             std::span<const Eigen::Index> columns, std::size_t& leaf)
{
    using Scalar = typename Derived::Scalar;
    using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;
    const auto n = inputs.rows();
    switch (t.kind) {
    case ExpressionTree::Kind::Constant:
        return Array::Constant(n, static_cast<Scalar>(t.value));
    case ExpressionTree::Kind::Variable:
        return inputs.col(columns[leaf++]).array();
    case ExpressionTree::Kind::Function:
        break;
    }
    Array a = eval_columns(t.children[0], inputs, columns, leaf);
    Array b = t.children.size() > 1 ? eval_columns(t.children[1], inputs, columns, leaf) : Array();
    Array r = apply_array(t.function, a, b);
    // Non-finite values become NaN so they survive every later operation
    // (exp(-inf) would otherwise hide an invalid intermediate).
    return r.isFinite().select(r, Array::Constant(n, std::numeric_limits<Scalar>::quiet_NaN()));
}

/// Column index of every variable leaf, in the depth-first order the
/// evaluators visit them.
std::vector<Eigen::Index> bind_variables(const ExpressionTree& tree, std::span<const std::string> names);

} // namespace detail

/// Protected scalar evaluation of one row. Any non-finite intermediate or
/// result gives std::nullopt. Unknown variables throw ConfigError.
template <typename Scalar>
std::optional<Scalar> eval_tree(const ExpressionTree& tree, std::span<const Scalar> row,
                                std::span<const std::string> names)
{
    const auto columns = detail::bind_variables(tree, names);
    std::size_t leaf = 0;
    return detail::eval_row<Scalar>(tree, row, columns, leaf);
}

/// Vectorized evaluation over every row of `inputs`; invalid rows are NaN.
template <typename Derived>
Eigen::Array<typename Derived::Scalar, Eigen::Dynamic, 1>
evaluate(const ExpressionTree& tree, const Eigen::MatrixBase<Derived>& inputs, std::span<const std::string> names)
{
    const auto columns = detail::bind_variables(tree, names);
    std::size_t leaf = 0;
    return detail::eval_columns(tree, inputs, columns, leaf);
}

inline Eigen::ArrayXd evaluate(const ExpressionTree& tree, const Dataset& data)
{
    return evaluate(tree, data.inputs, data.variables);
}

/// Root relative squared error, sqrt(sum (p-y)^2 / sum (mean(y)-y)^2).
template <typename DerivedP, typename DerivedY>
double rrse(const Eigen::DenseBase<DerivedP>& predictions, const Eigen::DenseBase<DerivedY>& targets)
{
    if (predictions.size() != targets.size() || targets.size() < 2) {
        throw DataError("rrse needs equal-length vectors with at least two entries");
    }
    const Eigen::ArrayXd y = targets.derived().template cast<double>().array();
    const Eigen::ArrayXd p = predictions.derived().template cast<double>().array();
    const double mean = y.mean();
    const double denom = (y - mean).square().sum();
    if (!(denom > 0.0)) {
        throw DataError("rrse undefined for a constant target");
    }
    return std::sqrt((p - y).square().sum() / denom);
}

ObjectiveVector objectives(const Chromosome& chrom, const GenomeSchema& schema, const Dataset& data);

enum class Problem { Tp1, Tp2, Dew };

Problem problem_from_name(std::string_view name);

/// Deterministic synthetic data: tp1/tp2 with inputs a..e ~ U[0,1], dew with
/// temperature d0 ~ U[0,35], humidity d1 ~ U[50,100] and dv = d0 - (100-d1)/5.
Dataset synth_dataset(Problem problem, std::size_t rows, std::uint64_t seed);

/// Order-preserving split; the first floor(fraction*n) rows train.
std::pair<Dataset, Dataset> split(const Dataset& data, double train_fraction);

/// Rows [first, first+count) of a dataset.
Dataset slice(const Dataset& data, Eigen::Index first, Eigen::Index count);

/// Infix parser: + - * / ^, unary functions by name, numbers, variables.
ExpressionTree parse_infix(std::string_view text);

} // namespace kexpr
