// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: Copyright 2026 The kexpr Authors

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kexpr {

/// Primitive functions known to the evaluator and the parser.
enum class Function : std::uint8_t { Add, Sub, Mul, Div, Pow, Exp, Ln, Sin, Cos, Tan, Sqrt };

int arity(Function f) noexcept;

/// Long name as used in parameter files ("Add", "Sqrt", ...).
std::string_view function_name(Function f) noexcept;

/// Short symbol used in Karva strings and infix text ("+", "sqrt", ...).
std::string_view print_symbol(Function f) noexcept;

/// Case-insensitive lookup by long name or print symbol.
std::optional<Function> function_from_name(std::string_view name);

struct FunctionSymbol {
    Function function = Function::Add;
    int weight = 1;

    int arity() const noexcept { return kexpr::arity(function); }
    std::string_view name() const noexcept { return function_name(function); }
    std::string_view symbol() const noexcept { return print_symbol(function); }
};

struct ConstantRange {
    double lower = -10.0;
    double upper = 10.0;
};

/// Functions, variables and random-constant slots available to a gene.
class SymbolSet {
public:
    SymbolSet(std::vector<FunctionSymbol> functions, std::vector<std::string> variables,
              int constant_slots = 2, ConstantRange range = {});

    const std::vector<FunctionSymbol>& functions() const noexcept { return functions_; }
    const std::vector<std::string>& variables() const noexcept { return variables_; }
    int constant_slots() const noexcept { return constant_slots_; }
    const ConstantRange& constant_range() const noexcept { return range_; }

    int max_arity() const noexcept { return max_arity_; }
    std::optional<std::size_t> variable_index(std::string_view name) const;

private:
    std::vector<FunctionSymbol> functions_;
    std::vector<std::string> variables_;
    int constant_slots_;
    ConstantRange range_;
    int max_arity_ = 0;
};

/// Named function sets: "tp" (the nine test-problem primitives, weight 1)
/// and "dew" (Add, Mul, Ln, Div, Exp with weight 3).
std::vector<FunctionSymbol> function_set(std::string_view id);

} // namespace kexpr
