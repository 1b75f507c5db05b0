// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: Copyright 2026 The kexpr Authors

#include "kexpr/symbols.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>

#include "kexpr/errors.hpp"

namespace kexpr {

namespace {

struct FunctionInfo {
    Function function;
    int arity;
    std::string_view name;
    std::string_view symbol;
};

constexpr std::array<FunctionInfo, 11> kFunctions { {
    { Function::Add, 2, "Add", "+" },
    { Function::Sub, 2, "Sub", "-" },
    { Function::Mul, 2, "Mul", "*" },
    { Function::Div, 2, "Div", "/" },
    { Function::Pow, 2, "Pow", "^" },
    { Function::Exp, 1, "Exp", "exp" },
    { Function::Ln, 1, "Ln", "ln" },
    { Function::Sin, 1, "Sin", "sin" },
    { Function::Cos, 1, "Cos", "cos" },
    { Function::Tan, 1, "Tan", "tan" },
    { Function::Sqrt, 1, "Sqrt", "sqrt" },
} };

const FunctionInfo& info(Function f) noexcept { return kFunctions[static_cast<std::size_t>(f)]; }

bool iequals(std::string_view a, std::string_view b)
{
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
        return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
    });
}

} // namespace

int arity(Function f) noexcept { return info(f).arity; }
std::string_view function_name(Function f) noexcept { return info(f).name; }
std::string_view print_symbol(Function f) noexcept { return info(f).symbol; }

std::optional<Function> function_from_name(std::string_view name)
{
    for (const auto& fi : kFunctions) {
        if (iequals(fi.name, name) || iequals(fi.symbol, name)) {
            return fi.function;
        }
    }
    return std::nullopt;
}

SymbolSet::SymbolSet(std::vector<FunctionSymbol> functions, std::vector<std::string> variables,
                     int constant_slots, ConstantRange range)
    : functions_(std::move(functions))
    , variables_(std::move(variables))
    , constant_slots_(constant_slots)
    , range_(range)
{
    if (functions_.empty()) {
        throw ConfigError("symbol set has no functions");
    }
    if (variables_.empty()) {
        throw ConfigError("symbol set has no variables");
    }
    if (constant_slots_ < 0) {
        throw ConfigError("negative number of constant slots");
    }
    if (!(range_.lower < range_.upper)) {
        throw ConfigError("constant range lower bound must be below upper bound");
    }
    std::set<std::string_view> names;
    for (const auto& f : functions_) {
        if (f.weight < 1) {
            throw ConfigError("function " + std::string(f.name()) + " has weight < 1");
        }
        if (!names.insert(f.name()).second) {
            throw ConfigError("duplicate function " + std::string(f.name()));
        }
        max_arity_ = std::max(max_arity_, f.arity());
    }
    std::set<std::string_view> vars;
    for (const auto& v : variables_) {
        if (v.empty() || !vars.insert(v).second) {
            throw ConfigError("variable names must be non-empty and unique");
        }
    }
}

std::optional<std::size_t> SymbolSet::variable_index(std::string_view name) const
{
    auto it = std::find(variables_.begin(), variables_.end(), name);
    if (it == variables_.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - variables_.begin());
}

std::vector<FunctionSymbol> function_set(std::string_view id)
{
    if (iequals(id, "tp")) {
        return { { Function::Add, 1 }, { Function::Mul, 1 }, { Function::Sub, 1 },
                 { Function::Div, 1 }, { Function::Exp, 1 }, { Function::Sin, 1 },
                 { Function::Cos, 1 }, { Function::Tan, 1 }, { Function::Sqrt, 1 } };
    }
    if (iequals(id, "dew")) {
        return { { Function::Add, 3 }, { Function::Mul, 3 }, { Function::Ln, 3 },
                 { Function::Div, 3 }, { Function::Exp, 3 } };
    }
    throw ConfigError("unknown function set '" + std::string(id) + "' (expected tp or dew)");
}

} // namespace kexpr
