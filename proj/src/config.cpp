// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: Copyright 2026 The kexpr Authors

#include "kexpr/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

namespace kexpr {

namespace {

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::size_t edit_distance(std::string_view a, std::string_view b)
{
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) {
        prev[j] = j;
    }
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            cur[j] = std::min({ prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0U : 1U) });
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

const std::map<std::string, double OperatorRates::*>& rate_keys()
{
    static const std::map<std::string, double OperatorRates::*> keys {
        { "gep.species.inversion-prob", &OperatorRates::inversion },
        { "gep.species.mutation-prob", &OperatorRates::mutation },
        { "gep.species.istransposition-prob", &OperatorRates::is_transposition },
        { "gep.species.ristransposition-prob", &OperatorRates::ris_transposition },
        { "gep.species.onepointrecomb-prob", &OperatorRates::one_point_recomb },
        { "gep.species.twopointrecomb-prob", &OperatorRates::two_point_recomb },
        { "gep.species.generecomb-prob", &OperatorRates::gene_recomb },
        { "gep.species.genetransposition-prob", &OperatorRates::gene_transposition },
        { "gep.species.rnc-mutation-prob", &OperatorRates::rnc_mutation },
        { "gep.species.dc-mutation-prob", &OperatorRates::dc_mutation },
        { "gep.species.dc-inversion-prob", &OperatorRates::dc_inversion },
        { "gep.species.dc-istransposition-prob", &OperatorRates::dc_is_transposition },
    };
    return keys;
}

class Reader {
public:
    explicit Reader(const ParamEntry& e)
        : entry_(e)
    {
    }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw ConfigError("line " + std::to_string(entry_.line) + ": " + entry_.key + ": " + what + " (got '"
                          + entry_.value + "')");
    }

    std::size_t count(std::size_t min = 1) const
    {
        std::size_t v = 0;
        const auto& s = entry_.value;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size() || v < min) {
            fail("expected an integer >= " + std::to_string(min));
        }
        return v;
    }

    std::uint64_t u64() const
    {
        std::uint64_t v = 0;
        const auto& s = entry_.value;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size()) {
            fail("expected a non-negative integer");
        }
        return v;
    }

    double real() const
    {
        double v = 0;
        const auto& s = entry_.value;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v)) {
            fail("expected a real number");
        }
        return v;
    }

    double probability() const
    {
        const double v = real();
        if (v < 0.0 || v > 1.0) {
            fail("probability must lie in [0, 1]");
        }
        return v;
    }

    bool flag() const
    {
        const auto v = lower(entry_.value);
        if (v == "true" || v == "1" || v == "yes") {
            return true;
        }
        if (v == "false" || v == "0" || v == "no") {
            return false;
        }
        fail("expected true or false");
    }

    Function function() const
    {
        auto f = function_from_name(entry_.value);
        if (!f) {
            fail("unknown function");
        }
        return *f;
    }

    Algorithm algorithm_hint() const
    {
        const auto v = lower(entry_.value);
        if (v.find("nsga2") != std::string::npos) {
            return Algorithm::Nsga2;
        }
        if (v.find("spea2") != std::string::npos) {
            return Algorithm::Spea2;
        }
        fail("expected a reference to nsga2 or spea2");
    }

    const std::string& value() const { return entry_.value; }

private:
    const ParamEntry& entry_;
};

} // namespace

ParamFile ParamFile::parse(std::string_view text)
{
    ParamFile pf;
    std::istringstream in { std::string(text) };
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        const auto content = trim(line);
        if (content.empty()) {
            continue;
        }
        const auto eq = content.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        }
        auto key = trim(std::string_view(content).substr(0, eq));
        if (key.empty()) {
            throw ConfigError("line " + std::to_string(line_no) + ": empty key");
        }
        pf.set(std::move(key), trim(std::string_view(content).substr(eq + 1)), line_no);
    }
    return pf;
}

ParamFile ParamFile::load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read parameter file " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string ParamFile::serialize() const
{
    std::string out;
    for (const auto& e : entries_) {
        out += e.key + " = " + e.value + "\n";
    }
    return out;
}

void ParamFile::set(std::string key, std::string value, std::size_t line)
{
    for (auto& e : entries_) {
        if (e.key == key) {
            e.value = std::move(value);
            e.line = line;
            return;
        }
    }
    entries_.push_back({ std::move(key), std::move(value), line });
}

std::optional<std::string> ParamFile::get(std::string_view key) const
{
    for (const auto& e : entries_) {
        if (e.key == key) {
            return e.value;
        }
    }
    return std::nullopt;
}

const std::vector<std::string>& known_keys()
{
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k {
            "generations",
            "seed.0",
            "pop.subpop.0.size",
            "gep.species.numgenes",
            "gep.species.gene-headsize",
            "gep.species.symbolset.function.N",
            "gep.species.symbolset.function.N.weight",
            "pop.subpop.0.species.fitness.maximize",
            "multi.fitness.num-objectives",
            "multi.fitness.min.0",
            "multi.fitness.max.0",
            "multi.fitness.min.1",
            "multi.fitness.max.1",
            "parent.0",
            "pop.subpop.0.species.fitness",
            "select.tournament.size",
            "pop.subpop.0.archive-size",
            "pop.subpop.0.species.pipe.source.0.source.0",
            "breed.elite.0",
            "target",
            "x.algorithm",
            "x.function-set",
            "x.linking",
            "x.constant-min",
            "x.constant-max",
            "x.constants-per-gene",
            "x.rnc",
        };
        for (const auto& [key, member] : rate_keys()) {
            k.push_back(key);
        }
        return k;
    }();
    return keys;
}

RunConfig to_run_config(const ParamFile& params)
{
    static const std::regex function_key(R"(gep\.species\.symbolset\.function\.(\d+))");
    static const std::regex weight_key(R"(gep\.species\.symbolset\.function\.(\d+)\.weight)");

    RunConfig config;
    std::map<std::size_t, FunctionSymbol> slots;
    std::map<std::size_t, const ParamEntry*> weights;

    for (const auto& e : params.entries()) {
        const Reader r(e);
        const auto& k = e.key;
        std::smatch m;
        if (auto it = rate_keys().find(k); it != rate_keys().end()) {
            config.rates.*(it->second) = r.probability();
        } else if (k == "generations") {
            config.generations = r.count(0);
        } else if (k == "seed.0") {
            config.seed = r.u64();
        } else if (k == "pop.subpop.0.size") {
            config.population_size = r.count(2);
        } else if (k == "gep.species.numgenes") {
            config.genes = r.count();
        } else if (k == "gep.species.gene-headsize") {
            config.head_size = static_cast<int>(r.count());
        } else if (std::regex_match(k, m, weight_key)) {
            weights[std::stoul(m[1].str())] = &e;
        } else if (std::regex_match(k, m, function_key)) {
            slots[std::stoul(m[1].str())].function = r.function();
        } else if (k == "pop.subpop.0.species.fitness.maximize") {
            if (r.flag()) {
                r.fail("both objectives are minimized; maximize must be false");
            }
        } else if (k == "multi.fitness.num-objectives") {
            if (r.count() != 2) {
                r.fail("exactly two objectives (error, size) are supported");
            }
        } else if (k == "multi.fitness.min.0") {
            config.bounds.lower[0] = r.real();
        } else if (k == "multi.fitness.max.0") {
            config.bounds.upper[0] = r.real();
        } else if (k == "multi.fitness.min.1") {
            config.bounds.lower[1] = r.real();
        } else if (k == "multi.fitness.max.1") {
            config.bounds.upper[1] = r.real();
        } else if (k == "parent.0" || k == "pop.subpop.0.species.fitness") {
            config.algorithm = r.algorithm_hint();
        } else if (k == "select.tournament.size") {
            config.tournament_size = r.count();
        } else if (k == "pop.subpop.0.archive-size") {
            config.archive_size = r.count(2);
        } else if (k == "pop.subpop.0.species.pipe.source.0.source.0") {
            if (lower(r.value()).find("tournamentselection") == std::string::npos) {
                r.fail("only tournament selection is supported");
            }
        } else if (k == "breed.elite.0") {
            config.elite = r.count(0);
        } else if (k == "target") {
            if (r.value().empty()) {
                r.fail("target column name must not be empty");
            }
            config.target = r.value();
        } else if (k == "x.algorithm") {
            try {
                config.algorithm = algorithm_from_name(lower(r.value()));
            } catch (const ConfigError&) {
                r.fail("expected gep, nsga2 or spea2");
            }
        } else if (k == "x.function-set") {
            try {
                (void)function_set(r.value());
            } catch (const ConfigError&) {
                r.fail("expected tp or dew");
            }
            config.function_set = r.value();
        } else if (k == "x.linking") {
            config.linking = r.function();
            if (arity(config.linking) != 2) {
                r.fail("linking function must be binary");
            }
        } else if (k == "x.constant-min") {
            config.constants.lower = r.real();
        } else if (k == "x.constant-max") {
            config.constants.upper = r.real();
        } else if (k == "x.constants-per-gene") {
            config.constant_slots = static_cast<int>(r.count());
        } else if (k == "x.rnc") {
            config.rnc = r.flag();
        } else {
            const auto& known = known_keys();
            const auto best = std::min_element(known.begin(), known.end(), [&](const auto& a, const auto& b) {
                return edit_distance(k, a) < edit_distance(k, b);
            });
            throw ConfigError("line " + std::to_string(e.line) + ": unknown key '" + k + "' (did you mean '" + *best
                              + "'?)");
        }
    }

    for (const auto& [slot, entry] : weights) {
        const Reader r(*entry);
        if (!slots.contains(slot)) {
            r.fail("weight given for a function slot that is not set");
        }
        slots[slot].weight = static_cast<int>(r.count());
    }
    for (const auto& [slot, fs] : slots) {
        config.functions.push_back(fs);
    }
    if (!(config.constants.lower < config.constants.upper)) {
        throw ConfigError("x.constant-min must be below x.constant-max");
    }
    config.bounds.validate();
    return config;
}

} // namespace kexpr
