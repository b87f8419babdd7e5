#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flexautomata/automaton.hpp"

namespace flexautomata {

enum class TraceLabel { Positive, Negative, Unlabeled };

/// One symbol occurrence, optionally enriched with real attributes and a target.
struct SymbolInstance {
    Symbol symbol = 0;
    std::vector<double> attributes;
    std::optional<double> target;

    bool operator==(const SymbolInstance&) const = default;
};

struct Trace {
    TraceLabel label = TraceLabel::Unlabeled;
    std::vector<SymbolInstance> symbols;

    Word word() const;
    std::size_t size() const noexcept { return symbols.size(); }
    bool operator==(const Trace&) const = default;
};

struct Sample {
    std::vector<Trace> traces;
    std::vector<std::string> alphabet;
    std::size_t attribute_arity = 0;

    std::size_t count(TraceLabel label) const;
    std::size_t max_length() const;
    bool has_targets() const;
};

/// Builds a sample from plain labeled words over a numeric alphabet.
Sample make_sample(const std::vector<std::pair<TraceLabel, Word>>& words, std::size_t alphabet_size);

} // namespace flexautomata
