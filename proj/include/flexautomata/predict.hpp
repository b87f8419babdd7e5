#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "flexautomata/automaton.hpp"

namespace flexautomata {

enum class Fallback {
    GlobalMean, ///< mean of every target credited anywhere in the model
    LastState,  ///< mean of the deepest state reached that carries targets
    Error,      ///< throw DomainError
};

struct PredictionConfig {
    Fallback fallback = Fallback::GlobalMean;
};

/// Mean of all targets in the model. Throws DomainError when there are none.
double global_target_mean(const Automaton& a);

/// Mean target of the state the word ends in. The fallback applies when a
/// transition is missing or the end state has no targets.
double predict_value(const Automaton& a, std::span<const Symbol> word, const PredictionConfig& cfg = {});

/// Draws n accepted words by seeded random walks.
///
/// At each step the options are the outgoing transitions (weight
/// out_count + 1) and, in accepting states, stopping (weight end_pos_count + 1).
/// Options from which no accepting state is reachable within the remaining
/// length budget are excluded, so every walk ends in an accepted word of
/// length at most max_len. Throws DomainError if no such word exists.
std::vector<Word> sample_words(const Automaton& a, std::size_t n, std::uint64_t seed, std::size_t max_len);

} // namespace flexautomata
