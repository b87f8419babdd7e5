#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "flexautomata/automaton.hpp"
#include "flexautomata/heuristics.hpp"
#include "flexautomata/sample.hpp"

namespace flexautomata {

struct LearnerConfig {
    HeuristicId heuristic = Edsm{};
    /// Candidate merges scoring below this are not taken.
    double min_evidence = 0.0;
    std::optional<std::size_t> max_iterations;
    /// Run check_integrity after every merge.
    bool debug_trace = false;
    /// Worker threads for scoring red-blue pairs; 0 or 1 scores sequentially.
    unsigned threads = 1;
};

struct LearnerState {
    std::set<StateId> red;
    std::set<StateId> blue;
};

struct LogEntry {
    enum class Kind { Promote, Merge, Prune };
    Kind kind = Kind::Promote;
    StateId red = 0;  ///< Merge: red state; Promote: promoted state
    StateId blue = 0; ///< Merge only
    StateId result = 0; ///< Merge only: the new state
    double score = 0.0;
    std::size_t pruned = 0; ///< Prune only
};

struct LearnLog {
    std::vector<LogEntry> entries;

    /// "PROMOTE id", "MERGE r b score" and "PRUNE n" lines.
    std::string to_text() const;
};

struct LearnResult {
    Automaton model;
    LearnLog log;
    std::size_t iterations = 0;
};

/// Initial colouring: start red, its children blue.
LearnerState initial_state(const Automaton& a);

/// Non-red children of red states.
std::set<StateId> blue_frontier(const Automaton& a, const std::set<StateId>& red);

/// Moves b from blue to red and adds its non-red children to blue.
LearnerState promote(const LearnerState& ls, StateId b, const Automaton& a);

/// Red-blue state merging starting from the sample's prefix tree.
LearnResult learn(const Sample& sample, const LearnerConfig& cfg);

/// Red-blue state merging from an arbitrary starting automaton.
LearnResult learn_from(Automaton start, const LearnerConfig& cfg);

} // namespace flexautomata
