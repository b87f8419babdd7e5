#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "flexautomata/aggregate.hpp"
#include "flexautomata/automaton.hpp"

namespace flexautomata {

/// Aggregates and labels of the two blocks joined by one merge step, as they
/// were at the moment of joining.
struct PairStatistics {
    StateAggregate left;
    StateAggregate right;
    StateLabel left_label = StateLabel::Unlabeled;
    StateLabel right_label = StateLabel::Unlabeled;
};

struct MergeOutcome {
    /// Present only for successful calls to merge(); trial_merge never materialises.
    std::optional<Automaton> result;
    /// Id of the state that replaced the top pair in result.
    std::optional<StateId> merged_state;
    /// Every pair joined, top pair first, then cascades in breadth-first order.
    std::vector<std::pair<StateId, StateId>> merged_pairs;
    std::vector<PairStatistics> distribution_stats;
    std::uint64_t label_matches = 0;
    bool label_conflict = false;
    double sse_delta = 0.0;

    bool succeeded() const noexcept { return !label_conflict; }
};

/// Increase of the within-group squared error when x and y are pooled:
/// nx*ny/(nx+ny) * (mean_x - mean_y)^2, zero if either side has no targets.
double pooled_sse_increase(const StateAggregate& x, const StateAggregate& y);

/// Merges q and q2 and determinises, returning a new automaton. The input is
/// never modified. The merged blocks receive fresh ids in the order in which
/// they were formed. Throws InputError if q == q2 or either id is unknown.
MergeOutcome merge(const Automaton& a, StateId q, StateId q2);

/// Same computation as merge() but only the statistics are produced.
MergeOutcome trial_merge(const Automaton& a, StateId q, StateId q2);

/// Result of an in-place merge.
struct AppliedMerge {
    StateId merged_state = 0;
    /// Old id -> new id for every state absorbed into a merged block.
    std::map<StateId, StateId> renamed;
};

/// Performs the merge directly on a. On label conflict a is left untouched
/// and std::nullopt is returned. Statistics are written to stats when given.
std::optional<AppliedMerge> merge_in_place(Automaton& a, StateId q, StateId q2,
                                           MergeOutcome* stats = nullptr);

namespace detail {
/// trial_merge without the per-pair aggregate copies (distribution_stats stays empty).
MergeOutcome trial_merge_counts_only(const Automaton& a, StateId q, StateId q2);
} // namespace detail

} // namespace flexautomata
