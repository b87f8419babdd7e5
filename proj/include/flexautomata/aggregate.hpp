#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace flexautomata {

using Symbol = std::uint32_t;

/// Empirical statistics collected in one state.
///
/// Every trace whose computation visits the state bumps total_count. The
/// trace's ending (by label) and the symbol it leaves through are counted
/// separately, so out_counts plus the end counts sum to total_count for a
/// state built from a sample. Targets and attributes of a symbol instance are
/// credited to the state reached after reading it.
struct StateAggregate {
    std::uint64_t total_count = 0;
    std::uint64_t end_pos_count = 0;
    std::uint64_t end_neg_count = 0;
    std::uint64_t end_unlabeled_count = 0;
    std::map<Symbol, std::uint64_t> out_counts;
    std::uint64_t target_count = 0;
    double target_sum = 0.0;
    double target_sumsq = 0.0;
    std::vector<double> attribute_sums;

    std::uint64_t end_count() const noexcept {
        return end_pos_count + end_neg_count + end_unlabeled_count;
    }

    std::uint64_t out_count(Symbol s) const {
        auto it = out_counts.find(s);
        return it == out_counts.end() ? 0 : it->second;
    }

    std::optional<double> target_mean() const {
        if (target_count == 0) return std::nullopt;
        return target_sum / static_cast<double>(target_count);
    }

    /// Sum of squared deviations of the credited targets from their mean.
    double squared_error() const;

    bool operator==(const StateAggregate&) const = default;
};

/// Field-wise sum. An aggregate with empty attribute_sums is treated as
/// arity-agnostic (it has seen no attributed symbols); otherwise arities must
/// match or InputError is thrown.
StateAggregate merge_aggregates(const StateAggregate& x, const StateAggregate& y);

} // namespace flexautomata
