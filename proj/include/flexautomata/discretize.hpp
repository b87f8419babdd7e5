#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "flexautomata/sample.hpp"

namespace flexautomata {

/// Equal-width bins over [min, max].
struct UniformBins {
    std::size_t bins = 2;
};

/// Equal-mass bins.
struct QuantileBins {
    std::size_t bins = 2;
};

enum class TargetKind { NextDelta, NextValue };

struct DiscretizationSpec {
    std::variant<UniformBins, QuantileBins> method = UniformBins{};
    std::size_t window = 1;
    TargetKind target = TargetKind::NextDelta;
};

struct Discretization {
    Sample sample;
    /// Upper (inclusive) edges of every bin but the last, ascending.
    std::vector<double> edges;
    std::vector<std::string> warnings;
};

/// Bin edges for the series under the given method. Duplicate quantile edges
/// are collapsed and reported through warnings when given.
std::vector<double> bin_edges(std::span<const double> series, const DiscretizationSpec& spec,
                              std::vector<std::string>* warnings = nullptr);

/// Index of the bin holding x; values equal to an edge fall in the lower bin.
Symbol bin_of(std::span<const double> edges, double x);

/// Turns a numeric series into unlabeled traces of bin symbols, one per
/// sliding window that has a successor. The last symbol of each trace carries
/// the next delta or the next raw value as its target.
Discretization discretize(std::span<const double> series, const DiscretizationSpec& spec);

} // namespace flexautomata
