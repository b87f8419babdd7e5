#include "flexautomata/aggregate.hpp"

#include <algorithm>
#include <string>

#include "flexautomata/error.hpp"

namespace flexautomata {

double StateAggregate::squared_error() const {
    if (target_count == 0) return 0.0;
    const double n = static_cast<double>(target_count);
    return std::max(0.0, target_sumsq - target_sum * target_sum / n);
}

StateAggregate merge_aggregates(const StateAggregate& x, const StateAggregate& y) {
    if (!x.attribute_sums.empty() && !y.attribute_sums.empty() &&
        x.attribute_sums.size() != y.attribute_sums.size()) {
        throw InputError("attribute arity mismatch: " + std::to_string(x.attribute_sums.size()) + " vs " +
                         std::to_string(y.attribute_sums.size()));
    }
    StateAggregate m = x;
    m.total_count += y.total_count;
    m.end_pos_count += y.end_pos_count;
    m.end_neg_count += y.end_neg_count;
    m.end_unlabeled_count += y.end_unlabeled_count;
    for (const auto& [sym, c] : y.out_counts) m.out_counts[sym] += c;
    m.target_count += y.target_count;
    m.target_sum += y.target_sum;
    m.target_sumsq += y.target_sumsq;
    if (m.attribute_sums.empty()) {
        m.attribute_sums = y.attribute_sums;
    } else {
        for (std::size_t i = 0; i < y.attribute_sums.size(); ++i) m.attribute_sums[i] += y.attribute_sums[i];
    }
    return m;
}

} // namespace flexautomata
