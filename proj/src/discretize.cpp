#include "flexautomata/discretize.hpp"

#include <algorithm>
#include <cmath>

#include "flexautomata/error.hpp"
#include "flexautomata/sample_io.hpp"

namespace flexautomata {

namespace {

std::size_t bin_count(const DiscretizationSpec& spec) {
    return std::visit([](const auto& m) { return m.bins; }, spec.method);
}

std::string interval_name(std::span<const double> edges, std::size_t bin) {
    std::string lo = bin == 0 ? "(-inf" : "(" + format_real(edges[bin - 1]);
    std::string hi = bin == edges.size() ? "+inf)" : format_real(edges[bin]) + "]";
    return lo + "," + hi;
}

} // namespace

std::vector<double> bin_edges(std::span<const double> series, const DiscretizationSpec& spec,
                              std::vector<std::string>* warnings) {
    const std::size_t k = bin_count(spec);
    if (k == 0) throw InputError("number of bins must be at least 1");
    if (series.empty()) throw InputError("cannot bin an empty series");
    for (double x : series) {
        if (!std::isfinite(x)) throw InputError("series contains a non-finite value");
    }

    std::vector<double> edges;
    if (std::holds_alternative<UniformBins>(spec.method)) {
        const auto [lo, hi] = std::minmax_element(series.begin(), series.end());
        const double width = (*hi - *lo) / static_cast<double>(k);
        for (std::size_t i = 1; i < k; ++i) edges.push_back(*lo + static_cast<double>(i) * width);
        return edges;
    }

    std::vector<double> sorted(series.begin(), series.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    for (std::size_t i = 1; i < k; ++i) {
        // Smallest index whose prefix holds at least i/k of the mass.
        const std::size_t upto = (i * n + k - 1) / k;
        edges.push_back(sorted[std::max<std::size_t>(upto, 1) - 1]);
    }
    const std::size_t before = edges.size();
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    if (edges.size() != before && warnings) {
        warnings->push_back("quantile binning collapsed " + std::to_string(before - edges.size()) +
                            " duplicate edge(s); using " + std::to_string(edges.size() + 1) + " bins");
    }
    return edges;
}

Symbol bin_of(std::span<const double> edges, double x) {
    // Count of edges strictly below x: a value equal to an edge stays in the lower bin.
    return static_cast<Symbol>(std::lower_bound(edges.begin(), edges.end(), x) - edges.begin());
}

Discretization discretize(std::span<const double> series, const DiscretizationSpec& spec) {
    if (spec.window == 0) throw InputError("window must be at least 1");
    if (series.size() <= spec.window) {
        throw InputError("series of length " + std::to_string(series.size()) + " is not longer than the window " +
                         std::to_string(spec.window));
    }
    Discretization d;
    d.edges = bin_edges(series, spec, &d.warnings);

    std::vector<Symbol> symbols(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) symbols[i] = bin_of(d.edges, series[i]);

    for (std::size_t b = 0; b <= d.edges.size(); ++b) d.sample.alphabet.push_back(interval_name(d.edges, b));
    d.sample.attribute_arity = 0;

    const std::size_t w = spec.window;
    for (std::size_t i = 0; i + w < series.size(); ++i) {
        Trace t;
        t.label = TraceLabel::Unlabeled;
        for (std::size_t j = i; j < i + w; ++j) t.symbols.push_back(SymbolInstance{symbols[j], {}, std::nullopt});
        const double next = series[i + w];
        t.symbols.back().target = spec.target == TargetKind::NextDelta ? next - series[i + w - 1] : next;
        d.sample.traces.push_back(std::move(t));
    }
    return d;
}

} // namespace flexautomata
