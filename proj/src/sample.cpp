#include "flexautomata/sample.hpp"

#include <algorithm>

#include "flexautomata/error.hpp"

namespace flexautomata {

Word Trace::word() const {
    Word w;
    w.reserve(symbols.size());
    for (const auto& s : symbols) w.push_back(s.symbol);
    return w;
}

std::size_t Sample::count(TraceLabel label) const {
    return static_cast<std::size_t>(
        std::count_if(traces.begin(), traces.end(), [label](const Trace& t) { return t.label == label; }));
}

std::size_t Sample::max_length() const {
    std::size_t m = 0;
    for (const auto& t : traces) m = std::max(m, t.size());
    return m;
}

bool Sample::has_targets() const {
    for (const auto& t : traces) {
        for (const auto& s : t.symbols) {
            if (s.target) return true;
        }
    }
    return false;
}

Sample make_sample(const std::vector<std::pair<TraceLabel, Word>>& words, std::size_t alphabet_size) {
    Sample s;
    s.alphabet = numeric_alphabet(alphabet_size);
    s.traces.reserve(words.size());
    for (const auto& [label, w] : words) {
        Trace t;
        t.label = label;
        for (Symbol sym : w) {
            if (sym >= alphabet_size) throw InputError("symbol " + std::to_string(sym) + " outside alphabet");
            t.symbols.push_back(SymbolInstance{sym, {}, std::nullopt});
        }
        s.traces.push_back(std::move(t));
    }
    return s;
}

} // namespace flexautomata
