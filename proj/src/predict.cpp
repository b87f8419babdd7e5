#include "flexautomata/predict.hpp"

#include <deque>
#include <limits>
#include <map>
#include <random>

#include "flexautomata/error.hpp"

namespace flexautomata {

double global_target_mean(const Automaton& a) {
    double sum = 0.0;
    std::uint64_t count = 0;
    for (StateId id : a.state_ids()) {
        const StateAggregate& g = a.state(id).stats;
        sum += g.target_sum;
        count += g.target_count;
    }
    if (count == 0) throw DomainError("model carries no target statistics");
    return sum / static_cast<double>(count);
}

double predict_value(const Automaton& a, std::span<const Symbol> word, const PredictionConfig& cfg) {
    const double global = global_target_mean(a);
    if (!a.has_start()) throw InputError("automaton has no start state");

    std::vector<StateId> path{a.start()};
    bool complete = true;
    for (Symbol s : word) {
        auto nxt = s < a.alphabet_size() ? a.next(path.back(), s) : std::nullopt;
        if (!nxt) {
            complete = false;
            break;
        }
        path.push_back(*nxt);
    }
    if (complete) {
        if (auto m = a.state(path.back()).stats.target_mean()) return *m;
    }
    switch (cfg.fallback) {
    case Fallback::GlobalMean:
        return global;
    case Fallback::LastState:
        for (auto it = path.rbegin(); it != path.rend(); ++it) {
            if (auto m = a.state(*it).stats.target_mean()) return *m;
        }
        return global;
    case Fallback::Error:
        break;
    }
    throw DomainError(complete ? "word ends in a state without target statistics"
                               : "word leaves the model after " + std::to_string(path.size() - 1) + " symbols");
}

namespace {

constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

// Length of the shortest accepted continuation from every state.
std::map<StateId, std::size_t> distance_to_accept(const Automaton& a) {
    std::map<StateId, std::size_t> dist;
    std::deque<StateId> todo;
    for (StateId id : a.state_ids()) {
        if (a.state(id).accepting) {
            dist[id] = 0;
            todo.push_back(id);
        } else {
            dist[id] = kUnreachable;
        }
    }
    while (!todo.empty()) {
        StateId s = todo.front();
        todo.pop_front();
        for (const auto& [src, sym] : a.incoming(s)) {
            if (dist[src] == kUnreachable) {
                dist[src] = dist[s] + 1;
                todo.push_back(src);
            }
        }
    }
    return dist;
}

} // namespace

std::vector<Word> sample_words(const Automaton& a, std::size_t n, std::uint64_t seed, std::size_t max_len) {
    if (!a.has_start()) throw InputError("automaton has no start state");
    const auto dist = distance_to_accept(a);
    const std::size_t d0 = dist.at(a.start());
    if (d0 == kUnreachable || d0 > max_len) {
        throw DomainError("model accepts no word of length <= " + std::to_string(max_len));
    }

    std::mt19937_64 rng(seed);
    std::vector<Word> words;
    words.reserve(n);
    std::vector<std::pair<std::uint64_t, std::optional<std::pair<Symbol, StateId>>>> options;
    for (std::size_t i = 0; i < n; ++i) {
        Word w;
        StateId cur = a.start();
        while (true) {
            options.clear();
            const State& st = a.state(cur);
            if (st.accepting) options.emplace_back(st.stats.end_pos_count + 1, std::nullopt);
            for (const auto& [sym, dst] : a.transitions(cur)) {
                const std::size_t d = dist.at(dst);
                if (d != kUnreachable && w.size() + 1 + d <= max_len) {
                    options.emplace_back(st.stats.out_count(sym) + 1, std::make_pair(sym, dst));
                }
            }
            std::uint64_t total = 0;
            for (const auto& o : options) total += o.first;
            std::uint64_t pick = rng() % total;
            std::size_t k = 0;
            while (pick >= options[k].first) pick -= options[k++].first;
            if (!options[k].second) break;
            w.push_back(options[k].second->first);
            cur = options[k].second->second;
        }
        words.push_back(std::move(w));
    }
    return words;
}

} // namespace flexautomata
