#include "flexautomata/automaton.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "flexautomata/error.hpp"

namespace flexautomata {

Automaton::Automaton(std::vector<std::string> alphabet) : alphabet_(std::move(alphabet)) {}

StateId Automaton::add_state(StateLabel label) {
    const StateId id = next_id_++;
    Node n;
    n.data.set_label(label);
    nodes_.emplace(id, std::move(n));
    return id;
}

void Automaton::add_state(StateId id, State state) {
    if (nodes_.count(id) != 0) throw InputError("duplicate state id " + std::to_string(id));
    Node n;
    n.data = std::move(state);
    // A previously removed id may still be the target of dangling edges.
    if (id < next_id_) {
        for (const auto& [src, other] : nodes_) {
            for (const auto& [sym, dst] : other.out) {
                if (dst == id) n.in.emplace(src, sym);
            }
        }
    }
    nodes_.emplace(id, std::move(n));
    next_id_ = std::max(next_id_, id + 1);
}

void Automaton::remove_state(StateId id) {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw InputError("unknown state " + std::to_string(id));
    for (const auto& [sym, dst] : it->second.out) {
        if (dst == id) continue;
        auto t = nodes_.find(dst);
        if (t != nodes_.end()) t->second.in.erase({id, sym});
    }
    nodes_.erase(it);
    if (has_start_ && start_ == id) has_start_ = false;
}

void Automaton::set_transition(StateId src, Symbol sym, StateId dst) {
    if (sym >= alphabet_.size()) {
        throw InputError("symbol " + std::to_string(sym) + " outside alphabet of size " +
                         std::to_string(alphabet_.size()));
    }
    Node& s = node(src);
    Node& d = node(dst);
    auto [it, inserted] = s.out.try_emplace(sym, dst);
    if (!inserted) {
        if (it->second == dst) return;
        auto old = nodes_.find(it->second);
        if (old != nodes_.end()) old->second.in.erase({src, sym});
        it->second = dst;
    }
    d.in.emplace(src, sym);
}

void Automaton::erase_transition(StateId src, Symbol sym) {
    Node& s = node(src);
    auto it = s.out.find(sym);
    if (it == s.out.end()) return;
    auto t = nodes_.find(it->second);
    if (t != nodes_.end()) t->second.in.erase({src, sym});
    s.out.erase(it);
}

void Automaton::set_start(StateId id) {
    node(id);
    start_ = id;
    has_start_ = true;
}

const State& Automaton::state(StateId id) const { return node(id).data; }
State& Automaton::state(StateId id) { return node(id).data; }
const Automaton::Transitions& Automaton::transitions(StateId id) const { return node(id).out; }
const Automaton::Incoming& Automaton::incoming(StateId id) const { return node(id).in; }

std::optional<StateId> Automaton::next(StateId id, Symbol sym) const {
    const auto& out = node(id).out;
    auto it = out.find(sym);
    if (it == out.end()) return std::nullopt;
    return it->second;
}

std::vector<StateId> Automaton::state_ids() const {
    std::vector<StateId> ids;
    ids.reserve(nodes_.size());
    for (const auto& [id, n] : nodes_) ids.push_back(id);
    return ids;
}

Automaton::Node& Automaton::node(StateId id) {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw InputError("unknown state " + std::to_string(id));
    return it->second;
}

const Automaton::Node& Automaton::node(StateId id) const {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw InputError("unknown state " + std::to_string(id));
    return it->second;
}

std::vector<std::string> numeric_alphabet(std::size_t size) {
    std::vector<std::string> names(size);
    for (std::size_t i = 0; i < size; ++i) names[i] = std::to_string(i);
    return names;
}

ComputationResult compute(const Automaton& a, std::span<const Symbol> word) {
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (word[i] >= a.alphabet_size()) {
            throw InputError("symbol " + std::to_string(word[i]) + " at position " + std::to_string(i) +
                             " outside alphabet of size " + std::to_string(a.alphabet_size()));
        }
    }
    if (!a.has_start()) throw InputError("automaton has no start state");

    ComputationResult r;
    r.path.reserve(word.size() + 1);
    StateId cur = a.start();
    r.path.push_back(cur);
    for (std::size_t i = 0; i < word.size(); ++i) {
        auto nxt = a.next(cur, word[i]);
        if (!nxt) {
            r.outcome = Outcome::RejectNoTransition;
            r.failed_position = i;
            return r;
        }
        cur = *nxt;
        r.path.push_back(cur);
    }
    const State& end = a.state(cur);
    if (end.accepting) {
        r.outcome = Outcome::Accept;
    } else {
        r.outcome = Outcome::RejectByLabel;
        r.ended_unlabeled = !end.rejecting;
    }
    return r;
}

namespace {

void collect_words(const Automaton& a, StateId s, std::size_t budget, Word& prefix, std::vector<Word>& out) {
    if (a.state(s).accepting) out.push_back(prefix);
    if (budget == 0) return;
    for (const auto& [sym, dst] : a.transitions(s)) {
        prefix.push_back(sym);
        collect_words(a, dst, budget - 1, prefix, out);
        prefix.pop_back();
    }
}

} // namespace

std::vector<Word> language_upto(const Automaton& a, std::size_t max_len) {
    std::vector<Word> words;
    if (!a.has_start()) return words;
    Word prefix;
    collect_words(a, a.start(), max_len, prefix, words);
    std::sort(words.begin(), words.end(), [](const Word& x, const Word& y) {
        if (x.size() != y.size()) return x.size() < y.size();
        return x < y;
    });
    return words;
}

std::vector<std::string> check_integrity(const Automaton& a) {
    std::vector<std::string> v;
    if (!a.has_start()) {
        v.push_back("start state missing");
    }
    for (StateId id : a.state_ids()) {
        const State& s = a.state(id);
        const std::string tag = "state " + std::to_string(id) + ": ";
        if (s.accepting && s.rejecting) v.push_back(tag + "both accepting and rejecting");
        for (const auto& [sym, dst] : a.transitions(id)) {
            if (sym >= a.alphabet_size()) v.push_back(tag + "symbol " + std::to_string(sym) + " outside alphabet");
            if (!a.contains(dst)) {
                v.push_back(tag + "transition on " + std::to_string(sym) + " to missing state " + std::to_string(dst));
            } else if (a.incoming(dst).count({id, sym}) == 0) {
                v.push_back(tag + "reverse index lacks edge on " + std::to_string(sym));
            }
        }
        for (const auto& [src, sym] : a.incoming(id)) {
            auto back = a.contains(src) ? a.next(src, sym) : std::nullopt;
            if (!back || *back != id) v.push_back(tag + "stale reverse edge from " + std::to_string(src));
        }
        const StateAggregate& g = s.stats;
        if (g.target_count > g.total_count) v.push_back(tag + "target_count exceeds total_count");
        std::uint64_t out_sum = 0;
        for (const auto& [sym, c] : g.out_counts) out_sum += c;
        if (out_sum > g.total_count) v.push_back(tag + "outgoing counts exceed total_count");
        const bool finite = std::isfinite(g.target_sum) && std::isfinite(g.target_sumsq) &&
                            std::all_of(g.attribute_sums.begin(), g.attribute_sums.end(),
                                        [](double x) { return std::isfinite(x); });
        if (!finite) v.push_back(tag + "non-finite sums");
    }
    return v;
}

std::set<StateId> reachable_states(const Automaton& a) {
    std::set<StateId> seen;
    if (!a.has_start()) return seen;
    std::deque<StateId> todo{a.start()};
    seen.insert(a.start());
    while (!todo.empty()) {
        StateId s = todo.front();
        todo.pop_front();
        for (const auto& [sym, dst] : a.transitions(s)) {
            if (a.contains(dst) && seen.insert(dst).second) todo.push_back(dst);
        }
    }
    return seen;
}

} // namespace flexautomata
