#include "flexautomata/apta.hpp"

#include <deque>
#include <map>

#include "flexautomata/error.hpp"

namespace flexautomata {

namespace {

// Temporary trie; converted to breadth-first ids once complete.
struct TrieNode {
    std::map<Symbol, std::size_t> children;
    StateAggregate stats;
    std::size_t first_positive = 0; // 1-based trace index, 0 = none
    std::size_t first_negative = 0;
};

} // namespace

Automaton build_apta(const Sample& sample) {
    const std::size_t arity = sample.attribute_arity;
    std::vector<TrieNode> trie(1);
    trie[0].stats.attribute_sums.assign(arity, 0.0);

    for (std::size_t ti = 0; ti < sample.traces.size(); ++ti) {
        const Trace& t = sample.traces[ti];
        std::size_t cur = 0;
        trie[cur].stats.total_count += 1;
        for (const SymbolInstance& inst : t.symbols) {
            if (inst.symbol >= sample.alphabet.size()) {
                throw InputError("trace " + std::to_string(ti + 1) + ": symbol " + std::to_string(inst.symbol) +
                                 " outside alphabet");
            }
            if (inst.attributes.size() != arity) {
                throw InputError("trace " + std::to_string(ti + 1) + ": attribute arity mismatch");
            }
            trie[cur].stats.out_counts[inst.symbol] += 1;
            auto it = trie[cur].children.find(inst.symbol);
            std::size_t nxt;
            if (it == trie[cur].children.end()) {
                nxt = trie.size();
                trie[cur].children.emplace(inst.symbol, nxt);
                trie.emplace_back();
                trie.back().stats.attribute_sums.assign(arity, 0.0);
            } else {
                nxt = it->second;
            }
            cur = nxt;
            StateAggregate& g = trie[cur].stats;
            g.total_count += 1;
            if (inst.target) {
                g.target_count += 1;
                g.target_sum += *inst.target;
                g.target_sumsq += *inst.target * *inst.target;
            }
            for (std::size_t k = 0; k < arity; ++k) g.attribute_sums[k] += inst.attributes[k];
        }
        TrieNode& end = trie[cur];
        switch (t.label) {
        case TraceLabel::Positive:
            end.stats.end_pos_count += 1;
            if (end.first_positive == 0) end.first_positive = ti + 1;
            break;
        case TraceLabel::Negative:
            end.stats.end_neg_count += 1;
            if (end.first_negative == 0) end.first_negative = ti + 1;
            break;
        case TraceLabel::Unlabeled:
            end.stats.end_unlabeled_count += 1;
            break;
        }
        if (end.first_positive != 0 && end.first_negative != 0) {
            throw InconsistentSampleError("traces " + std::to_string(end.first_positive) + " and " +
                                          std::to_string(end.first_negative) +
                                          " are the same word with opposite labels");
        }
    }

    Automaton a(sample.alphabet);
    std::vector<StateId> id_of(trie.size());
    std::deque<std::size_t> order{0};
    while (!order.empty()) {
        std::size_t n = order.front();
        order.pop_front();
        TrieNode& node = trie[n];
        State st;
        st.accepting = node.first_positive != 0;
        st.rejecting = node.first_negative != 0;
        st.stats = std::move(node.stats);
        id_of[n] = a.next_fresh_id();
        a.add_state(id_of[n], std::move(st));
        for (const auto& [sym, child] : node.children) order.push_back(child);
    }
    a.set_start(id_of[0]);
    for (std::size_t n = 0; n < trie.size(); ++n) {
        for (const auto& [sym, child] : trie[n].children) a.set_transition(id_of[n], sym, id_of[child]);
    }
    return a;
}

bool structural_tree_check(const Automaton& a) {
    if (!a.has_start()) return false;
    std::map<StateId, std::size_t> indegree;
    for (StateId id : a.state_ids()) {
        for (const auto& [sym, dst] : a.transitions(id)) indegree[dst] += 1;
    }
    for (StateId id : a.state_ids()) {
        const std::size_t in = indegree[id];
        if (id == a.start() ? in != 0 : in != 1) return false;
    }
    return true;
}

} // namespace flexautomata
