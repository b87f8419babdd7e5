#include "flexautomata/merge.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "flexautomata/error.hpp"

namespace flexautomata {

namespace {

struct Block {
    bool accepting = false;
    bool rejecting = false;
    StateAggregate stats;
    std::map<Symbol, StateId> out;
    std::vector<StateId> members;
    std::size_t formed = 0;

    StateLabel label() const noexcept {
        if (accepting) return StateLabel::Accepting;
        if (rejecting) return StateLabel::Rejecting;
        return StateLabel::Unlabeled;
    }
};

// Union-find overlay over an untouched automaton. Only states that take part
// in the cascade are materialised as blocks, so a trial merge costs time
// proportional to the cascade rather than to the automaton.
class MergePlan {
public:
    explicit MergePlan(const Automaton& a) : a_(a) {}

    // Returns false on label conflict. Statistics go to out.
    bool run(StateId q, StateId q2, MergeOutcome& out, bool with_distribution) {
        std::deque<std::pair<StateId, StateId>> queue{{q, q2}};
        while (!queue.empty()) {
            auto [x, y] = queue.front();
            queue.pop_front();
            const StateId rx = find(x);
            const StateId ry = find(y);
            if (rx == ry) continue;
            Block& bx = block(rx);
            Block& by = block(ry);
            if ((bx.accepting && by.rejecting) || (bx.rejecting && by.accepting)) {
                out.label_conflict = true;
                return false;
            }
            const std::size_t index = out.merged_pairs.size();
            if (bx.members.size() == 1) bx.formed = index;
            if (by.members.size() == 1) by.formed = index;
            out.merged_pairs.emplace_back(rx, ry);
            if ((bx.accepting && by.accepting) || (bx.rejecting && by.rejecting)) out.label_matches += 1;
            out.sse_delta += pooled_sse_increase(bx.stats, by.stats);
            if (with_distribution) out.distribution_stats.push_back({bx.stats, by.stats, bx.label(), by.label()});

            parent_[ry] = rx;
            bx.accepting = bx.accepting || by.accepting;
            bx.rejecting = bx.rejecting || by.rejecting;
            bx.stats = merge_aggregates(bx.stats, by.stats);
            bx.formed = std::min(bx.formed, by.formed);
            bx.members.insert(bx.members.end(), by.members.begin(), by.members.end());
            for (const auto& [sym, t] : by.out) {
                auto [it, inserted] = bx.out.try_emplace(sym, t);
                if (!inserted && find(it->second) != find(t)) queue.emplace_back(it->second, t);
            }
            blocks_.erase(ry);
        }
        return true;
    }

    StateId find(StateId x) {
        StateId root = x;
        for (auto it = parent_.find(root); it != parent_.end(); it = parent_.find(root)) root = it->second;
        while (x != root) {
            auto it = parent_.find(x);
            StateId nxt = it->second;
            it->second = root;
            x = nxt;
        }
        return root;
    }

    // Rewrites a in place. The plan must have been computed on an automaton
    // with identical states and transitions.
    AppliedMerge apply(Automaton& a, StateId q) {
        std::vector<std::pair<std::size_t, StateId>> order;
        order.reserve(blocks_.size());
        for (const auto& [rep, b] : blocks_) order.emplace_back(b.formed, rep);
        std::sort(order.begin(), order.end());

        AppliedMerge applied;
        const StateId base = a.next_fresh_id();
        std::unordered_map<StateId, StateId> new_id;
        for (std::size_t i = 0; i < order.size(); ++i) {
            const StateId nid = base + static_cast<StateId>(i);
            new_id[order[i].second] = nid;
            for (StateId m : blocks_.at(order[i].second).members) applied.renamed[m] = nid;
        }
        auto map_id = [&](StateId x) {
            auto it = applied.renamed.find(x);
            return it == applied.renamed.end() ? x : it->second;
        };

        struct Redirect {
            StateId src;
            Symbol sym;
            StateId dst;
        };
        std::vector<Redirect> redirects;
        for (const auto& [member, nid] : applied.renamed) {
            for (const auto& [src, sym] : a.incoming(member)) {
                if (applied.renamed.count(src) == 0) redirects.push_back({src, sym, nid});
            }
        }
        const bool start_moved = a.has_start() && applied.renamed.count(a.start()) != 0;
        const StateId new_start = start_moved ? applied.renamed.at(a.start()) : 0;

        for (const auto& [member, nid] : applied.renamed) a.remove_state(member);
        for (const auto& [formed, rep] : order) {
            Block& b = blocks_.at(rep);
            State st;
            st.accepting = b.accepting;
            st.rejecting = b.rejecting;
            st.stats = std::move(b.stats);
            a.add_state(new_id.at(rep), std::move(st));
        }
        for (const auto& [formed, rep] : order) {
            const StateId nid = new_id.at(rep);
            for (const auto& [sym, t] : blocks_.at(rep).out) a.set_transition(nid, sym, map_id(t));
        }
        for (const auto& r : redirects) a.set_transition(r.src, r.sym, r.dst);
        if (start_moved) a.set_start(new_start);
        applied.merged_state = map_id(q);
        return applied;
    }

private:
    Block& block(StateId rep) {
        auto it = blocks_.find(rep);
        if (it != blocks_.end()) return it->second;
        const State& st = a_.state(rep);
        Block b;
        b.accepting = st.accepting;
        b.rejecting = st.rejecting;
        b.stats = st.stats;
        b.out = a_.transitions(rep);
        b.members.push_back(rep);
        return blocks_.emplace(rep, std::move(b)).first->second;
    }

    const Automaton& a_;
    std::unordered_map<StateId, StateId> parent_;
    std::unordered_map<StateId, Block> blocks_;
};

void check_pair(const Automaton& a, StateId q, StateId q2) {
    if (!a.contains(q)) throw InputError("unknown state " + std::to_string(q));
    if (!a.contains(q2)) throw InputError("unknown state " + std::to_string(q2));
    if (q == q2) throw InputError("cannot merge state " + std::to_string(q) + " with itself");
}

} // namespace

double pooled_sse_increase(const StateAggregate& x, const StateAggregate& y) {
    if (x.target_count == 0 || y.target_count == 0) return 0.0;
    const double nx = static_cast<double>(x.target_count);
    const double ny = static_cast<double>(y.target_count);
    const double d = x.target_sum / nx - y.target_sum / ny;
    return nx * ny / (nx + ny) * d * d;
}

MergeOutcome trial_merge(const Automaton& a, StateId q, StateId q2) {
    check_pair(a, q, q2);
    MergeOutcome out;
    MergePlan plan(a);
    plan.run(q, q2, out, true);
    return out;
}

MergeOutcome merge(const Automaton& a, StateId q, StateId q2) {
    check_pair(a, q, q2);
    MergeOutcome out;
    MergePlan plan(a);
    if (!plan.run(q, q2, out, true)) return out;
    Automaton result = a;
    out.merged_state = plan.apply(result, q).merged_state;
    out.result = std::move(result);
    return out;
}

std::optional<AppliedMerge> merge_in_place(Automaton& a, StateId q, StateId q2, MergeOutcome* stats) {
    check_pair(a, q, q2);
    MergeOutcome local;
    MergeOutcome& out = stats ? *stats : local;
    out = MergeOutcome{};
    MergePlan plan(a);
    if (!plan.run(q, q2, out, stats != nullptr)) return std::nullopt;
    return plan.apply(a, q);
}

namespace detail {

MergeOutcome trial_merge_counts_only(const Automaton& a, StateId q, StateId q2) {
    check_pair(a, q, q2);
    MergeOutcome out;
    MergePlan plan(a);
    plan.run(q, q2, out, false);
    return out;
}

} // namespace detail

} // namespace flexautomata
