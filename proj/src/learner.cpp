#include "flexautomata/learner.hpp"

#include <atomic>
#include <sstream>
#include <thread>

#include "flexautomata/apta.hpp"
#include "flexautomata/error.hpp"
#include "flexautomata/merge.hpp"
#include "flexautomata/sample_io.hpp"

namespace flexautomata {

namespace {

EvidenceScore score_pair(const Automaton& a, StateId r, StateId b, const HeuristicId& h) {
    if (std::holds_alternative<Edsm>(h)) return score_outcome(detail::trial_merge_counts_only(a, r, b), h);
    return score_outcome(trial_merge(a, r, b), h);
}

struct Scored {
    StateId red;
    StateId blue;
    EvidenceScore score;
};

bool acceptable(const EvidenceScore& s, double min_evidence) {
    return !s.failed() && s.value() >= min_evidence;
}

// Higher score wins; ties go to the smallest (red, blue).
bool better(const Scored& x, const Scored& y) {
    if (x.score.value() != y.score.value()) return x.score.value() > y.score.value();
    if (x.red != y.red) return x.red < y.red;
    return x.blue < y.blue;
}

struct Decision {
    std::optional<StateId> promote;
    std::optional<Scored> best;
};

Decision decide_sequential(const Automaton& a, const LearnerState& ls, const LearnerConfig& cfg) {
    Decision d;
    for (StateId b : ls.blue) {
        bool any = false;
        for (StateId r : ls.red) {
            Scored s{r, b, score_pair(a, r, b, cfg.heuristic)};
            if (!acceptable(s.score, cfg.min_evidence)) continue;
            any = true;
            if (!d.best || better(s, *d.best)) d.best = s;
        }
        if (!any) {
            d.promote = b;
            return d;
        }
    }
    return d;
}

Decision decide_parallel(const Automaton& a, const LearnerState& ls, const LearnerConfig& cfg) {
    std::vector<std::pair<StateId, StateId>> pairs;
    for (StateId b : ls.blue) {
        for (StateId r : ls.red) pairs.emplace_back(b, r);
    }
    std::vector<std::optional<EvidenceScore>> scores(pairs.size());
    std::atomic<std::size_t> next{0};
    {
        std::vector<std::jthread> workers;
        const unsigned n = std::min<unsigned>(cfg.threads, static_cast<unsigned>(pairs.size()));
        for (unsigned w = 0; w < n; ++w) {
            workers.emplace_back([&] {
                for (std::size_t i = next++; i < pairs.size(); i = next++) {
                    scores[i] = score_pair(a, pairs[i].second, pairs[i].first, cfg.heuristic);
                }
            });
        }
    }
    // Reduce in the same order as the sequential driver.
    Decision d;
    std::size_t i = 0;
    for (StateId b : ls.blue) {
        bool any = false;
        for (StateId r : ls.red) {
            Scored s{r, b, *scores[i++]};
            if (!acceptable(s.score, cfg.min_evidence)) continue;
            any = true;
            if (!d.best || better(s, *d.best)) d.best = s;
        }
        if (!any) {
            d.promote = b;
            d.best.reset();
            return d;
        }
    }
    return d;
}

std::size_t prune_unreachable(Automaton& a, LearnerState& ls) {
    const auto live = reachable_states(a);
    std::size_t removed = 0;
    for (StateId id : a.state_ids()) {
        if (live.count(id) != 0) continue;
        a.remove_state(id);
        ls.red.erase(id);
        ++removed;
    }
    return removed;
}

} // namespace

std::string LearnLog::to_text() const {
    std::ostringstream os;
    for (const auto& e : entries) {
        switch (e.kind) {
        case LogEntry::Kind::Promote: os << "PROMOTE " << e.red << '\n'; break;
        case LogEntry::Kind::Merge: os << "MERGE " << e.red << ' ' << e.blue << ' ' << format_real(e.score) << '\n'; break;
        case LogEntry::Kind::Prune: os << "PRUNE " << e.pruned << '\n'; break;
        }
    }
    return os.str();
}

std::set<StateId> blue_frontier(const Automaton& a, const std::set<StateId>& red) {
    std::set<StateId> blue;
    for (StateId r : red) {
        for (const auto& [sym, dst] : a.transitions(r)) {
            if (red.count(dst) == 0) blue.insert(dst);
        }
    }
    return blue;
}

LearnerState initial_state(const Automaton& a) {
    if (!a.has_start()) throw InputError("automaton has no start state");
    LearnerState ls;
    ls.red.insert(a.start());
    ls.blue = blue_frontier(a, ls.red);
    return ls;
}

LearnerState promote(const LearnerState& ls, StateId b, const Automaton& a) {
    if (ls.blue.count(b) == 0) throw InputError("state " + std::to_string(b) + " is not blue");
    LearnerState next = ls;
    next.blue.erase(b);
    next.red.insert(b);
    for (const auto& [sym, dst] : a.transitions(b)) {
        if (next.red.count(dst) == 0) next.blue.insert(dst);
    }
    return next;
}

LearnResult learn_from(Automaton a, const LearnerConfig& cfg) {
    validate(cfg.heuristic);
    if (cfg.max_iterations && *cfg.max_iterations == 0) throw InputError("max_iterations must be positive");

    LearnResult res;
    LearnerState ls = initial_state(a);
    while (!ls.blue.empty()) {
        if (cfg.max_iterations && res.iterations >= *cfg.max_iterations) {
            throw IterationLimitError("iteration cap of " + std::to_string(*cfg.max_iterations) + " exceeded");
        }
        ++res.iterations;

        const Decision d = cfg.threads > 1 ? decide_parallel(a, ls, cfg) : decide_sequential(a, ls, cfg);
        if (d.promote) {
            ls = promote(ls, *d.promote, a);
            res.log.entries.push_back({LogEntry::Kind::Promote, *d.promote, 0, 0, 0.0, 0});
            continue;
        }

        const Scored& best = *d.best;
        auto applied = merge_in_place(a, best.red, best.blue);
        if (!applied) throw IntegrityError("scored merge failed on execution");
        std::set<StateId> red;
        for (StateId r : ls.red) {
            auto it = applied->renamed.find(r);
            red.insert(it == applied->renamed.end() ? r : it->second);
        }
        ls.red = std::move(red);
        res.log.entries.push_back(
            {LogEntry::Kind::Merge, best.red, best.blue, applied->merged_state, best.score.value(), 0});
        if (std::size_t pruned = prune_unreachable(a, ls); pruned > 0) {
            res.log.entries.push_back({LogEntry::Kind::Prune, 0, 0, 0, 0.0, pruned});
        }
        ls.blue = blue_frontier(a, ls.red);

        if (cfg.debug_trace) {
            auto violations = check_integrity(a);
            if (!violations.empty()) throw IntegrityError("after merge: " + violations.front());
        }
    }
    res.model = std::move(a);
    return res;
}

LearnResult learn(const Sample& sample, const LearnerConfig& cfg) {
    validate(cfg.heuristic);
    return learn_from(build_apta(sample), cfg);
}

} // namespace flexautomata
