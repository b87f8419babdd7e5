#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "flexautomata/aggregate.hpp"

namespace flexautomata {

/// Stable creation index of a state. Never reused inside one automaton's history.
using StateId = std::uint32_t;
using Word = std::vector<Symbol>;

enum class StateLabel { Unlabeled, Accepting, Rejecting };

/// Per-state payload. Membership in the accepting and rejecting sets is kept
/// as two flags so that a corrupted model (both set) is representable and can
/// be reported by check_integrity instead of being silently normalised.
struct State {
    bool accepting = false;
    bool rejecting = false;
    StateAggregate stats;

    StateLabel label() const noexcept {
        if (accepting) return StateLabel::Accepting;
        if (rejecting) return StateLabel::Rejecting;
        return StateLabel::Unlabeled;
    }

    void set_label(StateLabel l) noexcept {
        accepting = l == StateLabel::Accepting;
        rejecting = l == StateLabel::Rejecting;
    }
};

/// Deterministic automaton with per-state aggregates.
///
/// Transitions live in a per-state map keyed by symbol, so two targets for
/// one (state, symbol) key cannot be represented. A reverse index of incoming
/// edges is maintained for merging; it is not part of the observable value.
class Automaton {
public:
    using Transitions = std::map<Symbol, StateId>;
    using Incoming = std::set<std::pair<StateId, Symbol>>;

    Automaton() = default;
    explicit Automaton(std::vector<std::string> alphabet);

    const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
    std::size_t alphabet_size() const noexcept { return alphabet_.size(); }

    /// Adds a state with the next fresh id.
    StateId add_state(StateLabel label = StateLabel::Unlabeled);
    /// Adds a state with an explicit id (used by model loading). Throws if the id exists.
    void add_state(StateId id, State state);
    /// Removes the state and its outgoing edges. Edges into it are left dangling.
    void remove_state(StateId id);

    /// Sets or replaces the transition on (src, sym). Both endpoints must exist.
    void set_transition(StateId src, Symbol sym, StateId dst);
    void erase_transition(StateId src, Symbol sym);

    void set_start(StateId id);
    StateId start() const noexcept { return start_; }
    bool has_start() const noexcept { return has_start_; }

    bool contains(StateId id) const { return nodes_.count(id) != 0; }
    std::size_t size() const noexcept { return nodes_.size(); }
    StateId next_fresh_id() const noexcept { return next_id_; }

    const State& state(StateId id) const;
    State& state(StateId id);
    const Transitions& transitions(StateId id) const;
    const Incoming& incoming(StateId id) const;
    std::optional<StateId> next(StateId id, Symbol sym) const;

    /// Ids of all states in ascending order.
    std::vector<StateId> state_ids() const;

private:
    struct Node {
        State data;
        Transitions out;
        Incoming in;
    };

    Node& node(StateId id);
    const Node& node(StateId id) const;

    std::vector<std::string> alphabet_;
    std::map<StateId, Node> nodes_;
    StateId start_ = 0;
    bool has_start_ = false;
    StateId next_id_ = 0;
};

/// Alphabet table with names "0", "1", ... for the given size.
std::vector<std::string> numeric_alphabet(std::size_t size);

enum class Outcome { Accept, RejectByLabel, RejectNoTransition };

struct ComputationResult {
    std::vector<StateId> path;
    Outcome outcome = Outcome::RejectByLabel;
    /// Index of the symbol that had no transition; only meaningful for RejectNoTransition.
    std::size_t failed_position = 0;
    /// Set when the computation completed in a state that is neither accepting nor rejecting.
    bool ended_unlabeled = false;

    bool accepted() const noexcept { return outcome == Outcome::Accept; }
};

/// Runs the word through the automaton. Throws InputError for out-of-range symbols.
ComputationResult compute(const Automaton& a, std::span<const Symbol> word);

/// Accepted words of length at most max_len, in length-then-lexicographic order.
std::vector<Word> language_upto(const Automaton& a, std::size_t max_len);

/// Human-readable descriptions of every invariant violation; empty when the automaton is sound.
std::vector<std::string> check_integrity(const Automaton& a);

/// Ids of states reachable from the start state, ascending.
std::set<StateId> reachable_states(const Automaton& a);

} // namespace flexautomata
