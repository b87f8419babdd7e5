#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "flexautomata/automaton.hpp"
#include "flexautomata/merge.hpp"

namespace flexautomata {

/// Counts label agreements (accepting-accepting plus rejecting-rejecting)
/// over all merged pairs, the top pair included.
struct Edsm {};

/// Hoeffding test on the outgoing-symbol and termination frequencies of every
/// merged pair.
struct Alergia {
    double alpha = 0.05;
};

/// Negated increase of the squared target error, plus penalty per merged pair.
struct Mse {
    double penalty = 0.0;
};

using HeuristicId = std::variant<Edsm, Alergia, Mse>;

/// Throws InputError when alpha is outside (0,1) or penalty is negative or not finite.
void validate(const HeuristicId& h);
std::string to_string(const HeuristicId& h);

enum class EvidenceFailure {
    Inconsistent, ///< the trial merge hit a label conflict
    Incompatible, ///< a heuristic-specific compatibility test rejected
    NoTargets,    ///< the target-based score is undefined for this pair
};

class EvidenceScore {
public:
    static EvidenceScore of(double value) { return EvidenceScore(value, EvidenceFailure::Inconsistent, false); }
    static EvidenceScore fail(EvidenceFailure why) { return EvidenceScore(0.0, why, true); }

    bool failed() const noexcept { return failed_; }
    /// Only meaningful when !failed().
    double value() const noexcept { return value_; }
    /// Only meaningful when failed().
    EvidenceFailure failure() const noexcept { return failure_; }

private:
    EvidenceScore(double v, EvidenceFailure f, bool failed) : value_(v), failure_(f), failed_(failed) {}

    double value_;
    EvidenceFailure failure_;
    bool failed_;
};

/// sqrt(ln(2/alpha)/2) * (1/sqrt(n1) + 1/sqrt(n2)).
double hoeffding_bound(std::uint64_t n1, std::uint64_t n2, double alpha);

/// |f1/n1 - f2/n2| <= hoeffding_bound; vacuously true when either n is 0.
bool hoeffding_compatible(std::uint64_t f1, std::uint64_t n1, std::uint64_t f2, std::uint64_t n2,
                          double alpha);

/// Scores an already computed trial merge.
EvidenceScore score_outcome(const MergeOutcome& outcome, const HeuristicId& h);

EvidenceScore evidence_edsm(const Automaton& a, StateId r, StateId b);
EvidenceScore evidence_alergia(const Automaton& a, StateId r, StateId b, double alpha);
EvidenceScore evidence_mse(const Automaton& a, StateId r, StateId b, double penalty);
EvidenceScore evidence(const Automaton& a, StateId r, StateId b, const HeuristicId& h);

} // namespace flexautomata
