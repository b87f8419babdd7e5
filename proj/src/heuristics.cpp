#include "flexautomata/heuristics.hpp"

#include <cmath>
#include <set>

#include "flexautomata/error.hpp"
#include "flexautomata/sample_io.hpp"

namespace flexautomata {

namespace {

template <class... Fs>
struct overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

EvidenceScore score_edsm(const MergeOutcome& o) {
    return EvidenceScore::of(static_cast<double>(o.label_matches));
}

bool pair_compatible(const PairStatistics& p, double alpha) {
    const std::uint64_t n1 = p.left.total_count;
    const std::uint64_t n2 = p.right.total_count;
    if (n1 == 0 || n2 == 0) return true;
    if (!hoeffding_compatible(p.left.end_count(), n1, p.right.end_count(), n2, alpha)) return false;
    std::set<Symbol> symbols;
    for (const auto& [s, c] : p.left.out_counts) symbols.insert(s);
    for (const auto& [s, c] : p.right.out_counts) symbols.insert(s);
    for (Symbol s : symbols) {
        if (!hoeffding_compatible(p.left.out_count(s), n1, p.right.out_count(s), n2, alpha)) return false;
    }
    return true;
}

EvidenceScore score_alergia(const MergeOutcome& o, double alpha) {
    for (const auto& p : o.distribution_stats) {
        if (!pair_compatible(p, alpha)) return EvidenceScore::fail(EvidenceFailure::Incompatible);
    }
    return EvidenceScore::of(static_cast<double>(o.distribution_stats.size()));
}

EvidenceScore score_mse(const MergeOutcome& o, double penalty) {
    bool any_target = false;
    for (const auto& p : o.distribution_stats) {
        if (p.left.target_count > 0 || p.right.target_count > 0) {
            any_target = true;
            break;
        }
    }
    if (!any_target) return EvidenceScore::fail(EvidenceFailure::NoTargets);
    return EvidenceScore::of(-o.sse_delta + penalty * static_cast<double>(o.merged_pairs.size()));
}

} // namespace

void validate(const HeuristicId& h) {
    std::visit(overloaded{
                   [](const Edsm&) {},
                   [](const Alergia& x) {
                       if (!(x.alpha > 0.0 && x.alpha < 1.0)) {
                           throw InputError("alergia alpha must lie in (0,1), got " + format_real(x.alpha));
                       }
                   },
                   [](const Mse& x) {
                       if (!(x.penalty >= 0.0) || !std::isfinite(x.penalty)) {
                           throw InputError("mse penalty must be finite and >= 0, got " + format_real(x.penalty));
                       }
                   },
               },
               h);
}

std::string to_string(const HeuristicId& h) {
    return std::visit(overloaded{
                          [](const Edsm&) { return std::string("edsm"); },
                          [](const Alergia& x) { return "alergia(alpha=" + format_real(x.alpha) + ")"; },
                          [](const Mse& x) { return "mse(penalty=" + format_real(x.penalty) + ")"; },
                      },
                      h);
}

double hoeffding_bound(std::uint64_t n1, std::uint64_t n2, double alpha) {
    return std::sqrt(0.5 * std::log(2.0 / alpha)) *
           (1.0 / std::sqrt(static_cast<double>(n1)) + 1.0 / std::sqrt(static_cast<double>(n2)));
}

bool hoeffding_compatible(std::uint64_t f1, std::uint64_t n1, std::uint64_t f2, std::uint64_t n2, double alpha) {
    if (n1 == 0 || n2 == 0) return true;
    const double diff = std::fabs(static_cast<double>(f1) / static_cast<double>(n1) -
                                  static_cast<double>(f2) / static_cast<double>(n2));
    return diff <= hoeffding_bound(n1, n2, alpha);
}

EvidenceScore score_outcome(const MergeOutcome& outcome, const HeuristicId& h) {
    if (!outcome.succeeded()) return EvidenceScore::fail(EvidenceFailure::Inconsistent);
    return std::visit(overloaded{
                          [&](const Edsm&) { return score_edsm(outcome); },
                          [&](const Alergia& x) { return score_alergia(outcome, x.alpha); },
                          [&](const Mse& x) { return score_mse(outcome, x.penalty); },
                      },
                      h);
}

EvidenceScore evidence_edsm(const Automaton& a, StateId r, StateId b) {
    return score_outcome(detail::trial_merge_counts_only(a, r, b), Edsm{});
}

EvidenceScore evidence_alergia(const Automaton& a, StateId r, StateId b, double alpha) {
    Alergia h{alpha};
    validate(h);
    return score_outcome(trial_merge(a, r, b), h);
}

EvidenceScore evidence_mse(const Automaton& a, StateId r, StateId b, double penalty) {
    Mse h{penalty};
    validate(h);
    return score_outcome(trial_merge(a, r, b), h);
}

EvidenceScore evidence(const Automaton& a, StateId r, StateId b, const HeuristicId& h) {
    validate(h);
    if (std::holds_alternative<Edsm>(h)) return evidence_edsm(a, r, b);
    return score_outcome(trial_merge(a, r, b), h);
}

} // namespace flexautomata
