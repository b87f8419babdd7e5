#pragma once

#include <string>
#include <string_view>

#include "flexautomata/automaton.hpp"
#include "flexautomata/sample.hpp"

namespace flexautomata {

/// Parses the classic "label length sym1 ... symN" format.
///
/// Labels are 1 (positive) and 0 (negative). An optional first line
/// "num_traces alphabet_size" is recognised when it has exactly two integer
/// tokens and cannot itself be a data line (a data line with two tokens must
/// have length 0). When present, both numbers are validated. Without a
/// header the alphabet is 0..max symbol seen. Blank lines are skipped; LF and
/// CRLF line ends are accepted. Errors are ParseError with a line number.
Sample parse_abbadingo(std::string_view text);

/// Superset of parse_abbadingo: labels may be "?" (unlabeled) and each symbol
/// token may be written "sym", "sym:a1,a2,...", "sym/t" or "sym:a1,.../t".
/// The attribute arity must be the same for every symbol in the sample.
Sample parse_augmented(std::string_view text);

/// Writes the classic format with a header line. Attributes and targets are dropped.
std::string write_abbadingo(const Sample& s);
/// Writes the augmented format with a header line; reals use the shortest round-trip form.
std::string write_augmented(const Sample& s);

struct DotOptions {
    std::string graph_name = "automaton";
    bool show_counts = true;
    bool show_targets = true;
};

/// Graphviz rendering. Accepting states are double circles, rejecting states
/// are filled boxes, occurrence counts appear in square brackets and the
/// mean target (when any target was credited) is shown inside the node.
std::string write_dot(const Automaton& a, const DotOptions& options = {});

/// Line-oriented model text, header "flexautomata-model 1". Deterministic:
/// states and transitions are written in ascending id/symbol order.
std::string save_model(const Automaton& a);

/// Inverse of save_model. Throws ParseError on malformed text or version
/// mismatch, IntegrityError when the loaded automaton violates an invariant.
Automaton load_model(std::string_view text);

/// Shortest decimal form that parses back to the identical double.
std::string format_real(double value);

} // namespace flexautomata
