#pragma once

#include "flexautomata/automaton.hpp"
#include "flexautomata/sample.hpp"

namespace flexautomata {

/// Builds the augmented prefix tree acceptor for a sample.
///
/// State ids are assigned breadth-first with children in ascending symbol
/// order, the root being 0. Ends of Positive traces mark accepting states,
/// ends of Negative traces mark rejecting states. Throws
/// InconsistentSampleError if the same word occurs with both labels.
Automaton build_apta(const Sample& sample);

/// True iff the start state has no incoming edge and every other state has exactly one.
bool structural_tree_check(const Automaton& a);

} // namespace flexautomata
