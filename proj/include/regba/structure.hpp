#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "regba/automaton.hpp"

namespace regba {

struct SccDecomposition {
    std::vector<std::uint32_t> component;       // component id per state
    std::uint32_t component_count = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // condensation, deduplicated
    std::vector<std::uint32_t> topo_order;      // component ids, sources first
    std::vector<bool> nontrivial;               // component lies on a nonempty cycle
};

SccDecomposition scc(const Automaton& a);

// Sinks of the condensation, each as the sorted list of member states.
std::vector<std::vector<State>> sinks(const Automaton& a);

bool is_weak(const Automaton& a);
bool is_closed(const Automaton& a);

// Keeps exactly the states that are accessible and co-accessible (a length-0
// path to an accepting state counts). Throws EmptyLanguage when none survive.
Automaton trim(const Automaton& a);
std::optional<Automaton> try_trim(const Automaton& a);

// Same transitions, every state accepting.
Automaton closure(const Automaton& a);

// Adds a non-accepting absorbing sink for every missing (state, label) pair.
Automaton complete(const Automaton& a);

// Restriction to the given states (sorted, deduplicated), with the given
// initial states; flags preserved. States outside the set are dropped along
// with their transitions.
Automaton restrict_states(const Automaton& a, const std::vector<State>& keep,
                          const std::vector<State>& new_initial);

// States from which some infinite path exists (a cycle is reachable).
std::vector<bool> productive_states(const Automaton& a);

// Number of distinct labels of length-n paths from p to q. n = 0 yields
// 1 exactly when p = q. Refuses alphabets with alphabet_size^n > 10^7.
std::uint64_t path_label_count(const Automaton& a, State p, State q, unsigned n);

// Distinct labels of length-n paths from p to any state, per target state.
std::vector<std::uint64_t> path_label_counts_from(const Automaton& a, State p, unsigned n);

}  // namespace regba
