#pragma once

#include <optional>
#include <vector>

#include "regba/automaton.hpp"
#include "regba/lasso.hpp"

namespace regba {

// L(a) intersect L(b) via the synchronized pair product; conjunctive
// acceptance is language-correct for weak inputs only, so both are checked.
Automaton product_intersect(const Automaton& a, const Automaton& b);

// L(a) union L(b); both inputs must be deterministic, complete and weak.
Automaton product_union(const Automaton& a, const Automaton& b);

// Drops all coordinates not in keep (0-based, strictly increasing).
Automaton project(const Automaton& a, const std::vector<std::size_t>& keep);

// Inverse of project: coordinate i of a becomes coordinate embed[i] of the
// result; the remaining coordinates read arbitrary digits.
Automaton cylindrify(const Automaton& a, const std::vector<unsigned>& new_radix,
                     const std::vector<std::size_t>& embed);

// Subset construction. Exact for closed inputs: their language is a safety
// language, so a word is accepted iff its subset trace never dies. Output is
// deterministic, complete and weak; accepting = every nonempty subset state;
// the empty subset is a non-accepting absorbing sink (trim removes it,
// yielding a closed automaton again).
Automaton determinize_closed(const Automaton& a);

// Flips acceptance; exact for deterministic complete weak automata.
Automaton complement_det(const Automaton& a);

struct EmptinessResult {
    bool empty;
    std::optional<Lasso> witness;  // accepted lasso when nonempty
};

// Witness is the minimal-length, then lexicographically least, lasso through
// an accepting state on a reachable cycle.
EmptinessResult is_empty(const Automaton& a);

struct UniversalityResult {
    bool universal;
    std::optional<Lasso> counterexample;  // rejected lasso when not universal
};

// For deterministic complete weak automata: emptiness of the complement.
UniversalityResult is_universal_closed(const Automaton& a);

// Language equality of two deterministic complete weak automata.
bool language_equal(const Automaton& a, const Automaton& b);

// Copy of a with the initial set replaced by {q}.
Automaton with_initial(const Automaton& a, State q);

}  // namespace regba
