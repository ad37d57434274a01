#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "regba/automaton.hpp"
#include "regba/rational.hpp"

namespace regba {

// trim -> closure -> saturate -> trim: the canonical input form for the
// decision procedures below (trim, closed, deterministic, accepts every
// encoding of every value).
Automaton saturated_presentation(const Automaton& a);

struct FunctionCheck {
    enum class Failure { None, NotTotal, MultiValued };
    bool ok = false;
    Failure failure = Failure::None;
    // NotTotal: {x} with no value above x; MultiValued: {x, y1, y2}
    std::vector<Rational> counterexample;
};

// Is the value set the graph of a total function [0,1] -> [0,1]?
// Totality: the saturated projection to the input coordinate is universal.
// Single-valuedness: no (x, y1, y2) with both pairs in the value set and
// y1 != y2, decided by product emptiness against the complemented
// equal-value relation. Input must be trim, closed, saturated, arity 2.
FunctionCheck is_function(const Automaton& a);

// A total function with closed graph on [0,1] is continuous, so on the
// closed presentation this coincides with is_function. A presentation whose
// closure breaks single-valuedness (a jump) fails at the function stage.
bool is_continuous(const Automaton& a);

// Deletes sink components whose every state projects to a proper subset of
// [0,1], re-trims, and repeats. Value set preserved when it is the graph of
// a continuous function. Input must be trim, closed, deterministic, arity 2.
Automaton make_full(const Automaton& a);

// Does the sub-automaton rooted at q inside the given sink component have a
// value set projecting onto all of [0,1]?
bool sink_projection_full(const Automaton& a, const std::vector<State>& sink, State q);

struct AffinePiece {
    Rational alpha;              // slope
    Rational beta;               // value at 0 of the entry's piece
    std::vector<State> sink;
    State entry;
};

// The affine map whose graph is the value set of the sink sub-automaton at
// q: beta from eval at 0, alpha from eval at 1, then an exact value-set
// equality check against the affine graph builder (NotAffineSink on failure).
AffinePiece sink_affine(const Automaton& a, const std::vector<State>& sink, State q);

struct WitnessInterval {
    Rational left;
    unsigned depth = 0;          // interval [left, left + r^-depth]
    Rational slope;
};

struct PiecewiseReport {
    unsigned depth = 0;
    std::vector<Rational> slopes;
    std::vector<AffinePiece> pieces;
    std::vector<WitnessInterval> witnesses;
    Rational covered_measure;    // exact length of the merged witness union
};

// All slopes of full sinks plus every depth <= n witness interval: a path
// label from an initial state landing at a full sink state certifies that
// the function is affine with the sink's slope on the corresponding
// x-interval. Input must be a make_full result.
PiecewiseReport slope_set(const Automaton& a, unsigned depth);

struct DifferentiabilityResult {
    bool differentiable = false;
    std::optional<std::pair<Rational, Rational>> counterexample;  // (x, y)
};

// A regular function is differentiable iff it is affine, decided through the
// midpoint identity f((x+y)/2) = (f(x)+f(y))/2: one automaton for each side
// composed through the midpoint relation, intersected, projected to (x, y)
// and tested for value-universality. Input as for is_function.
DifferentiabilityResult is_differentiable(const Automaton& a);

// |f(t) - (f(0) + sum_s s * |union of slope-s witness intervals within
// [0,t]|)| at the given witness depth; shrinks with depth for continuous
// regular f. Input must be a make_full result.
Rational sum_form_check(const Automaton& a, const Rational& t, unsigned depth);

}  // namespace regba
