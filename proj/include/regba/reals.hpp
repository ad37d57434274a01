#pragma once

#include <optional>
#include <vector>

#include "regba/automaton.hpp"
#include "regba/lasso.hpp"
#include "regba/rational.hpp"

namespace regba {

// Exact value of the word: digit i carries weight radix^-(i+1), most
// significant digit first, one component per coordinate.
std::vector<Rational> valuation(const Lasso& w, const std::vector<unsigned>& radix);
Rational valuation1(const Lasso& w, unsigned radix);

// Every ultimately periodic encoding of the point, canonical (non-(r-1)-tail)
// combination first. A coordinate that is r-adic in (0,1) contributes two
// expansions, so up to 2^arity lassos.
struct EncodingSet {
    std::vector<Lasso> lassos;
};
EncodingSet encode_rational(const std::vector<Rational>& q, const std::vector<unsigned>& radix);

// Deterministic all-accepting carry automaton for the integer relation
//   offset + sum_i coef[i] * z_i = 0,   z in [0,1]^n,
// over uniform radix r. Carries D evolve as D' = r*D + sum_i coef[i]*d_i and
// stay in [-sum max(coef,0), sum max(-coef,0)]; the result accepts every
// encoding of every solution (it recognizes the relation) and is trim.
Automaton linear_relation_automaton(const std::vector<Int>& coef, const Int& offset, unsigned r);

// Pairs of words with equal value: the relation x - y = 0 (three carries).
Automaton equal_value_automaton(unsigned r);

// Triples (x, y, m) with m = (x+y)/2: the relation x + y - 2m = 0.
Automaton midpoint_relation_automaton(unsigned r);

// Graph of x -> alpha*x + beta on [0,1]; RangeViolation when the image
// leaves [0,1].
Automaton affine_graph_automaton(const Rational& alpha, const Rational& beta, unsigned r);

// Points with the fixed coordinates pinned to the given values and the rest
// free; per-coordinate carry tuples, deterministic, all-accepting.
Automaton fiber_automaton(const std::vector<std::optional<Rational>>& fixed,
                          const std::vector<unsigned>& radix);

// All encodings of exactly one point.
Automaton singleton_automaton(const std::vector<Rational>& q,
                              const std::vector<unsigned>& radix);

// Closes the language under value equality, one coordinate at a time: fused
// product with the equal-value relation writing a fresh digit in place of the
// old one, then trim, closure and subset determinization. Input must be trim
// and closed with uniform radix; output is deterministic and complete with
// the same value set, and accepts every encoding of every value.
Automaton saturate(const Automaton& a);

// f(x) for a function-graph automaton: intersect with the fiber at x, take
// an accepted lasso, read off the output coordinate. Exact.
Rational eval_function(const Automaton& graph, const Rational& x);

}  // namespace regba
