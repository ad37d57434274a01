#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "regba/automaton.hpp"
#include "regba/rational.hpp"

namespace regba {

// Graph-directed iterated function system read off an automaton: one vertex
// per state and, per transition, the contraction applying x -> (x + d_i) / r_i
// on coordinate i. The accepted value set is the attractor piece union over
// the initial vertices.
struct GdifsEdge {
    State src = 0;
    State dst = 0;
    Label shift;
};

struct Gdifs {
    std::vector<unsigned> ratios;
    std::vector<std::string> vertices;
    std::vector<State> initial;
    std::vector<GdifsEdge> edges;
};

Gdifs gdifs_of(const Automaton& a);

// Depth-k cover of the accepted value set by the boxes
// prod_i [m_i / r_i^k, (m_i + 1) / r_i^k], one multi-index per box, sorted.
struct BoxCover {
    unsigned depth = 0;
    std::vector<std::array<std::uint64_t, kMaxArity>> boxes;
};

BoxCover attractor_boxes(const Automaton& a, unsigned depth);

// Reachable states of a deterministic weak automaton grouped by language
// equality. Each group carries the automaton re-rooted at its representative;
// groups whose language is empty are flagged.
struct KernelResidual {
    State representative = 0;
    std::vector<State> members;
    bool empty_language = false;
    Automaton residual;
};

std::vector<KernelResidual> kernel_residuals(const Automaton& a);

// An open interval (index/r^depth, (index+1)/r^depth) disjoint from every
// residual value set, found at the smallest such depth, with the porosity
// constant 2 r^-(depth+1) it certifies. Meaningful for saturated input, where
// residual membership captures every encoding of a value.
struct PorosityWitness {
    unsigned depth = 0;
    Int index;
    Rational left;
    Rational right;
    Rational constant;
};

PorosityWitness porosity_witness(const Automaton& a);

// (number of depth-k boxes) * r^-k, an upper bound on the Lebesgue measure of
// an arity-1 value set, non-increasing in k.
Rational box_measure_estimate(const Automaton& a, unsigned depth);

}  // namespace regba
