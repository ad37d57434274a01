#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace regba {

using State = std::uint32_t;
using Digit = std::uint8_t;
using Symbol = std::uint64_t;

inline constexpr std::size_t kMaxArity = 8;
inline constexpr unsigned kMaxRadix = 64;

// Digit tuple. Coordinates beyond the automaton's arity stay zero so the
// default ordering doubles as the (src, digits, dst) serialization order.
struct Label {
    std::array<Digit, kMaxArity> d{};

    auto operator<=>(const Label&) const = default;
    Digit& operator[](std::size_t i) { return d[i]; }
    Digit operator[](std::size_t i) const { return d[i]; }
};

Label make_label(std::initializer_list<unsigned> digits);

struct Transition {
    State src;
    Label label;
    State dst;

    auto operator<=>(const Transition&) const = default;
};

struct Automaton {
    std::vector<unsigned> radix;           // one entry per coordinate, each in [2, kMaxRadix]
    std::vector<std::string> state_names;  // index doubles as the State id
    std::vector<bool> initial;
    std::vector<bool> accepting;
    std::vector<Transition> transitions;

    std::size_t arity() const { return radix.size(); }
    State num_states() const { return static_cast<State>(state_names.size()); }

    State add_state(std::string name, bool init = false, bool acc = false);
    void add_transition(State src, const Label& label, State dst);

    // Uniform radix across all coordinates; throws MixedRadix otherwise.
    unsigned uniform_radix() const;

    // Mixed-radix index of a label, coordinate 0 most significant.
    Symbol pack(const Label& label) const;
    Label unpack(Symbol s) const;
    std::uint64_t alphabet_size() const;

    bool deterministic() const;
    bool complete() const;
};

// One diagnostic string per invariant violation; empty means valid.
std::vector<std::string> validate(const Automaton& a);
void require_valid(const Automaton& a);

// Outgoing transition indices grouped per source state.
std::vector<std::vector<std::uint32_t>> outgoing_index(const Automaton& a);

// A state name not yet present in the automaton, derived from the hint.
std::string fresh_name(const Automaton& a, const std::string& hint);

}  // namespace regba
