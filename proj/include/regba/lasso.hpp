#pragma once

#include <string>
#include <vector>

#include "regba/automaton.hpp"

namespace regba {

// Ultimately periodic word prefix . cycle^omega; the cycle is nonempty.
struct Lasso {
    std::vector<Label> prefix;
    std::vector<Label> cycle;

    bool operator==(const Lasso&) const = default;
    Label at(std::size_t i) const {
        return i < prefix.size() ? prefix[i] : cycle[(i - prefix.size()) % cycle.size()];
    }
};

// Exact membership: the product of the word structure with the automaton has
// a reachable cycle through an accepting state.
bool accepts_lasso(const Automaton& a, const Lasso& w);

// Canonical form: primitive cycle, shortest prefix (trailing prefix letters
// equal to the cycle's last letter are folded into a rotation). Two lassos
// denote the same word iff their normal forms are equal.
Lasso normalize_lasso(const Lasso& w);

// First k letters of the word.
std::vector<Label> expand_lasso(const Lasso& w, std::size_t k);

// Per-coordinate digit strings "prefix(cycle)", coordinates joined by ','.
std::string format_lasso(const Lasso& w, std::size_t arity);

}  // namespace regba
