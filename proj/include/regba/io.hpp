#pragma once

#include <iosfwd>
#include <string>

#include "regba/automaton.hpp"

namespace regba {

// Line-oriented text format:
//   radix r1 r2 ...
//   states s ...
//   initial s ...
//   accepting s ...
//   trans src (d1,...,dn) dst
// '#' starts a comment; blank lines are ignored; states must be declared
// before they are referenced. Throws ParseError with the offending line.
Automaton parse_automaton(std::istream& in);
Automaton parse_automaton_string(const std::string& text);
Automaton load_automaton(const std::string& path);

// Deterministic output: states sorted by name, transitions by (src, digits, dst).
std::string serialize_automaton(const Automaton& a);
void save_automaton(const Automaton& a, const std::string& path);

}  // namespace regba
