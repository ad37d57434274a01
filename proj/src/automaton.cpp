#include "regba/automaton.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "regba/errors.hpp"

namespace regba {

Label make_label(std::initializer_list<unsigned> digits) {
    Label lab;
    std::size_t i = 0;
    for (unsigned d : digits) lab.d.at(i++) = static_cast<Digit>(d);
    return lab;
}

State Automaton::add_state(std::string name, bool init, bool acc) {
    state_names.push_back(std::move(name));
    initial.push_back(init);
    accepting.push_back(acc);
    return static_cast<State>(state_names.size() - 1);
}

void Automaton::add_transition(State src, const Label& label, State dst) {
    transitions.push_back({src, label, dst});
}

unsigned Automaton::uniform_radix() const {
    if (radix.empty()) throw MixedRadix();
    for (unsigned r : radix)
        if (r != radix[0]) throw MixedRadix();
    return radix[0];
}

Symbol Automaton::pack(const Label& label) const {
    Symbol s = 0;
    for (std::size_t i = 0; i < radix.size(); ++i) s = s * radix[i] + label[i];
    return s;
}

Label Automaton::unpack(Symbol s) const {
    Label lab;
    for (std::size_t i = radix.size(); i-- > 0;) {
        lab[i] = static_cast<Digit>(s % radix[i]);
        s /= radix[i];
    }
    return lab;
}

std::uint64_t Automaton::alphabet_size() const {
    std::uint64_t n = 1;
    for (unsigned r : radix) n *= r;
    return n;
}

bool Automaton::deterministic() const {
    std::size_t inits = 0;
    for (bool b : initial) inits += b;
    if (inits != 1) return false;
    std::set<std::pair<State, Label>> seen;
    for (const Transition& t : transitions)
        if (!seen.insert({t.src, t.label}).second) return false;
    return true;
}

bool Automaton::complete() const {
    std::vector<std::unordered_set<Symbol>> covered(num_states());
    for (const Transition& t : transitions) covered[t.src].insert(pack(t.label));
    std::uint64_t full = alphabet_size();
    for (State q = 0; q < num_states(); ++q)
        if (covered[q].size() < full) return false;
    return true;
}

std::vector<std::string> validate(const Automaton& a) {
    std::vector<std::string> out;
    if (a.radix.empty()) out.push_back("radix vector is empty");
    if (a.radix.size() > kMaxArity)
        out.push_back("arity " + std::to_string(a.radix.size()) + " exceeds " +
                      std::to_string(kMaxArity));
    for (std::size_t i = 0; i < a.radix.size(); ++i)
        if (a.radix[i] < 2 || a.radix[i] > kMaxRadix)
            out.push_back("radix " + std::to_string(a.radix[i]) + " at coordinate " +
                          std::to_string(i + 1) + " outside [2, " + std::to_string(kMaxRadix) +
                          "]");
    if (a.initial.size() != a.state_names.size() || a.accepting.size() != a.state_names.size())
        out.push_back("state flag vectors do not match the state count");
    std::unordered_set<std::string> names;
    for (const std::string& n : a.state_names)
        if (!names.insert(n).second) out.push_back("duplicate state name: " + n);
    bool any_initial = false;
    for (bool b : a.initial) any_initial |= b;
    if (!any_initial) out.push_back("no initial state");
    for (const Transition& t : a.transitions) {
        if (t.src >= a.num_states() || t.dst >= a.num_states()) {
            out.push_back("transition endpoint out of range");
            continue;
        }
        for (std::size_t i = 0; i < a.arity(); ++i)
            if (t.label[i] >= a.radix[i])
                out.push_back("digit " + std::to_string(t.label[i]) + " out of range at radix " +
                              std::to_string(a.radix[i]) + " (transition from " +
                              a.state_names[t.src] + ")");
        for (std::size_t i = a.arity(); i < kMaxArity; ++i)
            if (t.label[i] != 0) out.push_back("digit set beyond the declared arity");
    }
    return out;
}

void require_valid(const Automaton& a) {
    auto diags = validate(a);
    if (!diags.empty()) throw InvalidAutomaton("invalid automaton: " + diags.front());
}

std::vector<std::vector<std::uint32_t>> outgoing_index(const Automaton& a) {
    std::vector<std::vector<std::uint32_t>> out(a.num_states());
    for (std::uint32_t i = 0; i < a.transitions.size(); ++i)
        out[a.transitions[i].src].push_back(i);
    return out;
}

std::string fresh_name(const Automaton& a, const std::string& hint) {
    std::unordered_set<std::string> names(a.state_names.begin(), a.state_names.end());
    if (!names.count(hint)) return hint;
    for (unsigned n = 2;; ++n) {
        std::string candidate = hint + "_" + std::to_string(n);
        if (!names.count(candidate)) return candidate;
    }
}

}  // namespace regba
