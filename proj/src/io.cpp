#include "regba/io.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "regba/errors.hpp"

namespace regba {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream in(line);
    std::string t;
    while (in >> t) toks.push_back(t);
    return toks;
}

Label parse_label(const std::string& tok, const Automaton& a, std::size_t lineno) {
    if (tok.size() < 3 || tok.front() != '(' || tok.back() != ')')
        throw ParseError(lineno, "expected digit tuple '(d1,...,dn)', got '" + tok + "'");
    Label lab;
    std::size_t coord = 0, pos = 1;
    while (pos < tok.size()) {
        std::size_t end = tok.find_first_of(",)", pos);
        if (end == std::string::npos || end == pos)
            throw ParseError(lineno, "malformed digit tuple '" + tok + "'");
        if (coord >= a.arity())
            throw ParseError(lineno, "digit tuple has more than " + std::to_string(a.arity()) +
                                         " coordinates");
        unsigned d = 0;
        for (std::size_t i = pos; i < end; ++i) {
            if (tok[i] < '0' || tok[i] > '9')
                throw ParseError(lineno, "digit is not a number in '" + tok + "'");
            d = d * 10 + static_cast<unsigned>(tok[i] - '0');
        }
        if (d >= a.radix[coord])
            throw ParseError(lineno, "digit " + std::to_string(d) + " out of range for radix " +
                                         std::to_string(a.radix[coord]));
        lab[coord++] = static_cast<Digit>(d);
        if (tok[end] == ')') {
            if (end + 1 != tok.size())
                throw ParseError(lineno, "trailing characters after tuple in '" + tok + "'");
            if (coord != a.arity())
                throw ParseError(lineno, "digit tuple has " + std::to_string(coord) +
                                             " coordinates, expected " +
                                             std::to_string(a.arity()));
            return lab;
        }
        pos = end + 1;
    }
    throw ParseError(lineno, "unterminated digit tuple '" + tok + "'");
}

}  // namespace

Automaton parse_automaton(std::istream& in) {
    Automaton a;
    std::unordered_map<std::string, State> by_name;
    bool have_radix = false;
    std::string line;
    std::size_t lineno = 0;

    auto lookup = [&](const std::string& name, std::size_t ln) -> State {
        auto it = by_name.find(name);
        if (it == by_name.end()) throw ParseError(ln, "undeclared state '" + name + "'");
        return it->second;
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        const std::string& kw = toks[0];
        if (kw == "radix") {
            if (have_radix) throw ParseError(lineno, "duplicate radix line");
            if (toks.size() < 2) throw ParseError(lineno, "radix line needs at least one entry");
            for (std::size_t i = 1; i < toks.size(); ++i) {
                unsigned r = 0;
                try {
                    r = static_cast<unsigned>(std::stoul(toks[i]));
                } catch (const std::exception&) {
                    throw ParseError(lineno, "radix entry '" + toks[i] + "' is not a number");
                }
                if (r < 2 || r > kMaxRadix)
                    throw ParseError(lineno, "radix " + toks[i] + " outside [2, " +
                                                 std::to_string(kMaxRadix) + "]");
                a.radix.push_back(r);
            }
            if (a.radix.size() > kMaxArity)
                throw ParseError(lineno, "arity exceeds " + std::to_string(kMaxArity));
            have_radix = true;
        } else if (kw == "states") {
            for (std::size_t i = 1; i < toks.size(); ++i) {
                if (by_name.count(toks[i]))
                    throw ParseError(lineno, "duplicate state '" + toks[i] + "'");
                by_name[toks[i]] = a.add_state(toks[i]);
            }
        } else if (kw == "initial") {
            for (std::size_t i = 1; i < toks.size(); ++i) a.initial[lookup(toks[i], lineno)] = true;
        } else if (kw == "accepting") {
            for (std::size_t i = 1; i < toks.size(); ++i)
                a.accepting[lookup(toks[i], lineno)] = true;
        } else if (kw == "trans") {
            if (!have_radix) throw ParseError(lineno, "trans before radix line");
            if (toks.size() != 4) throw ParseError(lineno, "expected 'trans src (digits) dst'");
            State src = lookup(toks[1], lineno);
            Label lab = parse_label(toks[2], a, lineno);
            State dst = lookup(toks[3], lineno);
            a.add_transition(src, lab, dst);
        } else {
            throw ParseError(lineno, "unknown keyword '" + kw + "'");
        }
    }
    if (!have_radix) throw ParseError(lineno, "missing radix line");
    if (a.state_names.empty()) throw ParseError(lineno, "no states declared");
    return a;
}

Automaton parse_automaton_string(const std::string& text) {
    std::istringstream in(text);
    return parse_automaton(in);
}

Automaton load_automaton(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path);
    return parse_automaton(in);
}

std::string serialize_automaton(const Automaton& a) {
    std::vector<State> order(a.num_states());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](State x, State y) { return a.state_names[x] < a.state_names[y]; });
    std::vector<State> rank(a.num_states());
    for (State i = 0; i < a.num_states(); ++i) rank[order[i]] = i;

    std::ostringstream out;
    out << "radix";
    for (unsigned r : a.radix) out << ' ' << r;
    out << '\n' << "states";
    for (State q : order) out << ' ' << a.state_names[q];
    out << '\n' << "initial";
    for (State q : order)
        if (a.initial[q]) out << ' ' << a.state_names[q];
    out << '\n' << "accepting";
    for (State q : order)
        if (a.accepting[q]) out << ' ' << a.state_names[q];
    out << '\n';

    std::vector<Transition> trans = a.transitions;
    for (Transition& t : trans) {
        t.src = rank[t.src];
        t.dst = rank[t.dst];
    }
    std::sort(trans.begin(), trans.end());
    for (const Transition& t : trans) {
        out << "trans " << a.state_names[order[t.src]] << " (";
        for (std::size_t i = 0; i < a.arity(); ++i)
            out << (i ? "," : "") << static_cast<unsigned>(t.label[i]);
        out << ") " << a.state_names[order[t.dst]] << '\n';
    }
    return out.str();
}

void save_automaton(const Automaton& a, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write file: " + path);
    out << serialize_automaton(a);
}

}  // namespace regba
