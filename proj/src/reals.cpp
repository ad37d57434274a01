#include "regba/reals.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>

#include "regba/errors.hpp"
#include "regba/ops.hpp"
#include "regba/structure.hpp"

namespace regba {

std::vector<Rational> valuation(const Lasso& w, const std::vector<unsigned>& radix) {
    if (w.cycle.empty()) throw Error("lasso cycle is empty");
    std::vector<Rational> out;
    for (std::size_t c = 0; c < radix.size(); ++c) {
        Int r = radix[c], pref = 0, cyc = 0;
        for (const Label& l : w.prefix) pref = pref * r + l[c];
        for (const Label& l : w.cycle) cyc = cyc * r + l[c];
        Int rp = pow_int(r, static_cast<unsigned>(w.prefix.size()));
        Int rc = pow_int(r, static_cast<unsigned>(w.cycle.size()));
        out.emplace_back(pref * (rc - 1) + cyc, rp * (rc - 1));
    }
    return out;
}

Rational valuation1(const Lasso& w, unsigned radix) { return valuation(w, {radix})[0]; }

namespace {

struct DigitStream {
    std::vector<Digit> prefix;
    std::vector<Digit> cycle;
};

// Most-significant-first long division; the remainder sequence is eventually
// periodic, so the digit stream is a lasso. Never produces an (r-1)^omega
// tail except for the value 1 itself.
DigitStream canonical_digits(const Rational& x, unsigned r) {
    if (x < 0 || x > 1) throw OutOfRange("value " + to_string(x) + " outside [0,1]");
    if (x == 1) return {{}, {static_cast<Digit>(r - 1)}};
    DigitStream out;
    std::vector<Digit> digits;
    std::map<Rational, std::size_t> seen;
    Rational rem = x;
    for (;;) {
        auto [it, fresh] = seen.emplace(rem, digits.size());
        if (!fresh) {
            out.prefix.assign(digits.begin(), digits.begin() + it->second);
            out.cycle.assign(digits.begin() + it->second, digits.end());
            return out;
        }
        Rational scaled = rem * r;
        Int d = rat_num(scaled) / rat_den(scaled);
        digits.push_back(static_cast<Digit>(d.convert_to<unsigned>()));
        rem = scaled - Rational(d);
    }
}

// The alternative expansion of an r-adic value in (0,1): decrement the last
// nonzero digit, then repeat r-1 forever.
std::optional<DigitStream> dual_digits(const DigitStream& canon, unsigned r) {
    if (canon.cycle != std::vector<Digit>{0}) return std::nullopt;
    if (canon.prefix.empty()) return std::nullopt;  // the value 0
    DigitStream dual;
    dual.prefix = canon.prefix;
    while (!dual.prefix.empty() && dual.prefix.back() == 0) dual.prefix.pop_back();
    dual.prefix.back() = static_cast<Digit>(dual.prefix.back() - 1);
    dual.cycle = {static_cast<Digit>(r - 1)};
    return dual;
}

Lasso combine_streams(const std::vector<DigitStream>& per_coord) {
    std::size_t plen = 0, clen = 1;
    for (const DigitStream& s : per_coord) {
        plen = std::max(plen, s.prefix.size());
        clen = std::lcm(clen, s.cycle.size());
    }
    auto digit_at = [](const DigitStream& s, std::size_t i) {
        return i < s.prefix.size() ? s.prefix[i]
                                   : s.cycle[(i - s.prefix.size()) % s.cycle.size()];
    };
    Lasso w;
    for (std::size_t i = 0; i < plen; ++i) {
        Label lab;
        for (std::size_t c = 0; c < per_coord.size(); ++c) lab[c] = digit_at(per_coord[c], i);
        w.prefix.push_back(lab);
    }
    for (std::size_t i = plen; i < plen + clen; ++i) {
        Label lab;
        for (std::size_t c = 0; c < per_coord.size(); ++c) lab[c] = digit_at(per_coord[c], i);
        w.cycle.push_back(lab);
    }
    return w;
}

}  // namespace

EncodingSet encode_rational(const std::vector<Rational>& q, const std::vector<unsigned>& radix) {
    if (q.size() != radix.size()) throw OutOfRange("point arity does not match radix vector");
    std::vector<std::vector<DigitStream>> options(q.size());
    for (std::size_t c = 0; c < q.size(); ++c) {
        DigitStream canon = canonical_digits(q[c], radix[c]);
        if (auto dual = dual_digits(canon, radix[c])) options[c] = {canon, *dual};
        else options[c] = {canon};
    }
    EncodingSet out;
    std::uint64_t combos = 1;
    for (const auto& opt : options) combos *= opt.size();
    for (std::uint64_t combo = 0; combo < combos; ++combo) {
        std::vector<DigitStream> pick;
        std::uint64_t rest = combo;
        for (const auto& opt : options) {
            pick.push_back(opt[rest % opt.size()]);
            rest /= opt.size();
        }
        out.lassos.push_back(combine_streams(pick));
    }
    return out;
}

Automaton linear_relation_automaton(const std::vector<Int>& coef, const Int& offset,
                                    unsigned r) {
    if (coef.empty() || coef.size() > kMaxArity)
        throw BadCoordinates("coefficient count out of range");
    if (r < 2 || r > kMaxRadix) throw OutOfRange("radix out of range");
    Int lo = 0, hi = 0;
    for (const Int& c : coef) {
        if (c > 0) lo -= c;
        else hi -= c;
    }

    Automaton a;
    a.radix.assign(coef.size(), r);
    std::map<Int, State> carries;
    std::queue<Int> work;
    auto intern = [&](const Int& d, bool init) {
        auto it = carries.find(d);
        if (it != carries.end()) return it->second;
        State q = a.add_state("D" + d.str(), init, true);
        carries[d] = q;
        work.push(d);
        return q;
    };
    intern(offset, true);
    if (offset < lo || offset > hi) return a;  // no solutions: no transitions

    std::uint64_t sigma = 1;
    for (std::size_t i = 0; i < coef.size(); ++i) sigma *= r;
    while (!work.empty()) {
        Int d = work.front();
        work.pop();
        State src = carries[d];
        for (Symbol s = 0; s < sigma; ++s) {
            Label lab = a.unpack(s);
            Int next = d * r;
            for (std::size_t i = 0; i < coef.size(); ++i) next += coef[i] * lab[i];
            if (next < lo || next > hi) continue;
            a.add_transition(src, lab, intern(next, false));
        }
    }
    return a;
}

Automaton equal_value_automaton(unsigned r) {
    return linear_relation_automaton({Int(1), Int(-1)}, Int(0), r);
}

Automaton midpoint_relation_automaton(unsigned r) {
    return linear_relation_automaton({Int(1), Int(1), Int(-2)}, Int(0), r);
}

Automaton affine_graph_automaton(const Rational& alpha, const Rational& beta, unsigned r) {
    if (beta < 0 || beta > 1 || alpha + beta < 0 || alpha + beta > 1)
        throw RangeViolation("affine image of [0,1] leaves [0,1]: alpha=" + to_string(alpha) +
                             " beta=" + to_string(beta));
    Int scale = boost::multiprecision::lcm(rat_den(alpha), rat_den(beta));
    Int p = rat_num(alpha) * (scale / rat_den(alpha));
    Int s = rat_num(beta) * (scale / rat_den(beta));
    // alpha*x - y + beta = 0, scaled to integers
    return linear_relation_automaton({p, -scale}, s, r);
}

Automaton fiber_automaton(const std::vector<std::optional<Rational>>& fixed,
                          const std::vector<unsigned>& radix) {
    if (fixed.size() != radix.size() || radix.empty() || radix.size() > kMaxArity)
        throw BadCoordinates("fiber arity does not match radix vector");
    for (const auto& q : fixed)
        if (q && (*q < 0 || *q > 1))
            throw OutOfRange("fiber value " + to_string(*q) + " outside [0,1]");

    // per fixed coordinate c the relation den*z - num = 0, carries in [-den, 0]
    std::vector<Int> den(fixed.size(), 0), num(fixed.size(), 0);
    for (std::size_t c = 0; c < fixed.size(); ++c)
        if (fixed[c]) {
            den[c] = rat_den(*fixed[c]);
            num[c] = rat_num(*fixed[c]);
        }

    Automaton a;
    a.radix = radix;
    std::map<std::vector<Int>, State> carries;
    std::queue<std::vector<Int>> work;
    auto name_of = [&](const std::vector<Int>& d) {
        std::string n = "D";
        for (std::size_t c = 0; c < d.size(); ++c) n += (c ? "_" : "") + d[c].str();
        return n;
    };
    auto intern = [&](std::vector<Int> d, bool init) {
        auto it = carries.find(d);
        if (it != carries.end()) return it->second;
        State q = a.add_state(name_of(d), init, true);
        carries[d] = q;
        work.push(std::move(d));
        return q;
    };

    std::vector<Int> start(fixed.size(), 0);
    for (std::size_t c = 0; c < fixed.size(); ++c)
        if (fixed[c]) start[c] = -num[c];
    intern(start, true);

    std::uint64_t sigma = a.alphabet_size();
    while (!work.empty()) {
        std::vector<Int> d = work.front();
        work.pop();
        State src = carries[d];
        for (Symbol s = 0; s < sigma; ++s) {
            Label lab = a.unpack(s);
            std::vector<Int> next = d;
            bool ok = true;
            for (std::size_t c = 0; c < fixed.size() && ok; ++c) {
                if (!fixed[c]) continue;
                next[c] = next[c] * radix[c] + den[c] * lab[c];
                ok = next[c] >= -den[c] && next[c] <= 0;
            }
            if (ok) a.add_transition(src, lab, intern(std::move(next), false));
        }
    }
    return a;
}

Automaton singleton_automaton(const std::vector<Rational>& q,
                              const std::vector<unsigned>& radix) {
    std::vector<std::optional<Rational>> fixed(q.begin(), q.end());
    return fiber_automaton(fixed, radix);
}

Automaton saturate(const Automaton& a) {
    require_valid(a);
    if (!is_closed(a)) throw NotClosed();
    unsigned r = a.uniform_radix();
    Automaton cur = trim(a);

    for (std::size_t coord = 0; coord < a.arity(); ++coord) {
        // product with the equal-value relation on (old, fresh), the fresh
        // digit replacing the old one in place
        Automaton fused;
        fused.radix = cur.radix;
        std::map<std::pair<State, int>, State> seen;
        std::queue<std::pair<State, int>> work;
        auto intern = [&](State s, int e, bool init) {
            auto it = seen.find({s, e});
            if (it != seen.end()) return it->second;
            State q = fused.add_state(cur.state_names[s] + "~" + std::to_string(e), init,
                                      cur.accepting[s]);
            seen[{s, e}] = q;
            work.push({s, e});
            return q;
        };
        for (State s = 0; s < cur.num_states(); ++s)
            if (cur.initial[s]) intern(s, 0, true);
        auto out = outgoing_index(cur);
        while (!work.empty()) {
            auto [s, e] = work.front();
            work.pop();
            State src = seen[{s, e}];
            for (std::uint32_t i : out[s]) {
                const Transition& t = cur.transitions[i];
                for (unsigned fresh = 0; fresh < r; ++fresh) {
                    int e2 = static_cast<int>(r) * e + t.label[coord] - static_cast<int>(fresh);
                    if (e2 < -1 || e2 > 1) continue;
                    Label lab = t.label;
                    lab[coord] = static_cast<Digit>(fresh);
                    fused.add_transition(src, lab, intern(t.dst, e2, false));
                }
            }
        }
        cur = trim(closure(fused));
        cur = trim(determinize_closed(cur));
    }
    return determinize_closed(cur);
}

Rational eval_function(const Automaton& graph, const Rational& x) {
    require_valid(graph);
    if (graph.arity() != 2) throw BadCoordinates("function graph must have arity 2");
    if (x < 0 || x > 1) throw OutOfRange("argument " + to_string(x) + " outside [0,1]");
    Automaton fiber = fiber_automaton({x, std::nullopt}, graph.radix);
    EmptinessResult e = is_empty(product_intersect(graph, fiber));
    if (e.empty) throw EmptyFiber("no value above " + to_string(x));
    return valuation(*e.witness, graph.radix)[1];
}

}  // namespace regba
