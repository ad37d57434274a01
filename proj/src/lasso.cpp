#include "regba/lasso.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>

#include "regba/errors.hpp"

namespace regba {

bool accepts_lasso(const Automaton& a, const Lasso& w) {
    if (w.cycle.empty()) throw Error("lasso cycle is empty");
    const std::size_t plen = w.prefix.size(), clen = w.cycle.size(), total = plen + clen;
    auto out = outgoing_index(a);
    auto node = [&](State q, std::size_t pos) { return q * total + pos; };
    auto advance = [&](std::size_t pos) { return pos + 1 == total ? plen : pos + 1; };
    auto letter = [&](std::size_t pos) {
        return pos < plen ? w.prefix[pos] : w.cycle[pos - plen];
    };

    std::vector<bool> reachable(a.num_states() * total, false);
    std::queue<std::pair<State, std::size_t>> bfs;
    for (State q = 0; q < a.num_states(); ++q)
        if (a.initial[q]) {
            reachable[node(q, 0)] = true;
            bfs.push({q, 0});
        }
    while (!bfs.empty()) {
        auto [q, pos] = bfs.front();
        bfs.pop();
        for (std::uint32_t i : out[q]) {
            const Transition& t = a.transitions[i];
            if (t.label != letter(pos)) continue;
            std::size_t npos = advance(pos);
            if (!reachable[node(t.dst, npos)]) {
                reachable[node(t.dst, npos)] = true;
                bfs.push({t.dst, npos});
            }
        }
    }

    // An accepting product node on a cycle must sit in the cycle region.
    for (State q = 0; q < a.num_states(); ++q) {
        if (!a.accepting[q]) continue;
        for (std::size_t pos = plen; pos < total; ++pos) {
            if (!reachable[node(q, pos)]) continue;
            // can (q, pos) come back to itself in >= 1 steps?
            std::vector<bool> seen(a.num_states() * total, false);
            std::queue<std::pair<State, std::size_t>> walk;
            walk.push({q, pos});
            bool closes = false;
            while (!walk.empty() && !closes) {
                auto [p, at] = walk.front();
                walk.pop();
                for (std::uint32_t i : out[p]) {
                    const Transition& t = a.transitions[i];
                    if (t.label != letter(at)) continue;
                    std::size_t nat = advance(at);
                    if (t.dst == q && nat == pos) {
                        closes = true;
                        break;
                    }
                    if (!seen[node(t.dst, nat)]) {
                        seen[node(t.dst, nat)] = true;
                        walk.push({t.dst, nat});
                    }
                }
            }
            if (closes) return true;
        }
    }
    return false;
}

Lasso normalize_lasso(const Lasso& w) {
    if (w.cycle.empty()) throw Error("lasso cycle is empty");
    Lasso r = w;
    for (std::size_t d = 1; d <= r.cycle.size() / 2; ++d) {
        if (r.cycle.size() % d != 0) continue;
        bool periodic = true;
        for (std::size_t i = d; i < r.cycle.size() && periodic; ++i)
            periodic = r.cycle[i] == r.cycle[i % d];
        if (periodic) {
            r.cycle.resize(d);
            break;
        }
    }
    while (!r.prefix.empty() && r.prefix.back() == r.cycle.back()) {
        r.prefix.pop_back();
        std::rotate(r.cycle.begin(), r.cycle.end() - 1, r.cycle.end());
    }
    return r;
}

std::vector<Label> expand_lasso(const Lasso& w, std::size_t k) {
    std::vector<Label> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) out.push_back(w.at(i));
    return out;
}

std::string format_lasso(const Lasso& w, std::size_t arity) {
    std::ostringstream out;
    for (std::size_t c = 0; c < arity; ++c) {
        if (c) out << ',';
        auto digits = [&](const std::vector<Label>& part) {
            for (std::size_t i = 0; i < part.size(); ++i) {
                unsigned d = part[i][c];
                if (d > 9) out << (i ? "." : "") << d;
                else out << char('0' + d);
            }
        };
        digits(w.prefix);
        out << '(';
        digits(w.cycle);
        out << ')';
    }
    return out.str();
}

}  // namespace regba
