#include "regba/ops.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <unordered_set>

#include "regba/errors.hpp"
#include "regba/structure.hpp"

namespace regba {

namespace {

constexpr std::uint64_t kAlphabetCap = 1000000;
constexpr std::uint64_t kSubsetCap = 1 << 20;
constexpr std::uint64_t kTransitionCap = 10000000;

struct NameDedup {
    std::unordered_set<std::string> used;
    std::string operator()(std::string name) {
        while (!used.insert(name).second) name += "'";
        return name;
    }
};

// dst states per source and packed symbol, sorted and deduplicated
std::vector<std::map<Symbol, std::vector<State>>> successor_index(const Automaton& a) {
    std::vector<std::map<Symbol, std::vector<State>>> idx(a.num_states());
    for (const Transition& t : a.transitions) idx[t.src][a.pack(t.label)].push_back(t.dst);
    for (auto& per_state : idx)
        for (auto& [sym, dsts] : per_state) {
            std::sort(dsts.begin(), dsts.end());
            dsts.erase(std::unique(dsts.begin(), dsts.end()), dsts.end());
        }
    return idx;
}

void require_same_radix(const Automaton& a, const Automaton& b) {
    if (a.radix != b.radix) throw RadixMismatch();
}

Automaton pair_product(const Automaton& a, const Automaton& b, bool conjunctive) {
    require_same_radix(a, b);
    require_valid(a);
    require_valid(b);

    Automaton r;
    r.radix = a.radix;
    NameDedup unique;
    std::map<std::pair<State, State>, State> seen;
    std::queue<std::pair<State, State>> work;
    auto out_a = outgoing_index(a);

    auto intern = [&](State qa, State qb, bool init) {
        auto it = seen.find({qa, qb});
        if (it != seen.end()) return it->second;
        bool acc = conjunctive ? (a.accepting[qa] && b.accepting[qb])
                               : (a.accepting[qa] || b.accepting[qb]);
        State q = r.add_state(unique(a.state_names[qa] + "*" + b.state_names[qb]), init, acc);
        seen[{qa, qb}] = q;
        work.push({qa, qb});
        return q;
    };

    std::vector<std::vector<std::uint32_t>> out_b(b.num_states());
    for (std::uint32_t i = 0; i < b.transitions.size(); ++i)
        out_b[b.transitions[i].src].push_back(i);

    for (State qa = 0; qa < a.num_states(); ++qa)
        for (State qb = 0; qb < b.num_states(); ++qb)
            if (a.initial[qa] && b.initial[qb]) intern(qa, qb, true);

    while (!work.empty()) {
        auto [qa, qb] = work.front();
        work.pop();
        State src = seen[{qa, qb}];
        for (std::uint32_t i : out_a[qa]) {
            const Transition& ta = a.transitions[i];
            for (std::uint32_t j : out_b[qb]) {
                const Transition& tb = b.transitions[j];
                if (ta.label != tb.label) continue;
                State dst = intern(ta.dst, tb.dst, false);
                r.add_transition(src, ta.label, dst);
            }
        }
        if (r.transitions.size() > kTransitionCap) throw ResourceCap("product too large");
    }
    std::sort(r.transitions.begin(), r.transitions.end());
    r.transitions.erase(std::unique(r.transitions.begin(), r.transitions.end()),
                        r.transitions.end());
    return r;
}

}  // namespace

Automaton product_intersect(const Automaton& a, const Automaton& b) {
    if (!is_weak(a) || !is_weak(b)) throw NotWeak();
    return pair_product(a, b, true);
}

Automaton product_union(const Automaton& a, const Automaton& b) {
    if (!a.deterministic() || !b.deterministic()) throw NotDeterministic();
    if (!a.complete() || !b.complete()) throw NotComplete();
    if (!is_weak(a) || !is_weak(b)) throw NotWeak();
    return pair_product(a, b, false);
}

Automaton project(const Automaton& a, const std::vector<std::size_t>& keep) {
    require_valid(a);
    if (keep.empty()) throw BadCoordinates("projection keeps no coordinate");
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] >= a.arity())
            throw BadCoordinates("coordinate " + std::to_string(keep[i] + 1) + " out of range");
        if (i && keep[i] <= keep[i - 1])
            throw BadCoordinates("coordinates must be strictly increasing");
    }
    Automaton r;
    for (std::size_t c : keep) r.radix.push_back(a.radix[c]);
    r.state_names = a.state_names;
    r.initial = a.initial;
    r.accepting = a.accepting;
    std::set<Transition> dedup;
    for (const Transition& t : a.transitions) {
        Label lab;
        for (std::size_t i = 0; i < keep.size(); ++i) lab[i] = t.label[keep[i]];
        dedup.insert({t.src, lab, t.dst});
    }
    r.transitions.assign(dedup.begin(), dedup.end());
    return r;
}

Automaton cylindrify(const Automaton& a, const std::vector<unsigned>& new_radix,
                     const std::vector<std::size_t>& embed) {
    require_valid(a);
    if (embed.size() != a.arity()) throw BadCoordinates("embedding arity mismatch");
    if (new_radix.size() > kMaxArity) throw BadCoordinates("arity exceeds limit");
    std::vector<bool> taken(new_radix.size(), false);
    for (std::size_t i = 0; i < embed.size(); ++i) {
        if (embed[i] >= new_radix.size()) throw BadCoordinates("embedding target out of range");
        if (taken[embed[i]]) throw BadCoordinates("embedding targets must be distinct");
        taken[embed[i]] = true;
        if (new_radix[embed[i]] != a.radix[i])
            throw BadCoordinates("radix changes under embedding");
    }
    std::vector<std::size_t> free;
    std::uint64_t combos = 1;
    for (std::size_t c = 0; c < new_radix.size(); ++c)
        if (!taken[c]) {
            free.push_back(c);
            combos *= new_radix[c];
        }
    if (a.transitions.size() * combos > kTransitionCap)
        throw ResourceCap("cylindrification too large");

    Automaton r;
    r.radix = new_radix;
    r.state_names = a.state_names;
    r.initial = a.initial;
    r.accepting = a.accepting;
    for (const Transition& t : a.transitions) {
        Label base;
        for (std::size_t i = 0; i < embed.size(); ++i) base[embed[i]] = t.label[i];
        for (std::uint64_t combo = 0; combo < combos; ++combo) {
            Label lab = base;
            std::uint64_t rest = combo;
            for (std::size_t c : free) {
                lab[c] = static_cast<Digit>(rest % new_radix[c]);
                rest /= new_radix[c];
            }
            r.add_transition(t.src, lab, t.dst);
        }
    }
    std::sort(r.transitions.begin(), r.transitions.end());
    return r;
}

Automaton determinize_closed(const Automaton& a) {
    require_valid(a);
    if (!is_closed(a)) throw NotClosed();
    std::uint64_t sigma = a.alphabet_size();
    if (sigma > kAlphabetCap) throw ResourceCap("alphabet too large to determinize");

    Automaton r;
    r.radix = a.radix;
    auto trimmed = try_trim(a);
    if (!trimmed) {
        State sink = r.add_state("sink", true, false);
        for (Symbol s = 0; s < sigma; ++s) r.add_transition(sink, r.unpack(s), sink);
        return r;
    }
    const Automaton& t = *trimmed;
    auto idx = successor_index(t);

    std::map<std::vector<State>, State> interned;
    std::queue<std::vector<State>> work;
    NameDedup unique;
    std::optional<State> sink;

    auto intern = [&](std::vector<State> subset, bool init) {
        auto it = interned.find(subset);
        if (it != interned.end()) return it->second;
        if (interned.size() >= kSubsetCap) throw ResourceCap("subset construction too large");
        State q = r.add_state(unique("S" + std::to_string(interned.size())), init, true);
        interned[subset] = q;
        work.push(std::move(subset));
        return q;
    };
    auto sink_state = [&]() {
        if (!sink) {
            sink = r.add_state(unique("sink"), false, false);
            for (Symbol s = 0; s < sigma; ++s) r.add_transition(*sink, r.unpack(s), *sink);
        }
        return *sink;
    };

    std::vector<State> initials;
    for (State q = 0; q < t.num_states(); ++q)
        if (t.initial[q]) initials.push_back(q);
    intern(std::move(initials), true);

    while (!work.empty()) {
        std::vector<State> subset = std::move(work.front());
        work.pop();
        State src = interned[subset];
        for (Symbol s = 0; s < sigma; ++s) {
            std::vector<State> succ;
            for (State q : subset) {
                auto it = idx[q].find(s);
                if (it == idx[q].end()) continue;
                succ.insert(succ.end(), it->second.begin(), it->second.end());
            }
            std::sort(succ.begin(), succ.end());
            succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
            State dst = succ.empty() ? sink_state() : intern(std::move(succ), false);
            r.add_transition(src, r.unpack(s), dst);
        }
    }
    return r;
}

Automaton complement_det(const Automaton& a) {
    require_valid(a);
    if (!a.deterministic()) throw NotDeterministic();
    if (!a.complete()) throw NotComplete();
    if (!is_weak(a)) throw NotWeak();
    Automaton r = a;
    for (State q = 0; q < r.num_states(); ++q) r.accepting[q] = !r.accepting[q];
    return r;
}

namespace {

// Shortest, then lexicographically least, label word realizing a path.
// BFS expands labels in sorted order, so the first write wins.
struct ShortlexPaths {
    std::vector<std::int64_t> parent;       // discovered-from state, -1 at roots
    std::vector<std::uint32_t> via;         // transition index used
    std::vector<std::uint32_t> dist;

    std::vector<Label> word_to(const Automaton& a, State q) const {
        std::vector<Label> w;
        while (parent[q] >= 0) {
            w.push_back(a.transitions[via[q]].label);
            q = static_cast<State>(parent[q]);
        }
        std::reverse(w.begin(), w.end());
        return w;
    }
};

ShortlexPaths shortlex_bfs(const Automaton& a, const std::vector<State>& roots) {
    std::vector<std::uint32_t> order(a.transitions.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
        const Transition &tx = a.transitions[x], &ty = a.transitions[y];
        return std::tie(tx.src, tx.label, tx.dst) < std::tie(ty.src, ty.label, ty.dst);
    });
    std::vector<std::vector<std::uint32_t>> out(a.num_states());
    for (std::uint32_t i : order) out[a.transitions[i].src].push_back(i);

    ShortlexPaths p;
    p.parent.assign(a.num_states(), -2);  // -2 unreached, -1 root
    p.via.assign(a.num_states(), 0);
    p.dist.assign(a.num_states(), UINT32_MAX);
    std::queue<State> bfs;
    for (State q : roots)
        if (p.parent[q] == -2) {
            p.parent[q] = -1;
            p.dist[q] = 0;
            bfs.push(q);
        }
    while (!bfs.empty()) {
        State q = bfs.front();
        bfs.pop();
        for (std::uint32_t i : out[q]) {
            State w = a.transitions[i].dst;
            if (p.parent[w] != -2) continue;
            p.parent[w] = q;
            p.via[w] = i;
            p.dist[w] = p.dist[q] + 1;
            bfs.push(w);
        }
    }
    return p;
}

// Shortest lex-least nonempty cycle word through q, if any.
std::optional<std::vector<Label>> shortlex_cycle(const Automaton& a, State q) {
    // one BFS step by hand, then shortlex paths back to q
    std::vector<std::uint32_t> first;
    for (std::uint32_t i = 0; i < a.transitions.size(); ++i)
        if (a.transitions[i].src == q) first.push_back(i);
    std::sort(first.begin(), first.end(), [&](std::uint32_t x, std::uint32_t y) {
        return std::tie(a.transitions[x].label, a.transitions[x].dst) <
               std::tie(a.transitions[y].label, a.transitions[y].dst);
    });
    std::optional<std::vector<Label>> best;
    for (std::uint32_t i : first) {
        const Transition& t = a.transitions[i];
        std::vector<Label> w{t.label};
        if (t.dst != q) {
            ShortlexPaths p = shortlex_bfs(a, {t.dst});
            if (p.dist[q] == UINT32_MAX) continue;
            auto tail = p.word_to(a, q);
            w.insert(w.end(), tail.begin(), tail.end());
        }
        if (!best || w.size() < best->size() || (w.size() == best->size() && w < *best))
            best = std::move(w);
    }
    return best;
}

}  // namespace

EmptinessResult is_empty(const Automaton& a) {
    require_valid(a);
    std::vector<State> roots;
    for (State q = 0; q < a.num_states(); ++q)
        if (a.initial[q]) roots.push_back(q);
    ShortlexPaths fwd = shortlex_bfs(a, roots);

    std::optional<Lasso> best;
    for (State q = 0; q < a.num_states(); ++q) {
        if (!a.accepting[q] || fwd.dist[q] == UINT32_MAX) continue;
        auto cyc = shortlex_cycle(a, q);
        if (!cyc) continue;
        Lasso cand{fwd.word_to(a, q), std::move(*cyc)};
        auto key = [](const Lasso& l) {
            return std::make_tuple(l.prefix.size() + l.cycle.size(), l.prefix, l.cycle);
        };
        if (!best || key(cand) < key(*best)) best = std::move(cand);
    }
    if (best) return {false, std::move(best)};
    return {true, std::nullopt};
}

UniversalityResult is_universal_closed(const Automaton& a) {
    EmptinessResult e = is_empty(complement_det(a));
    if (e.empty) return {true, std::nullopt};
    return {false, std::move(e.witness)};
}

bool language_equal(const Automaton& a, const Automaton& b) {
    require_same_radix(a, b);
    return is_empty(product_intersect(a, complement_det(b))).empty &&
           is_empty(product_intersect(b, complement_det(a))).empty;
}

Automaton with_initial(const Automaton& a, State q) {
    if (q >= a.num_states()) throw UnknownState(std::to_string(q));
    Automaton r = a;
    r.initial.assign(r.num_states(), false);
    r.initial[q] = true;
    return r;
}

}  // namespace regba
