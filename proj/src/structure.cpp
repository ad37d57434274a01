#include "regba/structure.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "regba/errors.hpp"

namespace regba {

namespace {

// Iterative Tarjan; components are numbered in completion order, which is a
// reverse topological order of the condensation.
struct TarjanState {
    std::vector<std::uint32_t> index, lowlink;
    std::vector<bool> on_stack;
    std::vector<State> stack;
    std::uint32_t next_index = 0;
};

}  // namespace

SccDecomposition scc(const Automaton& a) {
    const State n = a.num_states();
    auto out = outgoing_index(a);
    SccDecomposition d;
    d.component.assign(n, UINT32_MAX);

    TarjanState t;
    t.index.assign(n, UINT32_MAX);
    t.lowlink.assign(n, 0);
    t.on_stack.assign(n, false);

    struct Frame {
        State q;
        std::size_t edge;
    };
    for (State root = 0; root < n; ++root) {
        if (t.index[root] != UINT32_MAX) continue;
        std::vector<Frame> frames{{root, 0}};
        t.index[root] = t.lowlink[root] = t.next_index++;
        t.stack.push_back(root);
        t.on_stack[root] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.edge < out[f.q].size()) {
                State w = a.transitions[out[f.q][f.edge++]].dst;
                if (t.index[w] == UINT32_MAX) {
                    t.index[w] = t.lowlink[w] = t.next_index++;
                    t.stack.push_back(w);
                    t.on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (t.on_stack[w]) {
                    t.lowlink[f.q] = std::min(t.lowlink[f.q], t.index[w]);
                }
            } else {
                if (t.lowlink[f.q] == t.index[f.q]) {
                    std::uint32_t id = d.component_count++;
                    State w;
                    do {
                        w = t.stack.back();
                        t.stack.pop_back();
                        t.on_stack[w] = false;
                        d.component[w] = id;
                    } while (w != f.q);
                }
                State q = f.q;
                frames.pop_back();
                if (!frames.empty())
                    t.lowlink[frames.back().q] =
                        std::min(t.lowlink[frames.back().q], t.lowlink[q]);
            }
        }
    }

    std::set<std::pair<std::uint32_t, std::uint32_t>> edges;
    d.nontrivial.assign(d.component_count, false);
    for (const Transition& tr : a.transitions) {
        std::uint32_t cs = d.component[tr.src], cd = d.component[tr.dst];
        if (cs != cd)
            edges.insert({cs, cd});
        else
            d.nontrivial[cs] = true;
    }
    d.edges.assign(edges.begin(), edges.end());
    // completion order is reverse-topological
    d.topo_order.resize(d.component_count);
    for (std::uint32_t i = 0; i < d.component_count; ++i)
        d.topo_order[i] = d.component_count - 1 - i;
    return d;
}

std::vector<std::vector<State>> sinks(const Automaton& a) {
    SccDecomposition d = scc(a);
    std::vector<bool> has_out(d.component_count, false);
    for (auto [from, to] : d.edges) has_out[from] = true;
    std::vector<std::vector<State>> result;
    for (std::uint32_t c = 0; c < d.component_count; ++c) {
        if (has_out[c]) continue;
        std::vector<State> members;
        for (State q = 0; q < a.num_states(); ++q)
            if (d.component[q] == c) members.push_back(q);
        result.push_back(std::move(members));
    }
    std::sort(result.begin(), result.end());
    return result;
}

bool is_weak(const Automaton& a) {
    SccDecomposition d = scc(a);
    std::vector<signed char> acc(d.component_count, -1);
    for (State q = 0; q < a.num_states(); ++q) {
        signed char want = a.accepting[q] ? 1 : 0;
        signed char& have = acc[d.component[q]];
        if (have == -1)
            have = want;
        else if (have != want)
            return false;
    }
    return true;
}

bool is_closed(const Automaton& a) {
    SccDecomposition d = scc(a);
    for (State q = 0; q < a.num_states(); ++q)
        if (d.nontrivial[d.component[q]] && !a.accepting[q]) return false;
    return true;
}

std::optional<Automaton> try_trim(const Automaton& a) {
    const State n = a.num_states();
    auto out = outgoing_index(a);
    std::vector<std::vector<std::uint32_t>> in(n);
    for (std::uint32_t i = 0; i < a.transitions.size(); ++i)
        in[a.transitions[i].dst].push_back(i);

    std::vector<bool> accessible(n, false);
    std::vector<State> work;
    for (State q = 0; q < n; ++q)
        if (a.initial[q]) {
            accessible[q] = true;
            work.push_back(q);
        }
    while (!work.empty()) {
        State q = work.back();
        work.pop_back();
        for (std::uint32_t i : out[q]) {
            State w = a.transitions[i].dst;
            if (!accessible[w]) {
                accessible[w] = true;
                work.push_back(w);
            }
        }
    }

    std::vector<bool> coaccessible(n, false);
    for (State q = 0; q < n; ++q)
        if (a.accepting[q]) {
            coaccessible[q] = true;
            work.push_back(q);
        }
    while (!work.empty()) {
        State q = work.back();
        work.pop_back();
        for (std::uint32_t i : in[q]) {
            State w = a.transitions[i].src;
            if (!coaccessible[w]) {
                coaccessible[w] = true;
                work.push_back(w);
            }
        }
    }

    std::vector<State> keep;
    for (State q = 0; q < n; ++q)
        if (accessible[q] && coaccessible[q]) keep.push_back(q);
    if (keep.empty()) return std::nullopt;

    std::vector<State> new_initial;
    for (State q : keep)
        if (a.initial[q]) new_initial.push_back(q);
    if (new_initial.empty()) return std::nullopt;
    return restrict_states(a, keep, new_initial);
}

Automaton trim(const Automaton& a) {
    auto r = try_trim(a);
    if (!r) throw EmptyLanguage();
    return std::move(*r);
}

Automaton closure(const Automaton& a) {
    Automaton r = a;
    r.accepting.assign(r.num_states(), true);
    return r;
}

Automaton complete(const Automaton& a) {
    if (!a.deterministic()) throw NotDeterministic();
    std::uint64_t sigma = a.alphabet_size();
    if (sigma > 1000000) throw ResourceCap("alphabet too large to complete");
    Automaton r = a;
    std::vector<std::set<Symbol>> covered(r.num_states());
    for (const Transition& t : r.transitions) covered[t.src].insert(r.pack(t.label));
    bool needs_sink = false;
    for (State q = 0; q < r.num_states() && !needs_sink; ++q)
        needs_sink = covered[q].size() < sigma;
    if (!needs_sink) return r;
    State sink = r.add_state(fresh_name(r, "sink"), false, false);
    for (State q = 0; q < r.num_states(); ++q) {
        for (Symbol s = 0; s < sigma; ++s) {
            if (q < sink && covered[q].count(s)) continue;
            r.add_transition(q, r.unpack(s), sink);
        }
    }
    return r;
}

Automaton restrict_states(const Automaton& a, const std::vector<State>& keep,
                          const std::vector<State>& new_initial) {
    std::vector<State> remap(a.num_states(), UINT32_MAX);
    Automaton r;
    r.radix = a.radix;
    for (State q : keep) remap[q] = r.add_state(a.state_names[q], false, a.accepting[q]);
    for (State q : new_initial) {
        if (remap[q] == UINT32_MAX) throw UnknownState(a.state_names[q]);
        r.initial[remap[q]] = true;
    }
    for (const Transition& t : a.transitions)
        if (remap[t.src] != UINT32_MAX && remap[t.dst] != UINT32_MAX)
            r.add_transition(remap[t.src], t.label, remap[t.dst]);
    return r;
}

std::vector<bool> productive_states(const Automaton& a) {
    // Iteratively discard states whose every successor is already discarded.
    const State n = a.num_states();
    auto out = outgoing_index(a);
    std::vector<bool> alive(n, true);
    bool changed = true;
    while (changed) {
        changed = false;
        for (State q = 0; q < n; ++q) {
            if (!alive[q]) continue;
            bool has_succ = false;
            for (std::uint32_t i : out[q])
                if (alive[a.transitions[i].dst]) {
                    has_succ = true;
                    break;
                }
            if (!has_succ) {
                alive[q] = false;
                changed = true;
            }
        }
    }
    return alive;
}

std::vector<std::uint64_t> path_label_counts_from(const Automaton& a, State p, unsigned n) {
    if (p >= a.num_states()) throw UnknownState(std::to_string(p));
    std::uint64_t sigma = a.alphabet_size(), words = 1;
    for (unsigned i = 0; i < n; ++i) {
        if (words > 10000000 / sigma)
            throw ResourceCap("too many length-" + std::to_string(n) + " labels");
        words *= sigma;
    }

    // per state, the set of packed label words reaching it from p
    std::vector<std::set<std::uint64_t>> cur(a.num_states());
    cur[p].insert(0);
    for (unsigned step = 0; step < n; ++step) {
        std::vector<std::set<std::uint64_t>> next(a.num_states());
        std::uint64_t total = 0;
        for (const Transition& t : a.transitions) {
            Symbol s = a.pack(t.label);
            for (std::uint64_t w : cur[t.src]) next[t.dst].insert(w * sigma + s);
        }
        for (const auto& set : next) total += set.size();
        if (total > 10000000) throw ResourceCap("path label enumeration exceeds budget");
        cur = std::move(next);
    }
    std::vector<std::uint64_t> counts(a.num_states());
    for (State q = 0; q < a.num_states(); ++q) counts[q] = cur[q].size();
    return counts;
}

std::uint64_t path_label_count(const Automaton& a, State p, State q, unsigned n) {
    if (q >= a.num_states()) throw UnknownState(std::to_string(q));
    return path_label_counts_from(a, p, n)[q];
}

}  // namespace regba
