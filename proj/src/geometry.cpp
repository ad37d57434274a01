#include "regba/geometry.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>
#include <utility>

#include "regba/errors.hpp"
#include "regba/ops.hpp"
#include "regba/reals.hpp"
#include "regba/structure.hpp"

namespace regba {

namespace {

constexpr std::size_t kBoxBudget = 10000000;
constexpr std::uint64_t kIntervalBudget = 1000000;

std::vector<State> reachable_states(const Automaton& a) {
    auto out = outgoing_index(a);
    std::vector<bool> seen(a.num_states(), false);
    std::deque<State> queue;
    for (State q = 0; q < a.num_states(); ++q) {
        if (a.initial[q]) {
            seen[q] = true;
            queue.push_back(q);
        }
    }
    while (!queue.empty()) {
        State q = queue.front();
        queue.pop_front();
        for (std::uint32_t ti : out[q]) {
            State d = a.transitions[ti].dst;
            if (!seen[d]) {
                seen[d] = true;
                queue.push_back(d);
            }
        }
    }
    std::vector<State> reach;
    for (State q = 0; q < a.num_states(); ++q)
        if (seen[q]) reach.push_back(q);
    return reach;
}

// Accepts exactly the words starting with the depth-k digit prefix of m.
// Points strictly inside [m/r^k, (m+1)/r^k] have every encoding in this
// language; the endpoints contribute only their prefix-form encodings.
Automaton box_word_automaton(unsigned r, unsigned k, std::uint64_t m) {
    Automaton b;
    b.radix = {r};
    State prev = b.add_state("b0", true, true);
    for (unsigned i = 0; i < k; ++i) {
        State next = b.add_state("b" + std::to_string(i + 1), false, true);
        std::uint64_t weight = 1;
        for (unsigned j = i + 1; j < k; ++j) weight *= r;
        Label digit;
        digit[0] = static_cast<Digit>((m / weight) % r);
        b.add_transition(prev, digit, next);
        prev = next;
    }
    for (unsigned d = 0; d < r; ++d) {
        Label digit;
        digit[0] = static_cast<Digit>(d);
        b.add_transition(prev, digit, prev);
    }
    return b;
}

bool interval_disjoint(const Automaton& residuals, unsigned r, unsigned k, std::uint64_t m) {
    Automaton hit = product_intersect(residuals, box_word_automaton(r, k, m));
    Int span = pow_int(Int(r), k);
    for (const Int& endpoint : {Int(m), Int(m) + 1}) {
        Automaton point = complete(singleton_automaton({Rational(endpoint, span)}, {r}));
        hit = product_intersect(hit, complement_det(point));
    }
    return is_empty(hit).empty;
}

}  // namespace

Gdifs gdifs_of(const Automaton& a) {
    require_valid(a);
    Gdifs g;
    g.ratios = a.radix;
    g.vertices = a.state_names;
    for (State q = 0; q < a.num_states(); ++q)
        if (a.initial[q]) g.initial.push_back(q);
    g.edges.reserve(a.transitions.size());
    for (const Transition& t : a.transitions) g.edges.push_back({t.src, t.dst, t.label});
    return g;
}

BoxCover attractor_boxes(const Automaton& a, unsigned depth) {
    require_valid(a);
    const std::size_t n = a.arity();
    for (std::size_t i = 0; i < n; ++i) {
        if (pow_int(Int(a.radix[i]), depth) > Int(std::numeric_limits<std::uint64_t>::max()))
            throw ResourceCap("box indices exceed 64 bits at this depth");
    }

    // Every accepted run stays within productive states, so pruning the rest
    // keeps the cover sound; for closed input it also makes it tight, since
    // each surviving path extends to an accepting run through its box.
    std::vector<bool> alive = productive_states(a);
    auto out = outgoing_index(a);

    using Index = std::array<std::uint64_t, kMaxArity>;
    std::set<std::pair<State, Index>> layer;
    for (State q = 0; q < a.num_states(); ++q)
        if (a.initial[q] && alive[q]) layer.insert({q, Index{}});

    for (unsigned step = 0; step < depth; ++step) {
        std::set<std::pair<State, Index>> next;
        for (const auto& [q, idx] : layer) {
            for (std::uint32_t ti : out[q]) {
                const Transition& t = a.transitions[ti];
                if (!alive[t.dst]) continue;
                Index scaled{};
                for (std::size_t i = 0; i < n; ++i)
                    scaled[i] = idx[i] * a.radix[i] + t.label[i];
                next.insert({t.dst, scaled});
                if (next.size() > kBoxBudget)
                    throw ResourceCap("box enumeration budget exceeded");
            }
        }
        layer = std::move(next);
    }

    std::set<Index> boxes;
    for (const auto& [q, idx] : layer) boxes.insert(idx);

    BoxCover cover;
    cover.depth = depth;
    cover.boxes.assign(boxes.begin(), boxes.end());
    return cover;
}

std::vector<KernelResidual> kernel_residuals(const Automaton& a) {
    require_valid(a);
    if (!a.deterministic()) throw NotDeterministic();
    Automaton c = complete(a);
    if (!is_weak(c)) throw NotWeak();

    std::vector<KernelResidual> groups;
    for (State q : reachable_states(c)) {
        bool placed = false;
        for (KernelResidual& g : groups) {
            if (language_equal(g.residual, with_initial(c, q))) {
                g.members.push_back(q);
                placed = true;
                break;
            }
        }
        if (!placed) {
            KernelResidual g;
            g.representative = q;
            g.members = {q};
            g.residual = with_initial(c, q);
            g.empty_language = is_empty(g.residual).empty;
            groups.push_back(std::move(g));
        }
    }
    return groups;
}

PorosityWitness porosity_witness(const Automaton& a) {
    require_valid(a);
    if (a.arity() != 1) throw BadCoordinates("porosity witness needs arity 1");
    if (!a.deterministic()) throw NotDeterministic();
    unsigned r = a.uniform_radix();
    Automaton c = complete(a);
    if (!is_weak(c)) throw NotWeak();

    std::vector<State> reach = reachable_states(c);
    for (State q : reach) {
        if (is_universal_closed(with_initial(c, q)).universal)
            throw NotNowhereDense("residual at state '" + c.state_names[q] + "' covers [0,1]");
    }

    // Union of all residual languages: same automaton, every reachable state
    // initial. A candidate interval is admissible exactly when this union
    // misses its interior.
    Automaton residuals = c;
    residuals.initial.assign(residuals.num_states(), false);
    for (State q : reach) residuals.initial[q] = true;

    for (unsigned k = 1; k <= a.num_states(); ++k) {
        Int span = pow_int(Int(r), k);
        if (span > Int(kIntervalBudget))
            throw ResourceCap("interval enumeration budget exceeded");
        std::uint64_t count = span.convert_to<std::uint64_t>();
        for (std::uint64_t m = 0; m < count; ++m) {
            if (!interval_disjoint(residuals, r, k, m)) continue;
            PorosityWitness w;
            w.depth = k;
            w.index = Int(m);
            w.left = Rational(Int(m), span);
            w.right = Rational(Int(m) + 1, span);
            w.constant = Rational(Int(2), pow_int(Int(r), k + 1));
            return w;
        }
    }
    throw NotNowhereDense("no excluded interval within the state-count depth bound");
}

Rational box_measure_estimate(const Automaton& a, unsigned depth) {
    if (a.arity() != 1) throw BadCoordinates("measure estimate needs arity 1");
    unsigned r = a.uniform_radix();
    BoxCover cover = attractor_boxes(a, depth);
    return Rational(Int(cover.boxes.size()), pow_int(Int(r), depth));
}

}  // namespace regba
