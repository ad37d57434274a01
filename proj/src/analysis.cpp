#include "regba/analysis.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "regba/errors.hpp"
#include "regba/ops.hpp"
#include "regba/reals.hpp"
#include "regba/structure.hpp"

namespace regba {

namespace {

constexpr std::uint64_t kWitnessBudget = 10000000;

Automaton normalize_det(const Automaton& a) {
    return trim(determinize_closed(trim(closure(a))));
}

void require_sink(const Automaton& a, const std::vector<State>& sink, State q) {
    auto all = sinks(a);
    std::vector<State> sorted = sink;
    std::sort(sorted.begin(), sorted.end());
    if (std::find(all.begin(), all.end(), sorted) == all.end()) throw UnknownSink();
    if (std::find(sorted.begin(), sorted.end(), q) == sorted.end()) throw UnknownSink();
}

// Sub-automaton of the sink rooted at q; empty when q is a dead end.
std::optional<Automaton> sink_sub_automaton(const Automaton& a, const std::vector<State>& sink,
                                            State q) {
    Automaton sub = restrict_states(a, sink, {q});
    return try_trim(sub);
}

}  // namespace

Automaton saturated_presentation(const Automaton& a) {
    require_valid(a);
    return trim(saturate(trim(closure(a))));
}

FunctionCheck is_function(const Automaton& a) {
    if (a.arity() != 2) throw BadCoordinates("function check needs arity 2");
    unsigned r = a.uniform_radix();

    FunctionCheck res;

    Automaton dom = determinize_closed(trim(closure(project(a, {0}))));
    UniversalityResult total = is_universal_closed(dom);
    if (!total.universal) {
        res.ok = false;
        res.failure = FunctionCheck::Failure::NotTotal;
        res.counterexample = {valuation1(*total.counterexample, r)};
        return res;
    }

    std::vector<unsigned> r3(3, r);
    Automaton c1 = cylindrify(a, r3, {0, 1});
    Automaton c2 = cylindrify(a, r3, {0, 2});
    Automaton neq = cylindrify(complement_det(complete(equal_value_automaton(r))), r3, {1, 2});
    EmptinessResult two = is_empty(product_intersect(product_intersect(c1, c2), neq));
    if (!two.empty) {
        res.ok = false;
        res.failure = FunctionCheck::Failure::MultiValued;
        res.counterexample = valuation(*two.witness, r3);
        return res;
    }
    res.ok = true;
    return res;
}

bool is_continuous(const Automaton& a) { return is_function(a).ok; }

bool sink_projection_full(const Automaton& a, const std::vector<State>& sink, State q) {
    require_sink(a, sink, q);
    auto sub = sink_sub_automaton(a, sink, q);
    if (!sub) return false;
    Automaton proj = trim(closure(project(*sub, {0})));
    return is_universal_closed(saturate(proj)).universal;
}

Automaton make_full(const Automaton& a) {
    require_valid(a);
    if (!a.deterministic()) throw NotDeterministic();
    if (!is_closed(a)) throw NotClosed();
    if (a.arity() != 2) throw BadCoordinates("make_full needs arity 2");

    Automaton cur = trim(a);
    for (;;) {
        std::vector<bool> drop(cur.num_states(), false);
        bool changed = false;
        for (const std::vector<State>& sink : sinks(cur)) {
            bool full = false;
            for (State q : sink)
                if (sink_projection_full(cur, sink, q)) {
                    full = true;
                    break;
                }
            if (!full) {
                for (State q : sink) drop[q] = true;
                changed = true;
            }
        }
        if (!changed) return cur;
        std::vector<State> keep, init;
        for (State q = 0; q < cur.num_states(); ++q)
            if (!drop[q]) {
                keep.push_back(q);
                if (cur.initial[q]) init.push_back(q);
            }
        if (keep.empty() || init.empty()) throw EmptyLanguage();
        cur = trim(restrict_states(cur, keep, init));
    }
}

AffinePiece sink_affine(const Automaton& a, const std::vector<State>& sink, State q) {
    require_sink(a, sink, q);
    unsigned r = a.uniform_radix();
    auto sub = sink_sub_automaton(a, sink, q);
    if (!sub) throw NotAffineSink("sink state has no infinite run");

    Rational beta, at_one;
    try {
        beta = eval_function(*sub, 0);
        at_one = eval_function(*sub, 1);
    } catch (const EmptyFiber&) {
        throw NotAffineSink("sink value set does not span [0,1]");
    }
    AffinePiece piece{at_one - beta, beta, sink, q};
    std::sort(piece.sink.begin(), piece.sink.end());

    Automaton expected;
    try {
        expected = affine_graph_automaton(piece.alpha, piece.beta, r);
    } catch (const RangeViolation&) {
        throw NotAffineSink("endpoint values are not consistent with an affine map on [0,1]");
    }
    if (!language_equal(saturate(*sub), complete(expected)))
        throw NotAffineSink("sink value set is not the graph of an affine map");
    return piece;
}

PiecewiseReport slope_set(const Automaton& a, unsigned depth) {
    require_valid(a);
    if (!a.deterministic()) throw NotDeterministic();
    if (a.arity() != 2) throw BadCoordinates("slope extraction needs arity 2");
    unsigned r = a.uniform_radix();

    PiecewiseReport report;
    report.depth = depth;
    report.covered_measure = 0;

    // slope per state of a full sink, at full entry states only
    std::map<State, Rational> slope_at;
    for (const std::vector<State>& sink : sinks(a)) {
        std::optional<Rational> slope;
        for (State q : sink) {
            if (!sink_projection_full(a, sink, q)) continue;
            if (!slope) {
                AffinePiece piece = sink_affine(a, sink, q);
                slope = piece.alpha;
                report.pieces.push_back(std::move(piece));
            }
            slope_at[q] = *slope;
        }
    }
    std::set<Rational> slopes;
    for (const AffinePiece& p : report.pieces) slopes.insert(p.alpha);
    report.slopes.assign(slopes.begin(), slopes.end());

    // input-coordinate prefix values per state, one depth at a time
    std::vector<std::set<std::uint64_t>> cur(a.num_states());
    for (State q = 0; q < a.num_states(); ++q)
        if (a.initial[q]) cur[q].insert(0);
    Int rn = pow_int(r, depth);
    std::vector<std::pair<Int, Int>> covered;  // in units of r^-depth
    std::set<std::tuple<unsigned, std::uint64_t, Rational>> seen_witness;

    for (unsigned m = 0;; ++m) {
        for (State q = 0; q < a.num_states(); ++q) {
            auto it = slope_at.find(q);
            if (it == slope_at.end()) continue;
            for (std::uint64_t w : cur[q]) {
                if (!seen_witness.insert({m, w, it->second}).second) continue;
                Int rm = pow_int(r, m);
                report.witnesses.push_back({Rational(Int(w), rm), m, it->second});
                Int unit = rn / rm;
                covered.push_back({Int(w) * unit, Int(w) * unit + unit});
            }
        }
        if (m == depth) break;
        std::vector<std::set<std::uint64_t>> next(a.num_states());
        std::uint64_t budget = 0;
        for (const Transition& t : a.transitions)
            for (std::uint64_t w : cur[t.src]) next[t.dst].insert(w * r + t.label[0]);
        for (const auto& s : next) budget += s.size();
        if (budget > kWitnessBudget) throw ResourceCap("witness enumeration exceeds budget");
        cur = std::move(next);
    }

    std::sort(covered.begin(), covered.end());
    Int total = 0;
    bool open = false;
    Int cur_lo = 0, cur_hi = 0;
    for (const auto& [lo, hi] : covered) {
        if (!open) {
            cur_lo = lo;
            cur_hi = hi;
            open = true;
        } else if (lo <= cur_hi) {
            cur_hi = std::max(cur_hi, hi);
        } else {
            total += cur_hi - cur_lo;
            cur_lo = lo;
            cur_hi = hi;
        }
    }
    if (open) total += cur_hi - cur_lo;
    report.covered_measure = Rational(total, rn);

    std::sort(report.witnesses.begin(), report.witnesses.end(),
              [](const WitnessInterval& x, const WitnessInterval& y) {
                  return std::tie(x.left, x.depth, x.slope) < std::tie(y.left, y.depth, y.slope);
              });
    return report;
}

DifferentiabilityResult is_differentiable(const Automaton& a) {
    if (a.arity() != 2) throw BadCoordinates("differentiability check needs arity 2");
    unsigned r = a.uniform_radix();
    Automaton mid = midpoint_relation_automaton(r);

    std::vector<unsigned> r4(4, r), r5(5, r);
    // left side: z = f((x+y)/2) over (x, y, m, z)
    Automaton left = normalize_det(project(
        product_intersect(cylindrify(mid, r4, {0, 1, 2}), cylindrify(a, r4, {2, 3})),
        {0, 1, 3}));
    // right side: z = (f(x)+f(y))/2 over (x, y, u, v, z)
    Automaton right = normalize_det(project(
        product_intersect(
            product_intersect(cylindrify(mid, r5, {2, 3, 4}), cylindrify(a, r5, {0, 2})),
            cylindrify(a, r5, {1, 3})),
        {0, 1, 4}));

    Automaton agree = trim(closure(project(product_intersect(left, right), {0, 1})));
    UniversalityResult u = is_universal_closed(saturate(agree));
    if (u.universal) return {true, std::nullopt};
    auto xy = valuation(*u.counterexample, {r, r});
    return {false, std::make_pair(xy[0], xy[1])};
}

Rational sum_form_check(const Automaton& a, const Rational& t, unsigned depth) {
    if (t < 0 || t > 1) throw OutOfRange("t outside [0,1]");
    PiecewiseReport report = slope_set(a, depth);
    Rational approx = eval_function(a, 0);

    // per slope, the measure of the merged witness union clipped to [0, t]
    std::map<Rational, std::vector<std::pair<Rational, Rational>>> by_slope;
    for (const WitnessInterval& w : report.witnesses) {
        Rational width(Int(1), pow_int(a.uniform_radix(), w.depth));
        by_slope[w.slope].push_back({w.left, w.left + width});
    }
    for (auto& [slope, intervals] : by_slope) {
        std::sort(intervals.begin(), intervals.end());
        Rational length = 0, lo = 0, hi = 0;
        bool open = false;
        for (const auto& [l, h] : intervals) {
            if (!open) {
                lo = l;
                hi = h;
                open = true;
            } else if (l <= hi) {
                hi = std::max(hi, h);
            } else {
                Rational clipped(std::min(hi, t) - lo);
                if (clipped > 0) length += clipped;
                lo = l;
                hi = h;
            }
        }
        if (open) {
            Rational clipped(std::min(hi, t) - lo);
            if (clipped > 0) length += clipped;
        }
        approx += slope * length;
    }
    Rational residual = eval_function(a, t) - approx;
    return residual < 0 ? Rational(-residual) : residual;
}

}  // namespace regba
