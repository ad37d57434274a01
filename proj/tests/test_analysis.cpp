#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <random>
#include <set>
#include <utility>

#include "regba/analysis.hpp"
#include "regba/errors.hpp"
#include "regba/lasso.hpp"
#include "regba/ops.hpp"
#include "regba/reals.hpp"
#include "regba/structure.hpp"

#include "oracles.hpp"

using namespace regba;

namespace {

Lasso zip2(const Lasso& wx, const Lasso& wy) {
    std::size_t plen = std::max(wx.prefix.size(), wy.prefix.size());
    std::size_t clen = std::lcm(wx.cycle.size(), wy.cycle.size());
    Lasso z;
    for (std::size_t i = 0; i < plen + clen; ++i) {
        Label l{};
        l.d[0] = wx.at(i)[0];
        l.d[1] = wy.at(i)[0];
        (i < plen ? z.prefix : z.cycle).push_back(l);
    }
    return z;
}

bool accepts_pair(const Automaton& a, const Rational& x, const Rational& y) {
    for (const Lasso& wx : encode_rational({x}, {3}).lassos)
        for (const Lasso& wy : encode_rational({y}, {3}).lassos)
            if (accepts_lasso(a, zip2(wx, wy))) return true;
    return false;
}

// Constant relation f(x) in {0, 1} for every x: two all-accepting components.
Automaton two_valued_relation() {
    Automaton a;
    a.radix = {3, 3};
    State lo = a.add_state("lo", true, true);
    State hi = a.add_state("hi", true, true);
    for (unsigned d = 0; d < 3; ++d) {
        a.add_transition(lo, make_label({d, 0}), lo);
        a.add_transition(hi, make_label({d, 2}), hi);
    }
    return a;
}

// Identity restricted to the Cantor set: not total on [0,1].
Automaton partial_graph() {
    Automaton a;
    a.radix = {3, 3};
    State c = a.add_state("c", true, true);
    a.add_transition(c, make_label({0, 0}), c);
    a.add_transition(c, make_label({2, 2}), c);
    return a;
}

// Step at 1/2: output digits commit to 0^omega or 2^omega while the input
// stays on the 1-digit fence, so the word closure pairs 1/2 with both values.
Automaton step_graph() {
    Automaton a;
    a.radix = {3, 3};
    State fence = a.add_state("fence", true, false);
    State lo = a.add_state("lo", false, true);
    State hi = a.add_state("hi", false, true);
    a.add_transition(fence, make_label({1, 0}), fence);
    a.add_transition(fence, make_label({1, 2}), fence);
    a.add_transition(fence, make_label({0, 0}), lo);
    a.add_transition(fence, make_label({2, 2}), hi);
    for (unsigned d = 0; d < 3; ++d) {
        a.add_transition(lo, make_label({d, 0}), lo);
        a.add_transition(hi, make_label({d, 2}), hi);
    }
    return a;
}

// Depth-k boxes certified affine for the Cantor distance function, as
// (box index, slope) pairs at resolution 3^k.  Certification reaches the
// interior of every removed middle third spanning at least five boxes but
// skips the two boxes at the gap ends and the three around the tent peak:
// their closed boxes contain a value with a second expansion, which keeps
// the subset state of the saturated presentation out of the full sink.
void tent_witness_boxes(std::uint64_t a, std::uint64_t b,
                        std::set<std::pair<std::uint64_t, int>>& out) {
    if (b - a < 3) return;
    std::uint64_t third = (b - a) / 3;
    std::uint64_t lo = a + third;
    std::uint64_t hi = a + 2 * third;
    if (hi - lo >= 5) {
        std::uint64_t peak = (lo + hi) / 2;
        for (std::uint64_t w = lo + 1; w + 1 < peak; ++w) out.insert({w, 1});
        for (std::uint64_t w = peak + 2; w + 1 < hi; ++w) out.insert({w, -1});
    }
    tent_witness_boxes(a, lo, out);
    tent_witness_boxes(hi, b, out);
}

}  // namespace

TEST_CASE("saturated presentation accepts every encoding of every value") {
    Automaton fig3 = oracle::load_corpus("fig3_cantor_dist.regba");
    Automaton sat = saturated_presentation(fig3);
    CHECK(sat.deterministic());
    CHECK(is_closed(sat));
    CHECK(trim(sat).num_states() == sat.num_states());

    // (4/9, 1/9) through the non-canonical expansion of 4/9
    Lasso crossed{{make_label({1, 0}), make_label({0, 1})}, {make_label({2, 0})}};
    CHECK(!accepts_lasso(fig3, crossed));
    CHECK(accepts_lasso(sat, crossed));

    std::mt19937 rng(41);
    for (int i = 0; i < 30; ++i) {
        unsigned den = 1 + rng() % 12;
        Rational x(rng() % (den + 1), den);
        Rational y = eval_function(fig3, x);
        for (const Lasso& wx : encode_rational({x}, {3}).lassos)
            for (const Lasso& wy : encode_rational({y}, {3}).lassos)
                CHECK(accepts_lasso(sat, zip2(wx, wy)));
    }
}

TEST_CASE("function and continuity checks on the corpus") {
    for (const char* name :
         {"fig3_cantor_dist.regba", "fig2_cantor_dist_rec.regba", "identity_graph.regba"}) {
        Automaton sat = saturated_presentation(oracle::load_corpus(name));
        FunctionCheck fc = is_function(sat);
        CHECK(fc.ok);
        CHECK(fc.failure == FunctionCheck::Failure::None);
        CHECK(is_continuous(sat));
    }
}

TEST_CASE("a two-valued relation is rejected with a semantic witness") {
    Automaton sat = saturated_presentation(two_valued_relation());
    FunctionCheck fc = is_function(sat);
    CHECK(!fc.ok);
    CHECK(fc.failure == FunctionCheck::Failure::MultiValued);
    REQUIRE(fc.counterexample.size() == 3);
    Rational x = fc.counterexample[0], y1 = fc.counterexample[1], y2 = fc.counterexample[2];
    CHECK(y1 != y2);
    CHECK(accepts_pair(sat, x, y1));
    CHECK(accepts_pair(sat, x, y2));
    CHECK(x == 0);
    CHECK(std::min(y1, y2) == 0);
    CHECK(std::max(y1, y2) == 1);
}

TEST_CASE("a partial graph is rejected as not total") {
    Automaton sat = saturated_presentation(partial_graph());
    FunctionCheck fc = is_function(sat);
    CHECK(!fc.ok);
    CHECK(fc.failure == FunctionCheck::Failure::NotTotal);
    REQUIRE(fc.counterexample.size() == 1);
    CHECK(fc.counterexample[0] == Rational(4, 9));
    CHECK_THROWS_AS(eval_function(sat, fc.counterexample[0]), EmptyFiber);
    CHECK(!is_continuous(sat));
}

TEST_CASE("a jump shows up as a multivalued closure") {
    Automaton sat = saturated_presentation(step_graph());
    FunctionCheck fc = is_function(sat);
    CHECK(!fc.ok);
    CHECK(fc.failure == FunctionCheck::Failure::MultiValued);
    REQUIRE(fc.counterexample.size() == 3);
    CHECK(fc.counterexample[0] == Rational(1, 2));
    CHECK(accepts_pair(sat, fc.counterexample[0], fc.counterexample[1]));
    CHECK(accepts_pair(sat, fc.counterexample[0], fc.counterexample[2]));
    CHECK(!is_continuous(sat));
}

TEST_CASE("closure adds exactly the boundary values") {
    // at least one nonzero and one non-2 digit: the value set is open (0,1)
    Automaton a;
    a.radix = {3};
    State start = a.add_state("start", true, false);
    State all2 = a.add_state("all2", false, false);
    State all0 = a.add_state("all0", false, false);
    State mixed = a.add_state("mixed", false, true);
    a.add_transition(start, make_label({0}), all0);
    a.add_transition(start, make_label({1}), mixed);
    a.add_transition(start, make_label({2}), all2);
    a.add_transition(all0, make_label({0}), all0);
    a.add_transition(all0, make_label({1}), mixed);
    a.add_transition(all0, make_label({2}), mixed);
    a.add_transition(all2, make_label({2}), all2);
    a.add_transition(all2, make_label({0}), mixed);
    a.add_transition(all2, make_label({1}), mixed);
    for (unsigned d = 0; d < 3; ++d) a.add_transition(mixed, make_label({d}), mixed);
    CHECK(a.deterministic());
    CHECK(is_weak(a));
    CHECK(!is_closed(a));

    CHECK(is_empty(product_intersect(a, singleton_automaton({Rational(0)}, {3}))).empty);
    CHECK(is_empty(product_intersect(a, singleton_automaton({Rational(1)}, {3}))).empty);
    Lasso third{{make_label({1})}, {make_label({0})}};
    CHECK(accepts_lasso(a, third));

    CHECK(is_universal_closed(closure(a)).universal);
}

TEST_CASE("pruning boundary sinks preserves the distance function") {
    Automaton fig3 = oracle::load_corpus("fig3_cantor_dist.regba");
    CHECK(language_equal(complete(make_full(fig3)), complete(fig3)));

    Automaton mf = make_full(saturated_presentation(fig3));
    CHECK(eval_function(mf, Rational(1, 2)) == Rational(1, 6));
    CHECK(eval_function(mf, Rational(1, 3)) == 0);
    for (const std::vector<State>& sink : sinks(mf)) {
        bool full = false;
        for (State q : sink) full |= sink_projection_full(mf, sink, q);
        CHECK(full);
    }
}

TEST_CASE("affine data of the distance function's sinks") {
    Automaton fig3 = oracle::load_corpus("fig3_cantor_dist.regba");
    State q2 = 0, q3 = 0;
    for (State q = 0; q < fig3.num_states(); ++q) {
        if (fig3.state_names[q] == "q2") q2 = q;
        if (fig3.state_names[q] == "q3") q3 = q;
    }
    AffinePiece copy = sink_affine(fig3, {q2}, q2);
    CHECK(copy.alpha == 1);
    CHECK(copy.beta == 0);
    CHECK(copy.entry == q2);
    AffinePiece flip = sink_affine(fig3, {q3}, q3);
    CHECK(flip.alpha == -1);
    CHECK(flip.beta == 1);

    Automaton crooked;
    crooked.radix = {3, 3};
    State m = crooked.add_state("m", true, true);
    crooked.add_transition(m, make_label({0, 0}), m);
    crooked.add_transition(m, make_label({1, 1}), m);
    crooked.add_transition(m, make_label({2, 2}), m);
    crooked.add_transition(m, make_label({0, 2}), m);
    CHECK_THROWS_AS(sink_affine(crooked, {m}, m), NotAffineSink);
}

TEST_CASE("witness intervals and covered measure of the distance function") {
    Automaton fig3 = oracle::load_corpus("fig3_cantor_dist.regba");
    Automaton mf = make_full(saturated_presentation(fig3));

    // Up to depth 2 every box touches a gap end or the tent peak, so
    // nothing is certified yet; the sink slopes are reported regardless.
    for (unsigned k = 0; k <= 2; ++k) {
        PiecewiseReport rep = slope_set(mf, k);
        CHECK(rep.slopes == std::vector<Rational>{-1, 1});
        CHECK(rep.witnesses.empty());
        CHECK(rep.covered_measure == 0);
    }

    // Five boxes stay uncertified in every gap spanning at least five,
    // all of a narrower gap, and the whole depth-k Cantor cover, which
    // adds up to 7*2^(k-1) - 5 uncovered boxes.
    for (unsigned k = 2; k <= 7; ++k) {
        PiecewiseReport rep = slope_set(mf, k);
        CHECK(rep.slopes == std::vector<Rational>{-1, 1});
        Rational uncovered(Int(Int(7) * pow_int(2, k - 1) - 5), pow_int(3, k));
        CHECK(rep.covered_measure == Rational(1 - uncovered));
        for (const WitnessInterval& w : rep.witnesses) {
            CHECK((w.slope == 1 || w.slope == -1));
            CHECK(w.depth <= k);
            CHECK(w.depth >= 3);
        }
    }

    PiecewiseReport three = slope_set(mf, 3);
    REQUIRE(three.witnesses.size() == 4);
    CHECK(three.witnesses[0].left == Rational(10, 27));
    CHECK(three.witnesses[0].depth == 3);
    CHECK(three.witnesses[0].slope == 1);
    CHECK(three.witnesses[1].left == Rational(11, 27));
    CHECK(three.witnesses[1].slope == 1);
    CHECK(three.witnesses[2].left == Rational(5, 9));
    CHECK(three.witnesses[2].slope == -1);
    CHECK(three.witnesses[3].left == Rational(16, 27));
    CHECK(three.witnesses[3].slope == -1);
    CHECK(three.covered_measure == Rational(4, 27));

    for (unsigned k = 4; k <= 5; ++k) {
        std::set<std::pair<std::uint64_t, int>> expect;
        tent_witness_boxes(0, pow_int(3, k).convert_to<std::uint64_t>(), expect);
        std::set<std::pair<std::uint64_t, int>> got;
        for (const WitnessInterval& w : slope_set(mf, k).witnesses) {
            if (w.depth != k) continue;
            Rational scaled(w.left * pow_int(3, k));
            REQUIRE(rat_den(scaled) == 1);
            got.insert({rat_num(scaled).convert_to<std::uint64_t>(), w.slope == 1 ? 1 : -1});
        }
        CHECK(got == expect);
    }

    // Certificates are sound: on every witness box the function agrees
    // with the affine map of the claimed slope.
    for (const WitnessInterval& w : slope_set(mf, 4).witnesses) {
        Rational step(Rational(1, pow_int(3, w.depth)) / 2);
        Rational rise(w.slope * step);
        Rational f0 = eval_function(fig3, w.left);
        CHECK(eval_function(fig3, Rational(w.left + step)) == Rational(f0 + rise));
        CHECK(eval_function(fig3, Rational(w.left + step + step)) == Rational(f0 + rise + rise));
    }

    Rational prev = 0;
    for (unsigned k = 1; k <= 7; ++k) {
        Rational cov = slope_set(mf, k).covered_measure;
        CHECK(cov >= prev);
        CHECK(cov <= 1);
        prev = cov;
    }

    // The identity misses only the two outermost boxes at each depth,
    // where the prefix still hugs an endpoint of [0, 1].
    Automaton ident = make_full(saturated_presentation(oracle::load_corpus("identity_graph.regba")));
    PiecewiseReport flat = slope_set(ident, 3);
    CHECK(flat.slopes == std::vector<Rational>{1});
    CHECK(flat.covered_measure == Rational(25, 27));
    REQUIRE(flat.witnesses.size() == 33);
    for (const WitnessInterval& w : flat.witnesses) {
        CHECK(w.slope == 1);
        Rational scaled(w.left * pow_int(3, w.depth));
        CHECK(rat_den(scaled) == 1);
        CHECK(rat_num(scaled) >= 1);
        CHECK(rat_num(scaled) <= Int(pow_int(3, w.depth) - 2));
    }
}

TEST_CASE("differentiability through the midpoint identity") {
    Automaton fig3 = oracle::load_corpus("fig3_cantor_dist.regba");
    DifferentiabilityResult dr = is_differentiable(saturated_presentation(fig3));
    CHECK(!dr.differentiable);
    REQUIRE(dr.counterexample.has_value());
    auto [x, y] = *dr.counterexample;
    Rational mid((x + y) / 2);
    Rational lhs = eval_function(fig3, mid);
    Rational rhs((eval_function(fig3, x) + eval_function(fig3, y)) / 2);
    CHECK(lhs != rhs);

    CHECK(is_differentiable(saturated_presentation(oracle::load_corpus("identity_graph.regba")))
              .differentiable);
    CHECK(is_differentiable(saturated_presentation(affine_graph_automaton(-1, 1, 3)))
              .differentiable);
    CHECK(is_differentiable(
              saturated_presentation(affine_graph_automaton(Rational(1, 2), Rational(1, 4), 3)))
              .differentiable);
}

TEST_CASE("sum form residuals shrink with the witness depth") {
    Automaton mf = make_full(saturated_presentation(oracle::load_corpus("fig3_cantor_dist.regba")));
    Rational bound = Rational(Int(1) << 9, pow_int(3, 9));  // (2/3)^9

    // Gaps on either side of t contribute rise and fall in equal measure,
    // so residuals vanish at points of the Cantor set.  At t = 1/2 the
    // certified slope-1 length below t misses the box hugging 1/3, the box
    // beside the peak box, and half of the peak box itself.
    CHECK(sum_form_check(mf, Rational(1, 4), 10) == 0);
    CHECK(sum_form_check(mf, Rational(1, 2), 10) == Rational(5, 118098));
    CHECK(sum_form_check(mf, Rational(3, 4), 10) == 0);
    CHECK(sum_form_check(mf, 1, 10) == 0);
    for (const Rational& t : {Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)})
        CHECK(sum_form_check(mf, t, 10) <= bound);

    CHECK(sum_form_check(mf, Rational(1, 2), 4) == Rational(5, 162));
    CHECK(sum_form_check(mf, Rational(1, 2), 4) > sum_form_check(mf, Rational(1, 2), 10));

    // For the identity the witness union is [3^-n, 1 - 3^-n], so the
    // residual counts the uncertified outermost boxes below t.
    Automaton ident = make_full(saturated_presentation(oracle::load_corpus("identity_graph.regba")));
    CHECK(sum_form_check(ident, Rational(1, 3), 5) == Rational(1, 243));
    CHECK(sum_form_check(ident, Rational(1, 2), 5) == Rational(1, 243));
    CHECK(sum_form_check(ident, 1, 5) == Rational(2, 243));
}
