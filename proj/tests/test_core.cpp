#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "regba/automaton.hpp"
#include "regba/errors.hpp"
#include "regba/io.hpp"
#include "regba/lasso.hpp"
#include "regba/structure.hpp"

#include "oracles.hpp"

using namespace regba;

namespace {

State state_id(const Automaton& a, const std::string& name) {
    for (State q = 0; q < a.num_states(); ++q)
        if (a.state_names[q] == name) return q;
    throw UnknownState(name);
}

}  // namespace

TEST_CASE("labels pack and unpack in mixed radix") {
    Automaton a;
    a.radix = {4, 2, 2};
    a.add_state("p", true, true);
    CHECK(a.alphabet_size() == 16);

    Label l = make_label({3, 1, 0});
    CHECK(l[0] == 3);
    CHECK(l[1] == 1);
    CHECK(l[2] == 0);
    CHECK(a.pack(l) == 14);
    CHECK(a.unpack(14) == l);
    for (Symbol s = 0; s < a.alphabet_size(); ++s) CHECK(a.pack(a.unpack(s)) == s);
}

TEST_CASE("validate reports structural defects") {
    Automaton ok;
    ok.radix = {3};
    State p = ok.add_state("p", true, true);
    ok.add_transition(p, make_label({0}), p);
    CHECK(validate(ok).empty());

    SUBCASE("no initial state") {
        Automaton a;
        a.radix = {3};
        a.add_state("p", false, true);
        CHECK(!validate(a).empty());
    }
    SUBCASE("duplicate state names") {
        Automaton a = ok;
        a.add_state("p", false, false);
        CHECK(!validate(a).empty());
    }
    SUBCASE("digit outside the radix") {
        Automaton a = ok;
        a.add_transition(p, make_label({5}), p);
        CHECK(!validate(a).empty());
    }
    SUBCASE("digit beyond the arity") {
        Automaton a = ok;
        Label l;
        l[3] = 1;
        a.transitions.push_back({p, l, p});
        CHECK(!validate(a).empty());
    }
    SUBCASE("transition endpoint out of range") {
        Automaton a = ok;
        a.transitions.push_back({p, make_label({0}), 7});
        CHECK(!validate(a).empty());
    }
    SUBCASE("radix entries outside 2..64") {
        Automaton a;
        a.radix = {1};
        a.add_state("p", true, true);
        CHECK(!validate(a).empty());
        a.radix = {65};
        CHECK(!validate(a).empty());
    }
    SUBCASE("arity above eight") {
        Automaton a;
        a.radix.assign(9, 2);
        a.add_state("p", true, true);
        CHECK(!validate(a).empty());
    }
    SUBCASE("require_valid throws") {
        Automaton a;
        a.radix = {3};
        a.add_state("p", false, true);
        CHECK_THROWS_AS(require_valid(a), InvalidAutomaton);
    }
}

TEST_CASE("fresh_name avoids existing state names") {
    Automaton a;
    a.radix = {2};
    a.add_state("sink", true, true);
    std::string name = fresh_name(a, "sink");
    CHECK(std::find(a.state_names.begin(), a.state_names.end(), name) == a.state_names.end());
}

TEST_CASE("corpus files parse with the transcribed shapes") {
    Automaton fig3 = oracle::load_corpus("fig3_cantor_dist.regba");
    CHECK(fig3.num_states() == 4);
    CHECK(fig3.transitions.size() == 12);
    CHECK(fig3.radix == std::vector<unsigned>{3, 3});
    CHECK(fig3.deterministic());
    CHECK(validate(fig3).empty());

    Automaton fig2 = oracle::load_corpus("fig2_cantor_dist_rec.regba");
    CHECK(fig2.num_states() == 5);
    CHECK(fig2.transitions.size() == 16);

    Automaton fig4 = oracle::load_corpus("fig4_hilbert.regba");
    CHECK(fig4.num_states() == 4);
    CHECK(fig4.transitions.size() == 16);
    CHECK(fig4.radix == std::vector<unsigned>{4, 2, 2});

    Automaton cantor = oracle::load_corpus("cantor_set.regba");
    CHECK(cantor.num_states() == 1);
    CHECK(cantor.transitions.size() == 2);

    for (const char* name : {"fig3_cantor_dist.regba", "fig2_cantor_dist_rec.regba",
                             "fig4_hilbert.regba", "cantor_set.regba", "identity_graph.regba"}) {
        Automaton a = oracle::load_corpus(name);
        CHECK(validate(a).empty());
        Automaton t = trim(a);
        CHECK(t.num_states() == a.num_states());
        CHECK(is_closed(a));
        CHECK(is_weak(a));
    }
}

TEST_CASE("serialization round-trips and normalizes deterministically") {
    for (const char* name : {"fig3_cantor_dist.regba", "fig2_cantor_dist_rec.regba",
                             "fig4_hilbert.regba", "cantor_set.regba", "identity_graph.regba"}) {
        Automaton a = oracle::load_corpus(name);
        std::string once = serialize_automaton(a);
        Automaton b = parse_automaton_string(once);
        CHECK(serialize_automaton(b) == once);
        CHECK(b.num_states() == a.num_states());
        CHECK(b.transitions.size() == a.transitions.size());
        std::set<std::string> names_a(a.state_names.begin(), a.state_names.end());
        std::set<std::string> names_b(b.state_names.begin(), b.state_names.end());
        CHECK(names_a == names_b);
    }
}

TEST_CASE("parser reports offending lines") {
    auto line_of = [](const std::string& text) -> std::size_t {
        try {
            parse_automaton_string(text);
        } catch (const ParseError& e) {
            return e.line;
        }
        return 0;
    };
    CHECK(line_of("states a\ninitial a\naccepting a\ntrans a (0) a\n") == 4);
    CHECK(line_of("radix 3\nradix 3\n") == 2);
    CHECK(line_of("radix 3\nstates a\ninitial a\ntrans a (0) b\n") == 4);
    CHECK(line_of("radix 3 3\nstates a\ninitial a\naccepting a\ntrans a (0) a\n") == 5);
    CHECK(line_of("radix 3\nstates a\nbogus a\n") == 3);
    CHECK_THROWS_AS(parse_automaton_string("radix 3\n"), ParseError);
}

TEST_CASE("scc decomposition of the distance-graph automaton") {
    Automaton fig3 = oracle::load_corpus("fig3_cantor_dist.regba");
    SccDecomposition d = scc(fig3);
    CHECK(d.component_count == 4);
    for (State q = 0; q < 4; ++q) CHECK(d.nontrivial[d.component[q]]);

    State q0 = state_id(fig3, "q0"), q1 = state_id(fig3, "q1");
    State q2 = state_id(fig3, "q2"), q3 = state_id(fig3, "q3");
    auto pos = [&](State q) {
        return std::find(d.topo_order.begin(), d.topo_order.end(), d.component[q]) -
               d.topo_order.begin();
    };
    CHECK(pos(q0) < pos(q1));
    CHECK(pos(q1) < pos(q2));
    CHECK(pos(q1) < pos(q3));

    std::vector<std::vector<State>> s = sinks(fig3);
    REQUIRE(s.size() == 2);
    std::set<std::string> sink_names;
    for (const auto& comp : s)
        for (State q : comp) sink_names.insert(fig3.state_names[q]);
    CHECK(sink_names == std::set<std::string>{"q2", "q3"});
}

TEST_CASE("scc marks acyclic components trivial") {
    Automaton a;
    a.radix = {2};
    State p = a.add_state("p", true, true);
    State q = a.add_state("q", false, true);
    a.add_transition(p, make_label({0}), q);
    SccDecomposition d = scc(a);
    CHECK(d.component_count == 2);
    CHECK(!d.nontrivial[d.component[p]]);
    CHECK(!d.nontrivial[d.component[q]]);
}

TEST_CASE("weak and closed classification") {
    Automaton mixed;
    mixed.radix = {2};
    State p = mixed.add_state("p", true, true);
    State q = mixed.add_state("q", false, false);
    mixed.add_transition(p, make_label({0}), q);
    mixed.add_transition(q, make_label({0}), p);
    CHECK(!is_weak(mixed));

    Automaton open_cycle;
    open_cycle.radix = {2};
    State a = open_cycle.add_state("a", true, true);
    State b = open_cycle.add_state("b", false, false);
    open_cycle.add_transition(a, make_label({0}), b);
    open_cycle.add_transition(b, make_label({0}), b);
    CHECK(is_weak(open_cycle));
    CHECK(!is_closed(open_cycle));
}

TEST_CASE("trim keeps exactly the useful states") {
    Automaton a;
    a.radix = {2};
    State init = a.add_state("init", true, false);
    State good = a.add_state("good", false, true);
    State dead = a.add_state("dead", false, false);
    a.add_state("unreachable", false, true);
    a.add_transition(init, make_label({0}), good);
    a.add_transition(good, make_label({0}), good);
    a.add_transition(init, make_label({1}), dead);

    Automaton t = trim(a);
    CHECK(t.num_states() == 2);
    std::set<std::string> names(t.state_names.begin(), t.state_names.end());
    CHECK(names == std::set<std::string>{"init", "good"});

    Automaton hopeless;
    hopeless.radix = {2};
    hopeless.add_state("p", true, false);
    CHECK(!try_trim(hopeless).has_value());
    CHECK_THROWS_AS(trim(hopeless), EmptyLanguage);
}

TEST_CASE("closure accepts everywhere and completion adds one reject sink") {
    Automaton cantor = oracle::load_corpus("cantor_set.regba");
    Automaton closed = closure(cantor);
    for (State q = 0; q < closed.num_states(); ++q) CHECK(closed.accepting[q]);
    CHECK(closed.transitions.size() == cantor.transitions.size());

    Automaton full = complete(cantor);
    CHECK(full.complete());
    CHECK(full.num_states() == 2);
    CHECK(full.transitions.size() == 6);
    State sink = state_id(full, "sink");
    CHECK(!full.accepting[sink]);
    CHECK(complete(full).num_states() == full.num_states());
}

TEST_CASE("productive states require reachable cycles") {
    Automaton a;
    a.radix = {2};
    State p = a.add_state("p", true, true);
    State q = a.add_state("q", false, true);
    a.add_transition(p, make_label({0}), q);
    std::vector<bool> alive = productive_states(a);
    CHECK(!alive[p]);
    CHECK(!alive[q]);

    a.add_transition(q, make_label({1}), q);
    alive = productive_states(a);
    CHECK(alive[p]);
    CHECK(alive[q]);
}

TEST_CASE("path label counting") {
    Automaton ident = oracle::load_corpus("identity_graph.regba");
    State s = state_id(ident, "s");
    CHECK(path_label_count(ident, s, s, 0) == 1);
    CHECK(path_label_count(ident, s, s, 3) == 27);

    Automaton fig3 = oracle::load_corpus("fig3_cantor_dist.regba");
    State q0 = state_id(fig3, "q0"), q2 = state_id(fig3, "q2");
    CHECK(path_label_count(fig3, q0, q2, 0) == 0);
    CHECK(path_label_count(fig3, q0, q2, 2) == 1);
    CHECK_THROWS_AS(path_label_count(fig3, q0, q2, 9), ResourceCap);
}

TEST_CASE("lasso membership on the distance graph") {
    Automaton fig3 = oracle::load_corpus("fig3_cantor_dist.regba");

    Lasso into_equal{{make_label({1, 0})}, {make_label({0, 0})}};
    CHECK(accepts_lasso(fig3, into_equal));

    Lasso half{{make_label({1, 0})}, {make_label({1, 1})}};
    CHECK(accepts_lasso(fig3, half));

    Lasso bad{{}, {make_label({1, 1})}};
    CHECK(!accepts_lasso(fig3, bad));

    Lasso wrong_value{{make_label({1, 1})}, {make_label({0, 1})}};
    CHECK(!accepts_lasso(fig3, wrong_value));
}

TEST_CASE("lasso membership agrees with the relation-composition oracle") {
    std::mt19937 rng(20260816);
    for (const char* name : {"fig3_cantor_dist.regba", "cantor_set.regba", "fig4_hilbert.regba"}) {
        Automaton a = oracle::load_corpus(name);
        for (int i = 0; i < 200; ++i) {
            Lasso w = oracle::random_lasso(rng, a.radix);
            CHECK(accepts_lasso(a, w) == oracle::lasso_in(a, w));
        }
    }
}

TEST_CASE("lasso normalization is canonical") {
    Label a = make_label({0}), b = make_label({1});

    Lasso doubled{{}, {a, a}};
    CHECK(normalize_lasso(doubled).cycle == std::vector<Label>{a});

    Lasso rotated{{b}, {a, b}};
    Lasso plain{{}, {b, a}};
    CHECK(normalize_lasso(rotated) == normalize_lasso(plain));

    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        Lasso w = oracle::random_lasso(rng, {3});
        Lasso n = normalize_lasso(w);
        CHECK(expand_lasso(w, 24) == expand_lasso(n, 24));
        CHECK(normalize_lasso(n) == n);

        Lasso pumped = w;
        pumped.prefix.push_back(w.cycle.front());
        std::rotate(pumped.cycle.begin(), pumped.cycle.begin() + 1, pumped.cycle.end());
        CHECK(normalize_lasso(pumped) == n);
    }
}

TEST_CASE("lasso formatting") {
    Lasso w{{make_label({1, 0})}, {make_label({0, 0})}};
    CHECK(format_lasso(w, 2) == "1(0),0(0)");
}
