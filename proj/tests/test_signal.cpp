#include "doctest.h"

#include "tcirc/signal.hpp"

#include <random>

using namespace tcirc;

namespace {

Interval iv(long long a, long long b) { return Interval::closed(Time(a), Time(b)); }

Signal rand_signal(std::mt19937_64& rng, const Interval& dom, int max_flips = 8) {
    std::uniform_int_distribution<int> nflip(0, max_flips);
    std::uniform_int_distribution<long long> num(1, 199);
    const int n = nflip(rng);
    std::vector<Time> ts;
    const Time span = dom.hi() - dom.lo();
    for (int i = 0; i < n; ++i)
        ts.push_back(dom.lo() + span.scaled(Rat(num(rng), 200)));
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    return Signal(dom, rng() & 1, std::move(ts));
}

}  // namespace

TEST_CASE("value_at follows the right-continuous convention") {
    const Signal s(iv(0, 5), false, {Time(1), Time(2)});
    CHECK(s.value_at(Time(Rat(3, 2))) == true);
    CHECK(s.value_at(Time(1)) == true);  // right-continuous at a transition
    CHECK(s.value_at(Time(5)) == false);
    CHECK(s.value_at(Time(0)) == false);
    CHECK(s.value_before(Time(1)) == false);
    CHECK_THROWS_AS(s.value_at(Time(6)), DomainError);
}

TEST_CASE("transition at the domain start is absorbed") {
    const Signal s(iv(0, 4), false, {Time(0), Time(1)});
    CHECK(s.initial() == true);
    CHECK(s.transitions().size() == 1);
    CHECK(s.value_at(Time(0)) == true);
}

TEST_CASE("restrict") {
    const Signal zero = Signal::constant(Interval::all(), false);
    const Signal r = zero.restrict(iv(0, 1));
    CHECK(r.domain() == iv(0, 1));
    CHECK(r.initial() == false);
    CHECK(r.transitions().empty());

    const Signal s(iv(0, 4), false, {Time(1), Time(2), Time(3)});
    const Signal t = s.restrict(Interval::closed(Time(Rat(3, 2)), Time(4)));
    CHECK(t.initial() == true);  // value carried in
    REQUIRE(t.transitions().size() == 2);
    CHECK(t.transitions()[0] == Time(2));
    CHECK(t.transitions()[1] == Time(3));

    CHECK(s.restrict(s.domain()).identical(s));
    CHECK_THROWS_AS(s.restrict(iv(0, 9)), DomainError);
}

TEST_CASE("restriction is idempotent on random signals") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 500; ++i) {
        const Signal s = rand_signal(rng, iv(0, 10));
        std::uniform_int_distribution<long long> cut(0, 200);
        Time a = Time(Rat(cut(rng), 20)), b = Time(Rat(cut(rng), 20));
        if (b < a)
            std::swap(a, b);
        const Interval I = Interval::closed(a, b);
        std::uniform_int_distribution<long long> cut2(0, 200);
        Time c = a + (b - a).scaled(Rat(cut2(rng), 200)), d = a + (b - a).scaled(Rat(cut2(rng), 200));
        if (d < c)
            std::swap(c, d);
        const Interval J = Interval::closed(c, d);
        CHECK(s.restrict(I).restrict(J).identical(s.restrict(J)));
        for (int k = 0; k <= 10; ++k) {
            const Time p = c + (d - c).scaled(Rat(k, 10));
            CHECK(s.restrict(I).value_at(p) == s.value_at(p));
        }
    }
}

TEST_CASE("transition count equals brute-force change counting") {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 200; ++i) {
        const Signal s = rand_signal(rng, iv(0, 10));
        // sample grid of step 1/200 plus announced transition points
        size_t changes = 0;
        bool prev = s.value_at(Time(0));
        std::vector<Time> grid;
        for (int k = 1; k <= 2000; ++k)
            grid.push_back(Time(Rat(k, 200)));
        for (const Time& t : s.transitions())
            grid.push_back(t);
        std::sort(grid.begin(), grid.end());
        grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
        for (const Time& g : grid) {
            const bool v = s.value_at(g);
            if (v != prev)
                ++changes;
            prev = v;
        }
        CHECK(changes == s.transition_count(iv(0, 10)));
    }
}

TEST_CASE("equal_on and modulo-isolated comparison") {
    const Signal a(iv(0, 4), false, {Time(2), Time(3)});
    CHECK(equal_on(a, a, iv(0, 4), false));
    CHECK(!equal_on(Signal::constant(iv(0, 1), false), Signal::constant(iv(0, 1), true), iv(0, 1),
                    true));
    // difference confined to the closed upper endpoint
    const Signal b(iv(0, 4), false, {Time(2), Time(3), Time(4)});
    CHECK(!equal_on(a, b, iv(0, 4), false));
    CHECK(equal_on(a, b, iv(0, 4), true));
    // any interior difference has positive length
    const Signal c(iv(0, 4), false, {Time(2), Time(Rat(13, 4))});
    CHECK(!equal_on(a, c, iv(0, 4), true));
    REQUIRE(first_difference(a, c, iv(0, 4), true).has_value());
    CHECK(*first_difference(a, c, iv(0, 4), true) == Time(3));
}

TEST_CASE("boolean combinations") {
    const Signal x(iv(0, 4), false, {Time(1), Time(3)});
    const Signal one = Signal::constant(iv(0, 4), true);
    CHECK(sig_and(one, x).identical(x));  // unit element
    CHECK(sig_not(Signal::constant(iv(0, 4), false)).identical(one));
    const Signal y(iv(0, 4), false, {Time(2)});
    const Signal o = sig_or(x, y);
    CHECK(o.value_at(Time(Rat(3, 2))) == true);
    CHECK(o.value_at(Time(Rat(7, 2))) == true);
    CHECK(o.value_at(Time(Rat(1, 2))) == false);
    CHECK(o.transitions().size() == 1);
}

TEST_CASE("coverings and limits") {
    std::vector<Execution> chain;
    for (int i = 1; i <= 100; ++i) {
        Execution e;
        e.interval = iv(-i, i);
        e.ports.emplace("OUT", Signal::constant(e.interval, false));
        chain.push_back(std::move(e));
    }
    const Execution lim = limit_of_covering(chain, Closure::Constant);
    CHECK(lim.interval == iv(-100, 100));
    CHECK(lim.complete);
    CHECK(lim.at("OUT").transitions().empty());

    const Execution single = limit_of_covering(std::span(&chain[4], 1), Closure::None);
    CHECK(single.interval == chain[4].interval);
    CHECK(!single.complete);

    // disagreement on the shared interval is a covering error
    std::vector<Execution> bad;
    bad.push_back(chain[0]);
    Execution e2;
    e2.interval = iv(-2, 2);
    e2.ports.emplace("OUT", Signal(e2.interval, false, {Time(Rat(1, 2))}));
    bad.push_back(std::move(e2));
    CHECK_THROWS_AS(limit_of_covering(bad, Closure::None), CoveringError);

    // not nested
    std::vector<Execution> notnested{chain[2], chain[0]};
    CHECK_THROWS_AS(limit_of_covering(notnested, Closure::None), CoveringError);
}
