#include "doctest.h"

#include "tcirc/modules.hpp"

#include <random>

using namespace tcirc;

namespace {

Interval iv(long long a, long long b) { return Interval::closed(Time(a), Time(b)); }

Signal rand_signal(std::mt19937_64& rng, const Interval& dom, int max_flips = 8) {
    std::uniform_int_distribution<int> nflip(0, max_flips);
    std::uniform_int_distribution<long long> num(1, 399);
    const int n = nflip(rng);
    std::vector<Time> ts;
    const Time span = dom.hi() - dom.lo();
    for (int i = 0; i < n; ++i)
        ts.push_back(dom.lo() + span.scaled(Rat(num(rng), 400)));
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    return Signal(dom, rng() & 1, std::move(ts));
}

const Strategy kMin(1, Policy::Minimal);
const Strategy kMax(2, Policy::Maximal);

}  // namespace

TEST_CASE("pure channel reproduces input transitions d later") {
    const Interval I = iv(-2, 6);
    const Signal in(I, false, {Time(0), Time(1), Time(2), Time(3)});
    const Signal out = channel_generate(ChannelParams::pure(Time(1)), in, kMin, I);
    REQUIRE(out.transitions().size() == 4);
    CHECK(out.transitions() == std::vector<Time>{Time(1), Time(2), Time(3), Time(4)});
    CHECK(out.initial() == false);
    CHECK(channel_check(ChannelParams::pure(Time(1)), in, out, I).feasible);
}

TEST_CASE("bounded channel extremal policies") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        const Interval I = iv(0, 10);
        const Signal in = rand_signal(rng, I);
        const ChannelParams p = ChannelParams::bounded(Time(1));
        const Signal id_out = channel_generate(p, in, kMin, I);
        CHECK(id_out.identical(in));  // minimal policy: delta(t) = t
        const Signal max_out = channel_generate(p, in, kMax, I);
        const Signal pure_out = channel_generate(ChannelParams::pure(Time(1)), in, kMax, I);
        CHECK(max_out.identical(pure_out));  // maximal policy: pure delay d
        CHECK(channel_check(p, in, id_out, I).feasible);
        CHECK(channel_check(p, in, max_out, I).feasible);
    }
}

TEST_CASE("bounded channel check accepts and refutes") {
    const Interval I = iv(0, 10);
    const Signal in(I, false, {Time(2), Time(5)});
    // out = in: zero delay is allowed
    CHECK(channel_check(ChannelParams::bounded(Time(1)), in, in, I).feasible);
    // an output transition with no input within the delay bound
    const Signal bad(I, false, {Time(2), Time(4)});
    const Verdict v = channel_check(ChannelParams::bounded(Time(1)), in, bad, I);
    CHECK(!v.feasible);
    // settled-input level violation: input constant 0, output goes high
    const Signal in0 = Signal::constant(I, false);
    const Signal high(I, false, {Time(4), Time(5)});
    CHECK(!channel_check(ChannelParams::bounded(Time(1)), in0, high, I).feasible);
    CHECK(!channel_check(ChannelParams::pure(Time(1)), in0, Signal::constant(I, true), I).feasible);
    // but within the first d, anything is justified by pre-history
    const Signal early(I, true, {Time(Rat(1, 2))});
    CHECK(channel_check(ChannelParams::bounded(Time(1)), in0, early, I).feasible);
}

TEST_CASE("channel boundary slack uses recorded context when present") {
    // Channel correct overall, judged on a window whose input context is
    // recorded: infeasible output wiggles inside the window are caught.
    const Interval D = iv(0, 8);
    const Signal in(D, false, {Time(1)});
    // expected pure-d=1 output: rise at 2. Wiggles on [5,6] are unjustified.
    const Signal out(D, false, {Time(2), Time(5), Time(Rat(11, 2)), Time(6)});
    const Verdict v = channel_check(ChannelParams::pure(Time(1)), in, out, iv(5, 6));
    CHECK(!v.feasible);
    CHECK(v.witness->at == Time(5));
    // the same window with no context (domain starts at 5) is extendible
    const Interval W = iv(5, 6);
    CHECK(channel_check(ChannelParams::pure(Time(1)), in.restrict(W), out.restrict(W), W).feasible);
}

TEST_CASE("inertial channel suppresses short pulses") {
    const Interval I = iv(0, 10);
    // pulse of width 1/2 at time 0, threshold 1, d = 0: suppressed entirely
    const Signal pulse(I, true, {Time(Rat(1, 2))});
    const Signal out =
        channel_generate(ChannelParams::inertial(Time(0), Time(1)), pulse, kMin, I);
    CHECK(out.identical(Signal::constant(I, false)));
    // no output run shorter than the threshold, fuzzed
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const Signal in = rand_signal(rng, I, 12);
        const Signal o = channel_generate(ChannelParams::inertial(Time(1), Time(1)), in, kMin, I);
        const auto rs = o.runs(I);
        for (size_t k = 0; k + 1 < rs.size(); ++k)
            CHECK(rs[k].end - rs[k].begin >= Time(1));
    }
}

TEST_CASE("gate evaluation") {
    const Interval I = iv(0, 4);
    const Signal x(I, false, {Time(1), Time(3)});
    const Signal en = Signal::constant(I, true);
    const Signal sigs_and[] = {en, x};
    CHECK(gate_eval(GateKind::And, sigs_and)[0].identical(x));
    const Signal zero = Signal::constant(I, false);
    const Signal sigs_not[] = {zero};
    CHECK(gate_eval(GateKind::Not, sigs_not)[0].identical(Signal::constant(I, true)));
    const Signal sigs_maj[] = {en, en, zero};
    CHECK(gate_eval(GateKind::Maj3, sigs_maj)[0].identical(en));
    const Signal sigs_add[] = {en, x};
    const auto add = gate_eval(GateKind::Add1, sigs_add);
    CHECK(add[0].identical(sig_not(x)));  // sum = a xor b with a = 1
    CHECK(add[1].identical(x));           // carry = a and b
    CHECK(gate_check(GateKind::And, sigs_and, std::vector<Signal>{x}, I).feasible);
    CHECK(!gate_check(GateKind::And, sigs_and, std::vector<Signal>{zero}, I).feasible);
}

namespace {

// Independent oracle for the Mem predicate: evaluates "Y(t)=1 iff there is a
// trigger instant (Y=0 and X=1) within (t-T, t)" forward on a fine grid.
std::vector<std::pair<Time, bool>> mem_grid_oracle(const Signal& x, const Time& T,
                                                   const Interval& I, int steps_per_unit) {
    std::vector<std::pair<Time, bool>> out;
    std::vector<Time> triggers;
    const Time step = Time(Rat(1, steps_per_unit));
    for (Time t = I.lo(); t <= I.hi(); t += step) {
        bool y = false;
        for (const Time& tr : triggers)
            if (tr > t - T && tr < t)
                y = true;
        // grid refinement: a trigger at exactly t counts for later instants
        if (!y && x.value_at(t))
            triggers.push_back(t);
        out.emplace_back(t, y || (!triggers.empty() && triggers.back() == t));
    }
    return out;
}

}  // namespace

TEST_CASE("mem generator matches the defining predicate on a grid") {
    const Interval I = iv(0, 6);
    const MemParams p{Time(Rat(3, 2))};
    // X = pulse [0, 1/5), no prior triggers: Y high exactly on [0, 3/2)
    const Signal x(I, true, {Time(Rat(1, 5))});
    const Signal y = mem_generate(p, x, MemBoundary::clean(), I);
    CHECK(y.initial() == true);
    REQUIRE(y.transitions().size() == 1);
    CHECK(y.transitions()[0] == Time(Rat(3, 2)));

    const auto grid = mem_grid_oracle(x, p.T, I, 20);
    size_t disagreements = 0;
    for (const auto& [t, v] : grid)
        if (y.value_at(t) != v)
            ++disagreements;
    CHECK(disagreements <= 2);  // isolated trigger instants only

    // X constant 0: no trigger ever
    CHECK(mem_generate(p, Signal::constant(I, false), MemBoundary::clean(), I)
              .identical(Signal::constant(I, false)));
}

TEST_CASE("mem steady state: high 3/2, low 1, period 5/2") {
    const Interval I = iv(0, 10);
    const MemParams p{Time(Rat(3, 2))};
    // X = not(Y delayed by 1) of the steady pattern: X high on [z*5/2, z*5/2+1)
    std::vector<Time> xt;
    for (int z = 0; z * 5 <= 20; ++z) {
        if (z > 0)
            xt.push_back(Time(Rat(5 * z, 2)));
        xt.push_back(Time(Rat(5 * z + 2, 2)));
    }
    std::sort(xt.begin(), xt.end());
    const Signal x(I, true, xt);
    const Signal y = mem_generate(p, x, MemBoundary::clean(), I);
    const auto rs = y.runs(I);
    for (size_t i = 0; i + 1 < rs.size(); ++i) {
        if (rs[i].value)
            CHECK(rs[i].end - rs[i].begin == Time(Rat(3, 2)));
        else
            CHECK(rs[i].end - rs[i].begin == Time(1));
    }
    CHECK(mem_check(p, x, y, I).feasible);
}

TEST_CASE("mem checker accepts generated outputs and refutes unjustified highs") {
    const Interval I = iv(0, 10);
    const MemParams p{Time(Rat(3, 2))};
    std::mt19937_64 rng(23);
    for (int i = 0; i < 300; ++i) {
        const Signal x = rand_signal(rng, I);
        MemBoundary b;
        if (rng() & 1)
            b = MemBoundary::adversarial(p, Strategy(rng()), Time(0), "b");
        const Signal y = mem_generate(p, x, b, I);
        const Verdict v = mem_check(p, x, y, I);
        INFO("x init=", x.initial(), " flips=", x.transitions().size());
        CHECK(v.feasible);
    }
    // rise without trigger beyond boundary slack
    const Signal x0 = Signal::constant(I, false);
    const Signal ghost(I, false, {Time(5), Time(6)});
    const Verdict v = mem_check(p, x0, ghost, I);
    CHECK(!v.feasible);
    CHECK(v.witness->at == Time(5));
    // fully justified by pre-history: short intervals accept anything sane
    const Interval W = Interval::closed(Time(0), Time(1));
    CHECK(mem_check(p, Signal::constant(W, false), Signal(W, true, {Time(Rat(1, 2))}), W).feasible);
}

TEST_CASE("sources") {
    const Interval I = iv(0, 10);
    SourceParams c;
    c.kind = SourceKind::Constant;
    c.value = true;
    CHECK(source_generate(c, kMin, I).identical(Signal::constant(I, true)));

    SourceParams pu;
    pu.kind = SourceKind::SinglePulse;
    pu.t0 = Time(0);
    pu.width = Time(Rat(1, 2));
    const Signal pulse = source_generate(pu, kMin, I);
    CHECK(pulse.initial() == true);
    REQUIRE(pulse.transitions().size() == 1);
    CHECK(pulse.transitions()[0] == Time(Rat(1, 2)));

    SourceParams rp;
    rp.kind = SourceKind::RandomPulse;
    rp.t0 = Time(1);
    rp.width_min = Time(Rat(1, 10));
    rp.width_max = Time(1);
    const Signal a = source_generate(rp, Strategy(7), I);
    const Signal b = source_generate(rp, Strategy(7), I);
    CHECK(a.identical(b));  // replayable
    CHECK(source_check(rp, a, I).feasible);
    const Signal wide(I, false, {Time(1), Time(9)});
    CHECK(!source_check(rp, wide, I).feasible);
}

TEST_CASE("osc spec check") {
    const Time T(Rat(3, 2)), d(1);
    // periodic high-T/low-d train with delta = 0
    const Interval I = iv(0, 10);
    std::vector<Time> ts;
    for (int z = 0; z * 5 <= 20; ++z) {
        if (z > 0)
            ts.push_back(Time(Rat(5 * z, 2)));
        ts.push_back(Time(Rat(5 * z, 2)) + T);
    }
    std::sort(ts.begin(), ts.end());
    const Signal train(I, true, ts);
    const OscFit fit = osc_spec_check(train, T, d, I);
    CHECK(fit.verdict.feasible);
    REQUIRE(fit.delta.has_value());
    CHECK(*fit.delta == Time(0));

    // constant 0 is infeasible on any span longer than d
    CHECK(!osc_spec_check(Signal::constant(I, false), T, d, I).verdict.feasible);
    CHECK(osc_spec_check(Signal::constant(iv(0, 1), false), T, d, iv(0, 1)).verdict.feasible);

    // shifted pattern fits with its offset
    const Signal shifted_train = train.shifted(Time(Rat(3, 10)));
    const Interval J = Interval::closed(Time(Rat(3, 10)), Time(Rat(103, 10)));
    const OscFit fit2 = osc_spec_check(shifted_train, T, d, J);
    CHECK(fit2.verdict.feasible);
    CHECK(*fit2.delta == Time(Rat(3, 10)));

    // a run longer than T cannot fit any offset
    const Signal wide(I, false, {Time(1), Time(4)});
    CHECK(!osc_spec_check(wide, T, d, I).verdict.feasible);
}

TEST_CASE("osc feasibility is subset-closed") {
    const Time T(Rat(3, 2)), d(1);
    const Interval I = iv(0, 20);
    std::mt19937_64 rng(31);
    for (int i = 0; i < 200; ++i) {
        std::uniform_int_distribution<long long> num(0, 400);
        Time a = Time(Rat(num(rng), 20)), b = Time(Rat(num(rng), 20));
        if (b < a)
            std::swap(a, b);
        const Signal y = rand_signal(rng, I, 10);
        const Interval J = Interval::closed(a, b);
        if (osc_spec_check(y, T, d, I).verdict.feasible) {
            INFO("sub-interval ", J.str());
            CHECK(osc_spec_check(y, T, d, J).verdict.feasible);
        }
    }
}

TEST_CASE("wm spec check") {
    const Interval I = iv(-5, 5);
    CHECK(wm_spec_check(Signal::constant(I, false), I, false).feasible);
    CHECK(!wm_spec_check(Signal::constant(I, false), I, true).feasible);
    CHECK(wm_spec_check(Signal(iv(0, 10), false, {Time(3)}), iv(0, 10), false).feasible);
    CHECK(wm_spec_check(Signal(iv(0, 10), false, {Time(3)}), iv(0, 10), true).feasible);
    CHECK(!wm_spec_check(Signal(iv(0, 10), false, {Time(3), Time(4)}), iv(0, 10), false).feasible);
    CHECK(!wm_spec_check(Signal(iv(0, 10), true, {Time(3)}), iv(0, 10), false).feasible);
}
