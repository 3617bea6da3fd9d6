#include "tcirc/modules.hpp"

#include <algorithm>

namespace tcirc {

void ChannelParams::validate() const {
    if (mode == ChannelMode::Inertial) {
        if (d.sign() < 0)
            throw ConfigError("inertial channel delay must be >= 0");
        if (inertial_threshold.sign() <= 0)
            throw ConfigError("inertial threshold must be > 0");
    } else if (d.sign() <= 0) {
        throw ConfigError("channel delay must be > 0");
    }
}

namespace {

void require_bounded(const Interval& I, const char* who) {
    if (I.lo_unbounded() || I.hi_unbounded())
        throw DomainError(std::string(who) + " requires a bounded interval, got " + I.str());
}

struct Edge {
    Time at;
    bool rising;  // value after the transition
};

std::vector<Edge> edges_of(const Signal& s, const Interval& within) {
    std::vector<Edge> out;
    for (const Time& t : s.transitions_in(within))
        out.push_back({t, s.value_at(t)});
    return out;
}

}  // namespace

Signal channel_generate(const ChannelParams& params, const Signal& in, const Strategy& strat,
                        const Interval& I, const std::optional<Signal>& content,
                        const std::string& key_prefix) {
    params.validate();
    require_bounded(I, "channel_generate");
    const Signal input = in.restrict(I);
    const Time& lo = I.lo();
    const Time& hi = I.hi();
    const Time& d = params.d;

    if (params.mode == ChannelMode::Inertial) {
        const Signal delayed =
            d.sign() == 0 ? input
                          : channel_generate(ChannelParams::pure(d), input, strat, I, content,
                                             key_prefix);
        return suppress_short_pulses(delayed, params.inertial_threshold);
    }

    // In-flight output for [lo, lo+d), justified by unrecorded earlier input.
    const Interval pre_span = Interval::closed(lo, min(lo + d, hi));
    const Signal pre = content ? content->restrict(pre_span)
                               : Signal::constant(pre_span, input.initial());
    if (lo + d > hi)
        return pre;

    const bool init = pre.initial();
    std::vector<Time> ts;
    for (const Time& t : pre.transitions())
        if (t < lo + d)
            ts.push_back(t);
    const bool cur = init ^ (ts.size() & 1);
    Time last_out = ts.empty() ? lo : ts.back();

    if (params.mode == ChannelMode::Pure) {
        if (cur != input.initial())
            ts.push_back(lo + d);
        for (const Time& t : input.transitions())
            if (t + d <= hi)
                ts.push_back(t + d);
        return Signal(I, init, std::move(ts));
    }

    // Bounded: per-transition delays in [0, d], outputs strictly increasing.
    if (cur != input.initial()) {
        const Time seam = strat.draw_above(key_prefix + ":seam", max(last_out, lo), lo + d);
        ts.push_back(seam);
        last_out = seam;
    }
    for (const Time& t : input.transitions()) {
        const std::string key = key_prefix + ":delay:" + t.str();
        const Time o = (t > last_out) ? strat.draw(key, t, t + d)
                                      : strat.draw_above(key, last_out, t + d);
        last_out = o;
        if (o <= hi)
            ts.push_back(o);
    }
    return Signal(I, init, std::move(ts));
}

Signal suppress_short_pulses(const Signal& s, const Time& threshold) {
    require_bounded(s.domain(), "suppress_short_pulses");
    const auto rs = s.runs(s.domain());
    // Establish the output level at the first run long enough to persist.
    size_t first_long = rs.size();
    for (size_t i = 0; i < rs.size(); ++i) {
        if (rs[i].end - rs[i].begin >= threshold) {
            first_long = i;
            break;
        }
    }
    if (first_long == rs.size()) {
        size_t longest = 0;
        for (size_t i = 1; i < rs.size(); ++i)
            if (rs[i].end - rs[i].begin > rs[longest].end - rs[longest].begin)
                longest = i;
        return Signal::constant(s.domain(), rs[longest].value);
    }
    bool cur = rs[first_long].value;
    const bool init = cur;
    std::vector<Time> ts;
    for (size_t i = first_long + 1; i < rs.size(); ++i) {
        if (rs[i].value != cur && rs[i].end - rs[i].begin >= threshold) {
            ts.push_back(rs[i].begin);
            cur = !cur;
        }
    }
    return Signal(s.domain(), init, std::move(ts));
}

Verdict channel_check(const ChannelParams& params, const Signal& in, const Signal& out,
                      const Interval& judge) {
    params.validate();
    require_bounded(judge, "channel_check");
    const auto dom = in.domain().intersect(out.domain());
    if (!dom || !dom->contains(judge))
        throw DomainError("channel_check: judged interval outside the recorded signals");
    const Interval D = *dom;
    const Time& a = judge.lo();
    const Time& b = judge.hi();
    const Time& d = params.d;

    if (params.mode == ChannelMode::Pure) {
        if (D.lo_unbounded()) {
            const Signal expected = in.restrict(Interval::closed(a - d, b - d)).shifted(d);
            if (auto t = first_difference(out, expected, judge, true))
                return Verdict::fail(*t, "output is not the d-shifted input");
            return Verdict::ok();
        }
        const Time from = max(a, D.lo() + d);
        if (from > b)
            return Verdict::ok();  // entirely justified by unrecorded history
        const Signal expected = in.restrict(Interval::closed(from - d, b - d)).shifted(d);
        const Interval zone = Interval::closed(from, b);
        if (auto t = first_difference(out.restrict(zone), expected, zone, true))
            return Verdict::fail(*t, "output is not the d-shifted input");
        return Verdict::ok();
    }

    if (params.mode == ChannelMode::Inertial) {
        // Recompute from the visible input; the establishment window at the
        // domain start is not judged.
        if (D.lo_unbounded() || D.hi_unbounded())
            throw DomainError("inertial channel_check needs bounded recorded signals");
        const Signal expect = channel_generate(params, in.restrict(D), Strategy(0, Policy::Minimal), D);
        const Time from = max(a, D.lo() + d + params.inertial_threshold);
        if (from > b)
            return Verdict::ok();
        const Interval zone = Interval::closed(from, b);
        if (auto t = first_difference(out.restrict(zone), expect.restrict(zone), zone, true))
            return Verdict::fail(*t, "output disagrees with the pulse-suppressed input");
        return Verdict::ok();
    }

    // Bounded: FIFO matching of output transitions to input transitions with
    // per-pair delay in [0, d]. Transitions whose partner may fall outside the
    // recorded domain or the judged interval are optional.
    const Time ctx_lo = D.lo_unbounded() ? a - d : max(D.lo(), a - d);
    const std::vector<Edge> ins = edges_of(in, Interval::closed(ctx_lo, b));
    const std::vector<Edge> outs = edges_of(out, judge);
    const size_t n = ins.size(), m = outs.size();

    const auto phantom_ok = [&](const Edge& e) {
        return !D.lo_unbounded() && e.at - d < D.lo();
    };
    const auto skip_left_ok = [&](const Edge& e) { return e.at < a; };
    const auto skip_right_ok = [&](const Edge& e) { return e.at + d > b; };

    bool matched = false;
    Time best_fail = outs.empty() ? a : outs.front().at;
    size_t best_depth = 0;
    std::string best_what = "unmatched output transition";
    for (size_t k = 0; k <= m && !matched; ++k) {
        if (k > 0 && !phantom_ok(outs[k - 1]))
            break;
        for (size_t p = 0; p <= n && !matched; ++p) {
            if (p > 0 && !skip_left_ok(ins[p - 1]))
                break;
            if (n - p < m - k)
                continue;
            const size_t q = n - p - (m - k);
            if (q > 0 && !skip_right_ok(ins[n - q]))
                continue;
            bool ok = true;
            for (size_t i = 0; i < m - k; ++i) {
                const Edge& o = outs[k + i];
                const Edge& s = ins[p + i];
                const bool legal = o.rising == s.rising && o.at >= s.at && o.at <= s.at + d;
                if (!legal) {
                    if (k + p + i >= best_depth) {
                        best_depth = k + p + i;
                        best_fail = o.at < s.at ? s.at : o.at;
                        best_what = o.rising != s.rising
                                        ? "transition direction mismatch"
                                        : "no input transition within delay bound";
                    }
                    ok = false;
                    break;
                }
            }
            matched = ok;
        }
    }
    if (!matched)
        return Verdict::fail(best_fail, best_what);

    // Level agreement: wherever the input held one value throughout the whole
    // delay window, the output is forced to that value.
    {
        const Time scan_lo = D.lo_unbounded() ? a - d : max(D.lo(), a - d);
        for (const auto& r : in.runs(Interval::closed(scan_lo, b))) {
            const Time zlo = max(a, r.begin + d);
            const Time zhi = min(b, r.end);
            if (zlo > zhi)
                continue;
            for (const auto& orun : out.runs(Interval::closed(zlo, zhi)))
                if (orun.value != r.value && orun.end > orun.begin)
                    return Verdict::fail(orun.begin, "output level contradicts settled input");
        }
    }
    return Verdict::ok();
}

GateKind gate_from_string(const std::string& s) {
    if (s == "and") return GateKind::And;
    if (s == "or") return GateKind::Or;
    if (s == "not") return GateKind::Not;
    if (s == "maj3") return GateKind::Maj3;
    if (s == "add1") return GateKind::Add1;
    throw ConfigError("unknown gate kind '" + s + "'");
}

std::string to_string(GateKind k) {
    switch (k) {
    case GateKind::And: return "and";
    case GateKind::Or: return "or";
    case GateKind::Not: return "not";
    case GateKind::Maj3: return "maj3";
    default: return "add1";
    }
}

size_t gate_arity(GateKind k) {
    switch (k) {
    case GateKind::Not: return 1;
    case GateKind::Maj3: return 3;
    default: return 2;
    }
}

std::vector<std::string> gate_input_ports(GateKind k) {
    switch (k) {
    case GateKind::Not: return {"in"};
    case GateKind::Maj3: return {"a", "b", "c"};
    default: return {"a", "b"};
    }
}

std::vector<std::string> gate_output_ports(GateKind k) {
    return k == GateKind::Add1 ? std::vector<std::string>{"sum", "carry"}
                               : std::vector<std::string>{"out"};
}

bool gate_truth(GateKind k, const std::vector<bool>& in, size_t output_index) {
    switch (k) {
    case GateKind::And: return in[0] && in[1];
    case GateKind::Or: return in[0] || in[1];
    case GateKind::Not: return !in[0];
    case GateKind::Maj3: return (in[0] && in[1]) || (in[0] && in[2]) || (in[1] && in[2]);
    case GateKind::Add1: return output_index == 0 ? (in[0] != in[1]) : (in[0] && in[1]);
    }
    return false;
}

std::vector<Signal> gate_eval(GateKind kind, std::span<const Signal> inputs) {
    if (inputs.size() != gate_arity(kind))
        throw ConfigError("gate " + to_string(kind) + " expects " +
                          std::to_string(gate_arity(kind)) + " inputs");
    std::vector<Signal> outs;
    const size_t n_out = gate_output_ports(kind).size();
    for (size_t oi = 0; oi < n_out; ++oi)
        outs.push_back(combine(
            inputs, [kind, oi](const std::vector<bool>& v) { return gate_truth(kind, v, oi); }));
    return outs;
}

Verdict gate_check(GateKind kind, std::span<const Signal> inputs, std::span<const Signal> outputs,
                   const Interval& judge) {
    std::vector<Signal> restricted;
    for (const Signal& s : inputs)
        restricted.push_back(s.restrict(judge));
    const std::vector<Signal> expect = gate_eval(kind, restricted);
    if (outputs.size() != expect.size())
        throw ConfigError("gate output arity mismatch");
    for (size_t i = 0; i < expect.size(); ++i)
        if (auto t = first_difference(outputs[i].restrict(judge), expect[i], judge, true))
            return Verdict::fail(*t, "gate output differs from its pointwise function");
    return Verdict::ok();
}

void MemParams::validate() const {
    if (T.sign() <= 0)
        throw ConfigError("mem watchdog window T must be > 0");
}

MemBoundary MemBoundary::adversarial(const MemParams& p, const Strategy& strat, const Time& start,
                                     const std::string& key) {
    MemBoundary b;
    b.y0 = strat.bits(key + ":y0") & 1;
    if (b.y0)
        b.pending_fall = start + p.T.scaled(strat.unit_pos(key + ":pend"));
    return b;
}

Signal mem_generate(const MemParams& params, const Signal& x, const MemBoundary& boundary,
                    const Interval& I) {
    params.validate();
    require_bounded(I, "mem_generate");
    const Signal in = x.restrict(I);
    const Time& lo = I.lo();
    const Time& hi = I.hi();
    const Time& T = params.T;

    bool y = boundary.y0;
    std::optional<Time> pend;
    if (y) {
        pend = boundary.pending_fall.value_or(lo + T);
        if (*pend <= lo || *pend > lo + T)
            throw ConfigError("mem boundary pending fall must lie in (start, start+T]");
    }
    if (!y && in.value_at(lo)) {  // trigger at the very start
        y = true;
        pend = lo + T;
    }
    const bool init = y;

    std::vector<Time> ts;
    size_t xi = 0;
    const auto& xts = in.transitions();
    while (true) {
        std::optional<Time> next;
        if (xi < xts.size())
            next = xts[xi];
        if (pend && (!next || *pend <= *next))
            next = *pend;
        if (!next || *next > hi)
            break;
        const Time t = *next;
        if (pend && *pend == t) {
            if (in.value_at(t)) {
                pend = t + T;  // re-trigger at the fall instant, stays high
            } else {
                ts.push_back(t);
                y = false;
                pend.reset();
            }
        }
        while (xi < xts.size() && xts[xi] == t)
            ++xi;
        if (!y && in.value_at(t)) {
            ts.push_back(t);
            y = true;
            pend = t + T;
        }
    }
    return Signal(I, init, std::move(ts));
}

namespace {

// Next scheduled fall consistent with the observed signal: aligned to the next
// observed fall modulo T (re-trigger chains fall exactly T after a trigger).
Time align_pending(const Time& now, const std::optional<Time>& next_fall, const Time& T) {
    if (!next_fall)
        return now + T;
    const Time r = mod(*next_fall - now, T);
    return now + (r.is_zero() ? T : r);
}

}  // namespace

Verdict mem_check(const MemParams& params, const Signal& x, const Signal& y, const Interval& judge) {
    params.validate();
    require_bounded(judge, "mem_check");
    const auto dom = x.domain().intersect(y.domain());
    if (!dom || !dom->contains(judge))
        throw DomainError("mem_check: judged interval outside the recorded signals");
    const Interval D = *dom;
    const Time& T = params.T;
    const Time start = D.lo_unbounded() ? judge.lo() - T : max(D.lo(), judge.lo() - T);
    const Time strict_from = max(judge.lo(), start + T);
    const Time end = judge.hi();

    const auto next_y_fall_after = [&](const Time& t) -> std::optional<Time> {
        for (const Time& yt : y.transitions())
            if (yt > t && yt <= end && !y.value_at(yt))
                return yt;
        return std::nullopt;
    };

    bool sim = y.value_at(start);
    std::optional<Time> pend;
    if (sim)
        pend = align_pending(start, next_y_fall_after(start), T);

    // Merged event times: x and y transitions, plus the dynamic pending fall.
    std::vector<Time> fixed;
    for (const Time& t : x.transitions_in(Interval::closed(start, end)))
        if (t > start)
            fixed.push_back(t);
    for (const Time& t : y.transitions_in(Interval::closed(start, end)))
        if (t > start)
            fixed.push_back(t);
    std::sort(fixed.begin(), fixed.end());
    fixed.erase(std::unique(fixed.begin(), fixed.end()), fixed.end());

    size_t fi = 0;
    while (true) {
        std::optional<Time> next;
        if (fi < fixed.size())
            next = fixed[fi];
        if (pend && (!next || *pend <= *next))
            next = *pend;
        if (!next || *next > end)
            break;
        const Time t = *next;
        if (pend && *pend == t) {
            if (x.value_at(t)) {
                pend = t + T;
            } else {
                sim = false;
                pend.reset();
            }
        }
        while (fi < fixed.size() && fixed[fi] == t)
            ++fi;
        if (!sim && x.value_at(t)) {
            sim = true;
            pend = t + T;
        }
        const bool observed = y.value_at(t);
        if (observed != sim) {
            if (t >= strict_from && t < end && judge.contains(t))
                return Verdict::fail(t, sim ? "output low without window expiry"
                                            : "output high without a trigger in the window");
            sim = observed;  // boundary slack: justified by unrecorded pre-history
            pend = sim ? std::optional<Time>(align_pending(t, next_y_fall_after(t), T))
                       : std::nullopt;
        }
    }
    return Verdict::ok();
}

void SourceParams::validate() const {
    if (kind == SourceKind::SinglePulse && width.sign() <= 0)
        throw ConfigError("pulse width must be > 0");
    if (kind == SourceKind::RandomPulse &&
        (width_min.sign() <= 0 || width_max < width_min))
        throw ConfigError("random pulse range must satisfy 0 < min <= max");
}

Signal source_generate(const SourceParams& params, const Strategy& strat, const Interval& I,
                       const std::string& key_prefix) {
    params.validate();
    require_bounded(I, "source_generate");
    const Time& lo = I.lo();
    const Time& hi = I.hi();
    switch (params.kind) {
    case SourceKind::Constant:
        return Signal::constant(I, params.value);
    case SourceKind::Step: {
        std::vector<Time> ts;
        if (params.t0 > lo && params.t0 <= hi)
            ts.push_back(params.t0);
        const bool init = params.t0 <= lo ? params.value : !params.value;
        return Signal(I, init, std::move(ts));
    }
    case SourceKind::SinglePulse:
    case SourceKind::RandomPulse: {
        Time w = params.width;
        if (params.kind == SourceKind::RandomPulse)
            w = params.width_min +
                (params.width_max - params.width_min).scaled(strat.unit(key_prefix + ":delta"));
        std::vector<Time> ts;
        bool init = false;
        if (params.t0 <= lo)
            init = params.t0 + w > lo;
        else if (params.t0 <= hi)
            ts.push_back(params.t0);
        if (params.t0 + w > lo && params.t0 + w <= hi && (init || !ts.empty()))
            ts.push_back(params.t0 + w);
        return Signal(I, init, std::move(ts));
    }
    }
    throw ConfigError("unknown source kind");
}

Verdict source_check(const SourceParams& params, const Signal& out, const Interval& judge) {
    params.validate();
    require_bounded(judge, "source_check");
    if (params.kind == SourceKind::RandomPulse) {
        const auto rs = out.runs(judge);
        size_t highs = 0;
        for (const auto& r : rs)
            if (r.value)
                ++highs;
        if (highs > 1)
            return Verdict::fail(judge.lo(), "random pulse source emitted more than one pulse");
        for (const auto& r : rs) {
            if (!r.value)
                continue;
            if (r.begin > judge.lo() && !(r.begin == params.t0))
                return Verdict::fail(r.begin, "pulse does not start at t0");
            const bool clipped = r.end == judge.hi() || r.begin > params.t0;
            const Time w = r.end - r.begin;
            if (!clipped && (w < params.width_min || w > params.width_max))
                return Verdict::fail(r.begin, "pulse width outside the declared range");
        }
        return Verdict::ok();
    }
    const Signal expect = source_generate(params, Strategy(0), judge).restrict(judge);
    if (auto t = first_difference(out.restrict(judge), expect, judge, true))
        return Verdict::fail(*t, "source output differs from its declared waveform");
    return Verdict::ok();
}

OscFit osc_spec_check(const Signal& y, const Time& T, const Time& d, const Interval& judge) {
    if (T.sign() <= 0 || d.sign() <= 0)
        throw ConfigError("osc spec needs T > 0 and d > 0");
    require_bounded(judge, "osc_spec_check");
    const Time P = T + d;
    const Signal sig = y.restrict(judge);
    const auto rs = sig.runs(judge);

    std::vector<Signal::Run> highs;
    for (const auto& r : rs)
        if (r.value)
            highs.push_back(r);

    Time delta(0);
    if (highs.empty()) {
        if (judge.length() > d)
            return {Verdict::fail(judge.lo(), "no high phase within a span exceeding d"),
                    std::nullopt};
        delta = mod(judge.lo() - T - (d - judge.length()).scaled(Rat(1, 2)), P);
    } else {
        bool found = false;
        for (const auto& r : highs) {
            if (r.end < judge.hi()) {  // a real falling edge pins the offset
                delta = mod(r.end - T, P);
                found = true;
                break;
            }
        }
        if (!found) {
            const auto& r = highs.front();
            if (r.begin > judge.lo()) {
                delta = mod(r.begin, P);
            } else {
                const Time len = r.end - r.begin;
                if (len > T)
                    return {Verdict::fail(r.begin, "high phase longer than T"), std::nullopt};
                delta = mod(r.begin - (T - len).scaled(Rat(1, 2)), P);
            }
        }
    }

    // Build the fitted pattern on the judged interval and compare.
    const Int z0 = floor_div(judge.lo() - delta, P) - 1;
    const Int z1 = floor_div(judge.hi() - delta, P) + 1;
    std::vector<Time> ts;
    for (Int z = z0; z <= z1; ++z) {
        const Time rise = delta + P.scaled(Rat(z));
        const Time fall = rise + T;
        if (judge.contains(rise) && rise > judge.lo())
            ts.push_back(rise);
        if (judge.contains(fall) && fall > judge.lo())
            ts.push_back(fall);
    }
    const Time at_lo = mod(judge.lo() - delta, P);
    const bool init = at_lo < T;
    const Signal expected(judge, init, std::move(ts));
    if (auto t = first_difference(sig, expected, judge, true))
        return {Verdict::fail(*t, "signal leaves the fitted periodic pattern (delta = " +
                                      delta.str() + ")"),
                std::nullopt};
    return {Verdict::ok(), delta};
}

Verdict wm_spec_check(const Signal& out, const Interval& judge, bool complete) {
    const Signal sig = out.restrict(judge);
    const auto& ts = sig.transitions();
    if (ts.size() >= 2)
        return Verdict::fail(ts[1], "more than one transition");
    if (ts.size() == 1) {
        if (!sig.value_at(ts[0]))
            return Verdict::fail(ts[0], "falling transition");
        return Verdict::ok();
    }
    if (complete && !sig.initial())
        return Verdict::fail(judge.lo_unbounded() ? Time(0) : judge.lo(),
                             "complete execution never rises");
    if (complete && sig.initial())
        return Verdict::fail(judge.lo_unbounded() ? Time(0) : judge.lo(),
                             "complete execution has no 0-to-1 switch");
    return Verdict::ok();
}

}  // namespace tcirc
