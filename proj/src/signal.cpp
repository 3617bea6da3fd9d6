#include "tcirc/signal.hpp"

#include <algorithm>

namespace tcirc {

Signal::Signal(Interval domain, bool initial, std::vector<Time> transitions)
    : domain_(std::move(domain)), init_(initial), transitions_(std::move(transitions)) {
    for (size_t i = 0; i + 1 < transitions_.size(); ++i)
        if (!(transitions_[i] < transitions_[i + 1]))
            throw DomainError("signal transitions must be strictly increasing");
    // Absorb a transition at a closed domain start into the initial value.
    while (!transitions_.empty() && !domain_.lo_unbounded() && transitions_.front() == domain_.lo()) {
        init_ = !init_;
        transitions_.erase(transitions_.begin());
    }
    for (const Time& t : transitions_)
        if (!domain_.contains(t))
            throw DomainError("signal transition outside domain: " + t.str());
}

bool Signal::value_at(const Time& t) const {
    if (!domain_.contains(t))
        throw DomainError("signal queried outside its domain at " + t.str());
    const auto it = std::upper_bound(transitions_.begin(), transitions_.end(), t);
    const size_t flips = static_cast<size_t>(it - transitions_.begin());
    return init_ ^ (flips & 1);
}

bool Signal::value_before(const Time& t) const {
    const auto it = std::lower_bound(transitions_.begin(), transitions_.end(), t);
    const size_t flips = static_cast<size_t>(it - transitions_.begin());
    return init_ ^ (flips & 1);
}

bool Signal::final_value() const { return init_ ^ (transitions_.size() & 1); }

Signal Signal::restrict(const Interval& sub) const {
    if (!domain_.contains(sub))
        throw DomainError("restriction target " + sub.str() + " not inside domain " + domain_.str());
    bool init = init_;
    std::vector<Time> ts;
    for (const Time& t : transitions_) {
        if (!sub.lo_unbounded()) {
            if (t < sub.lo() || (t == sub.lo() && sub.lo_closed())) {
                init = !init;
                continue;
            }
            if (t == sub.lo())  // open start: flip happens at/before the boundary
            {
                init = !init;
                continue;
            }
        }
        if (!sub.hi_unbounded()) {
            if (t > sub.hi() || (t == sub.hi() && !sub.hi_closed()))
                break;
        }
        ts.push_back(t);
    }
    return Signal(sub, init, std::move(ts));
}

Signal Signal::shifted(const Time& delta) const {
    Interval d = domain_;
    if (d.bounded())
        d = Interval::make(d.lo() + delta, d.hi() + delta, d.lo_closed(), d.hi_closed());
    else if (!d.lo_unbounded())
        d = Interval::at_least(d.lo() + delta);
    else if (!d.hi_unbounded())
        d = Interval::at_most(d.hi() + delta);
    std::vector<Time> ts;
    ts.reserve(transitions_.size());
    for (const Time& t : transitions_)
        ts.push_back(t + delta);
    return Signal(d, init_, std::move(ts));
}

Signal Signal::extended(const Interval& wider) const {
    if (!wider.contains(domain_))
        throw DomainError("extension target must contain the domain");
    return Signal(wider, init_, transitions_);
}

size_t Signal::transition_count(const Interval& within) const {
    return transitions_in(within).size();
}

std::vector<Time> Signal::transitions_in(const Interval& within) const {
    std::vector<Time> out;
    for (const Time& t : transitions_)
        if (within.contains(t))
            out.push_back(t);
    return out;
}

std::vector<Signal::Run> Signal::runs(const Interval& within) const {
    if (within.lo_unbounded() || within.hi_unbounded())
        throw DomainError("runs() requires a bounded interval");
    const Signal r = restrict(within);
    std::vector<Run> out;
    Time begin = within.lo();
    bool v = r.initial();
    for (const Time& t : r.transitions()) {
        out.push_back({v, begin, t});
        begin = t;
        v = !v;
    }
    out.push_back({v, begin, within.hi()});
    return out;
}

Signal combine(std::span<const Signal> inputs,
               const std::function<bool(const std::vector<bool>&)>& f) {
    if (inputs.empty())
        throw DomainError("combine needs at least one signal");
    const Interval& dom = inputs.front().domain();
    for (const Signal& s : inputs)
        if (!(s.domain() == dom))
            throw DomainError("combine requires equal domains");

    std::vector<bool> vals;
    for (const Signal& s : inputs)
        vals.push_back(s.initial());
    const bool init = f(vals);

    // Merge all transition times, then re-evaluate at each.
    std::vector<Time> merged;
    for (const Signal& s : inputs)
        merged.insert(merged.end(), s.transitions().begin(), s.transitions().end());
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());

    std::vector<Time> ts;
    bool cur = init;
    for (const Time& t : merged) {
        for (size_t i = 0; i < inputs.size(); ++i)
            vals[i] = inputs[i].value_at(t);
        const bool v = f(vals);
        if (v != cur) {
            ts.push_back(t);
            cur = v;
        }
    }
    return Signal(dom, init, std::move(ts));
}

Signal sig_not(const Signal& s) {
    return Signal(s.domain(), !s.initial(), s.transitions());
}

Signal sig_and(const Signal& a, const Signal& b) {
    const Signal in[] = {a, b};
    return combine(in, [](const std::vector<bool>& v) { return v[0] && v[1]; });
}

Signal sig_or(const Signal& a, const Signal& b) {
    const Signal in[] = {a, b};
    return combine(in, [](const std::vector<bool>& v) { return v[0] || v[1]; });
}

std::optional<Time> first_difference(const Signal& a, const Signal& b, const Interval& I,
                                     bool modulo_isolated) {
    if (!a.domain().contains(I) || !b.domain().contains(I))
        throw DomainError("comparison interval outside a signal domain");
    const Signal ra = a.restrict(I), rb = b.restrict(I);
    if (I.lo_unbounded() || I.hi_unbounded()) {
        // Unbounded comparisons are exact structural equality.
        if (ra.identical(rb))
            return std::nullopt;
        if (ra.initial() != rb.initial())
            return I.lo_unbounded() ? std::optional<Time>(Time(0)) : std::optional<Time>(I.lo());
        const size_t n = std::min(ra.transitions().size(), rb.transitions().size());
        for (size_t i = 0; i < n; ++i)
            if (!(ra.transitions()[i] == rb.transitions()[i]))
                return min(ra.transitions()[i], rb.transitions()[i]);
        return ra.transitions().size() > n ? ra.transitions()[n] : rb.transitions()[n];
    }

    // Every stored-value difference inside the interval extends over a
    // positive-length window except a lone flip at the closed upper endpoint.
    if (ra.initial() != rb.initial())
        return I.lo();
    const auto& ta = ra.transitions();
    const auto& tb = rb.transitions();
    size_t i = 0, j = 0;
    while (i < ta.size() || j < tb.size()) {
        if (i < ta.size() && j < tb.size() && ta[i] == tb[j]) {
            ++i;
            ++j;
            continue;
        }
        const Time& t = (j >= tb.size() || (i < ta.size() && ta[i] < tb[j])) ? ta[i] : tb[j];
        const bool lone_endpoint = (t == I.hi()) && (i + j == ta.size() + tb.size() - 1);
        if (lone_endpoint && modulo_isolated)
            return std::nullopt;
        return t;
    }
    return std::nullopt;
}

bool equal_on(const Signal& a, const Signal& b, const Interval& I, bool modulo_isolated) {
    return !first_difference(a, b, I, modulo_isolated).has_value();
}

const Signal& Execution::at(const std::string& port) const {
    const auto it = ports.find(port);
    if (it == ports.end())
        throw DomainError("execution has no signal for port '" + port + "'");
    return it->second;
}

Execution Execution::restrict(const Interval& sub) const {
    Execution out;
    out.interval = sub;
    out.complete = false;
    for (const auto& [name, sig] : ports)
        out.ports.emplace(name, sig.restrict(sub));
    return out;
}

Execution limit_of_covering(std::span<const Execution> chain, Closure closure) {
    if (chain.empty())
        throw CoveringError("empty covering chain");
    for (size_t i = 0; i + 1 < chain.size(); ++i) {
        const Execution& cur = chain[i];
        const Execution& nxt = chain[i + 1];
        if (!nxt.interval.contains(cur.interval))
            throw CoveringError("covering chain not nested at element " + std::to_string(i + 1));
        if (cur.ports.size() != nxt.ports.size())
            throw CoveringError("covering chain port sets differ");
        for (const auto& [name, sig] : cur.ports) {
            const Signal& wider = nxt.at(name);
            if (!wider.restrict(cur.interval).identical(sig))
                throw CoveringError("covering chain disagrees on " + cur.interval.str() +
                                    " at port '" + name + "'");
        }
    }
    Execution limit = chain.back();
    limit.complete = (closure == Closure::Constant);
    return limit;
}

}  // namespace tcirc
