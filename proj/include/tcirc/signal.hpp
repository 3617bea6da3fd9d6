// Piecewise-constant binary signals on time intervals, stored right-continuous:
// the value on [tau_i, tau_{i+1}) is constant and alternates across transitions.
// Spec checks that tolerate deviations at isolated instants use the
// modulo-isolated comparison mode.
#pragma once

#include "tcirc/qtime.hpp"

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tcirc {

struct CoveringError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Signal {
  public:
    // Transitions must be strictly increasing and lie inside the domain; a
    // transition exactly at a finite domain start is absorbed into the
    // initial value.
    Signal(Interval domain, bool initial, std::vector<Time> transitions = {});

    static Signal constant(Interval domain, bool value) { return Signal(std::move(domain), value); }

    const Interval& domain() const { return domain_; }
    bool initial() const { return init_; }
    const std::vector<Time>& transitions() const { return transitions_; }

    bool value_at(const Time& t) const;      // throws DomainError outside domain
    bool value_before(const Time& t) const;  // left limit at t
    bool final_value() const;                // value after the last transition

    Signal restrict(const Interval& sub) const;  // throws DomainError unless sub ⊆ domain
    Signal shifted(const Time& delta) const;     // same shape, domain and transitions + delta
    // Same value function, wider domain; the signal is constant on the added
    // margins (initial value before, final value after).
    Signal extended(const Interval& wider) const;

    size_t transition_count(const Interval& within) const;
    std::vector<Time> transitions_in(const Interval& within) const;

    // Maximal constant runs covering `within` (bounded interval), in order.
    // Each run is [begin, end) except the last, which reaches the interval's
    // upper endpoint.
    struct Run {
        bool value;
        Time begin;
        Time end;
    };
    std::vector<Run> runs(const Interval& within) const;

    bool identical(const Signal& other) const {
        return domain_ == other.domain_ && init_ == other.init_ && transitions_ == other.transitions_;
    }

  private:
    Interval domain_;
    bool init_;
    std::vector<Time> transitions_;
};

// Pointwise combination of equal-domain signals.
Signal combine(std::span<const Signal> inputs,
               const std::function<bool(const std::vector<bool>&)>& f);
Signal sig_not(const Signal& s);
Signal sig_and(const Signal& a, const Signal& b);
Signal sig_or(const Signal& a, const Signal& b);

// Pointwise equality on I; with modulo_isolated set, a difference confined to
// finitely many isolated instants is ignored. Returns the start of the first
// positive-length (or lone-endpoint) difference.
std::optional<Time> first_difference(const Signal& a, const Signal& b, const Interval& I,
                                     bool modulo_isolated);
bool equal_on(const Signal& a, const Signal& b, const Interval& I, bool modulo_isolated);

struct Execution {
    Interval interval;
    std::map<std::string, Signal> ports;
    // Set when the execution stands for a full-line execution (e.g. a covering
    // limit under a declared closure rule).
    bool complete = false;

    const Signal& at(const std::string& port) const;
    Execution restrict(const Interval& sub) const;
};

enum class Closure { None, Constant };

// The unique execution every chain element restricts to. The chain must be
// nested and agreeing (sigma_i = sigma_{i+1} restricted to I_i). With
// Closure::Constant the result is marked complete: it stands for the
// full-line execution that continues constantly beyond the union.
Execution limit_of_covering(std::span<const Execution> chain, Closure closure);

}  // namespace tcirc
