// Basic module specifications: channels, zero-time gates, the watchdog memory
// cell, sources, and the OSC / WM reference specs. Each comes as a
// feasibility checker over a judged sub-interval and, where the module is
// generatable, an output generator driven by an adversary strategy.
//
// Checkers receive signals on their full recorded domain and judge
// correctness during a sub-interval. Context outside the judged interval is
// used where the module's memory window reaches it; where the domain ends,
// behavior is justified by hypothetical extensions (definition by extension),
// which shows up as boundary slack: the first d of a channel's output and the
// first T of a Mem's window are unconstrained when nothing earlier is
// recorded.
#pragma once

#include "tcirc/signal.hpp"
#include "tcirc/strategy.hpp"

#include <memory>
#include <optional>

namespace tcirc {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Witness {
    Time at;
    std::string what;
};

struct Verdict {
    bool feasible = true;
    std::optional<Witness> witness;

    static Verdict ok() { return {}; }
    static Verdict fail(Time at, std::string what) {
        return {false, Witness{std::move(at), std::move(what)}};
    }
    explicit operator bool() const { return feasible; }
};

// --- channels --------------------------------------------------------------

enum class ChannelMode { Pure, Bounded, Inertial };

struct ChannelParams {
    ChannelMode mode = ChannelMode::Pure;
    Time d = Time(1);              // maximum delay; pure: the exact delay
    Time inertial_threshold = Time(0);  // inertial mode only

    static ChannelParams pure(Time d) { return {ChannelMode::Pure, std::move(d), Time(0)}; }
    static ChannelParams bounded(Time d) { return {ChannelMode::Bounded, std::move(d), Time(0)}; }
    static ChannelParams inertial(Time d, Time threshold) {
        return {ChannelMode::Inertial, std::move(d), std::move(threshold)};
    }
    void validate() const;
};

// In-flight output for the first d of the generation interval; defaults to a
// constant at the input's initial value (quiescent history).
Signal channel_generate(const ChannelParams& params, const Signal& in, const Strategy& strat,
                        const Interval& I, const std::optional<Signal>& content = std::nullopt,
                        const std::string& key_prefix = "chn");

Verdict channel_check(const ChannelParams& params, const Signal& in, const Signal& out,
                      const Interval& judge);

// Removes every maximal constant run shorter than `threshold`, merging it
// into the surrounding level (left-to-right, starting from the first
// establishable run).
Signal suppress_short_pulses(const Signal& s, const Time& threshold);

// --- zero-time gates --------------------------------------------------------

enum class GateKind { And, Or, Not, Maj3, Add1 };

GateKind gate_from_string(const std::string& s);
std::string to_string(GateKind k);
size_t gate_arity(GateKind k);
std::vector<std::string> gate_input_ports(GateKind k);
std::vector<std::string> gate_output_ports(GateKind k);
bool gate_truth(GateKind k, const std::vector<bool>& in, size_t output_index);

std::vector<Signal> gate_eval(GateKind kind, std::span<const Signal> inputs);

Verdict gate_check(GateKind kind, std::span<const Signal> inputs, std::span<const Signal> outputs,
                   const Interval& judge);

// --- watchdog memory cell ----------------------------------------------------

struct MemParams {
    Time T;  // watchdog window, > 0
    void validate() const;
};

// State at the start of generation: output value, and if high, the scheduled
// fall (at most T away). Clean state is "no prior trigger".
struct MemBoundary {
    bool y0 = false;
    std::optional<Time> pending_fall;

    static MemBoundary clean() { return {}; }
    static MemBoundary adversarial(const MemParams& p, const Strategy& strat, const Time& start,
                                   const std::string& key);
};

Signal mem_generate(const MemParams& params, const Signal& x, const MemBoundary& boundary,
                    const Interval& I);

Verdict mem_check(const MemParams& params, const Signal& x, const Signal& y, const Interval& judge);

// --- sources -----------------------------------------------------------------

enum class SourceKind { Constant, Step, SinglePulse, RandomPulse };

struct SourceParams {
    SourceKind kind = SourceKind::Constant;
    bool value = true;       // constant / step level
    Time t0 = Time(0);       // step or pulse start
    Time width = Time(1);    // single pulse width
    Time width_min = Time(Rat(1, 10)), width_max = Time(1);  // random pulse range
    void validate() const;
};

Signal source_generate(const SourceParams& params, const Strategy& strat, const Interval& I,
                       const std::string& key_prefix = "src");

Verdict source_check(const SourceParams& params, const Signal& out, const Interval& judge);

// --- reference specs ----------------------------------------------------------

// Feasible iff some offset delta in [0, T+d) makes the signal 1 exactly on
// (delta + z(T+d), delta + z(T+d) + T) within the judged interval, modulo
// isolated instants. Returns the fitted delta.
struct OscFit {
    Verdict verdict;
    std::optional<Time> delta;
};
OscFit osc_spec_check(const Signal& y, const Time& T, const Time& d, const Interval& judge);

// At most one transition, and it must rise. A constant-0 execution is
// feasible while finite (extendible) but infeasible when declared complete.
Verdict wm_spec_check(const Signal& out, const Interval& judge, bool complete);

// --- output-behavior specifications (targets of implements/stabilizing) -------

class Spec {
  public:
    virtual ~Spec() = default;
    virtual std::string name() const = 0;
    virtual std::vector<std::string> inputs() const = 0;
    virtual std::vector<std::string> outputs() const = 0;
    virtual Verdict check(const Execution& e, const Interval& judge) const = 0;
};

class OscSpec : public Spec {
  public:
    OscSpec(Time T, Time d, std::string port = "Y")
        : T_(std::move(T)), d_(std::move(d)), port_(std::move(port)) {}
    std::string name() const override { return "osc"; }
    std::vector<std::string> inputs() const override { return {}; }
    std::vector<std::string> outputs() const override { return {port_}; }
    Verdict check(const Execution& e, const Interval& judge) const override {
        return osc_spec_check(e.at(port_), T_, d_, judge).verdict;
    }
    const Time& period_high() const { return T_; }
    const Time& period_low() const { return d_; }

  private:
    Time T_, d_;
    std::string port_;
};

class WmSpec : public Spec {
  public:
    explicit WmSpec(std::string port = "OUT") : port_(std::move(port)) {}
    std::string name() const override { return "wm"; }
    std::vector<std::string> inputs() const override { return {}; }
    std::vector<std::string> outputs() const override { return {port_}; }
    Verdict check(const Execution& e, const Interval& judge) const override {
        return wm_spec_check(e.at(port_), judge, e.complete);
    }

  private:
    std::string port_;
};

// Channel input-output behavior as a checkable spec (for implements tests).
class ChannelSpec : public Spec {
  public:
    ChannelSpec(ChannelParams p, std::string in = "in", std::string out = "out")
        : params_(std::move(p)), in_(std::move(in)), out_(std::move(out)) {}
    std::string name() const override { return "channel"; }
    std::vector<std::string> inputs() const override { return {in_}; }
    std::vector<std::string> outputs() const override { return {out_}; }
    Verdict check(const Execution& e, const Interval& judge) const override {
        return channel_check(params_, e.at(in_), e.at(out_), judge);
    }

  private:
    ChannelParams params_;
    std::string in_, out_;
};

}  // namespace tcirc
