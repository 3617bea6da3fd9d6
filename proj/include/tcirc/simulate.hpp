// Event-driven witness construction for compound modules: an event queue
// ordered by exact time; zero-time gates settle to a fixed point within each
// instant, delayed elements schedule future events. Runs are deterministic
// given (netlist, inputs, seed, initial conditions, fault plan).
#pragma once

#include "tcirc/netlist.hpp"

#include <map>
#include <optional>
#include <string>

namespace tcirc {

struct BudgetError : std::runtime_error {
    BudgetError(const std::string& msg, std::string port)
        : std::runtime_error(msg), hot_port(std::move(port)) {}
    std::string hot_port;
};

// Boundary conditions for stateful submodules: channel in-flight output for
// the first d, and Mem trigger history.
struct InitConditions {
    std::map<std::string, Signal> channel_content;
    std::map<std::string, MemBoundary> mem_boundary;

    static InitConditions quiescent() { return {}; }
    // Structured adversarial family: per channel, all-0 / all-1 / up to
    // max_pulses random pulses in the in-flight window; random Mem state.
    static InitConditions adversarial(const Netlist& n, const Strategy& strat, const Interval& I,
                                      int max_pulses = 3);
    std::string describe() const;
};

// Output override for one instance output port.
struct PortOverride {
    enum class Mode { Scripted, Byzantine, Crash };
    Mode mode = Mode::Scripted;
    std::optional<Signal> forced;  // scripted / byzantine waveform
    Interval window = Interval::closed(Time(0), Time(0));
    Time crash_at = Time(0);

    static PortOverride scripted(Signal s, Interval window);
    static PortOverride byzantine(Signal s);
    static PortOverride crash(Time at);
};

struct FaultPlan {
    // key: "instance.port"
    std::map<std::string, PortOverride> overrides;
    bool empty() const { return overrides.empty(); }
};

struct SimOptions {
    size_t budget_events = 1u << 20;
    FaultPlan faults;
    // Per-channel target outputs to imitate where legal (delay choices made
    // to reproduce the target exactly; used by forgetfulness replay).
    std::map<std::string, Signal> imitate_channel;
    std::string key_namespace = "sim";
};

struct SimResult {
    Execution exec;
    size_t events = 0;
};

SimResult simulate(const Netlist& n, const std::map<std::string, Signal>& inputs,
                   const Strategy& strat, const InitConditions& init, const Interval& I,
                   const SimOptions& opts = {});

// Glass-box feasibility: runs every submodule's checker on its own ports of E
// during `judge`. E must carry signals for all ports (simulate outputs do).
std::map<std::string, Verdict> check_feasible(const Netlist& n, const Execution& E,
                                              const Interval& judge);
bool all_feasible(const std::map<std::string, Verdict>& verdicts);

}  // namespace tcirc
