// Compound modules: submodule instances, wiring, exported ports. Validation
// enforces the well-formedness constraints (every exported output driven by
// exactly one source, every submodule input driven exactly once, no double
// drive); the circuit graph analysis reports cycles and whether every cycle
// passes through an element with positive response lag.
#pragma once

#include "tcirc/modules.hpp"

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace tcirc {

struct InstanceKind {
    enum Type { Channel, Gate, Mem, Source } type;
    ChannelParams channel;
    GateKind gate;
    MemParams mem;
    SourceParams source;

    static InstanceKind make_channel(ChannelParams p) {
        InstanceKind k;
        k.type = Channel;
        k.channel = std::move(p);
        return k;
    }
    static InstanceKind make_gate(GateKind g) {
        InstanceKind k;
        k.type = Gate;
        k.gate = g;
        return k;
    }
    static InstanceKind make_mem(MemParams p) {
        InstanceKind k;
        k.type = Mem;
        k.mem = std::move(p);
        return k;
    }
    static InstanceKind make_source(SourceParams p) {
        InstanceKind k;
        k.type = Source;
        k.source = std::move(p);
        return k;
    }

    std::vector<std::string> input_ports() const;
    std::vector<std::string> output_ports() const;
    std::string describe() const;
};

InstanceKind::Type kind_type_from_string(const std::string& s);

struct Instance {
    std::string id;
    InstanceKind kind;
};

// Endpoint of a wire: either an exported port name or "instance.port".
struct PortRef {
    std::string instance;  // empty for an exported port
    std::string port;

    bool exported() const { return instance.empty(); }
    std::string str() const { return exported() ? port : instance + "." + port; }
    static PortRef parse(const std::string& text);
    friend bool operator==(const PortRef&, const PortRef&) = default;
    friend auto operator<=>(const PortRef&, const PortRef&) = default;
};

struct Wire {
    PortRef from;
    PortRef to;
};

struct Netlist {
    std::string name;
    std::vector<std::string> inputs;   // exported input ports
    std::vector<std::string> outputs;  // exported output ports
    std::vector<Instance> modules;
    std::vector<Wire> wires;

    const Instance& instance(const std::string& id) const;
    bool has_instance(const std::string& id) const;
    // Driver of a submodule input or exported output; nullptr when undriven.
    const PortRef* driver_of(const PortRef& sink) const;

    std::string to_json() const;
    static Netlist from_json_text(const std::string& text);
    static Netlist load(const std::string& path);
    void save(const std::string& path) const;
};

// Well-formedness violations as data; empty means valid.
std::vector<std::string> validate(const Netlist& n);
void require_valid(const Netlist& n);  // throws ConfigError listing violations

struct GraphInfo {
    bool acyclic = true;
    std::vector<std::vector<std::string>> cycles;  // instance id loops
    bool every_cycle_delayed = true;
    std::vector<std::string> undelayed_cycle;  // witness when not
};

// `min_policy_lag_zero`: treat bounded channels as zero-lag (true unless the
// run policy guarantees a positive minimum delay).
GraphInfo graph_analysis(const Netlist& n, bool min_policy_lag_zero = true);

}  // namespace tcirc
