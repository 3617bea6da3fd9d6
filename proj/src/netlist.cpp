#include "tcirc/netlist.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace tcirc {

using nlohmann::json;

std::vector<std::string> InstanceKind::input_ports() const {
    switch (type) {
    case Channel: return {"in"};
    case Gate: return gate_input_ports(gate);
    case Mem: return {"x"};
    case Source: return {};
    }
    return {};
}

std::vector<std::string> InstanceKind::output_ports() const {
    switch (type) {
    case Channel: return {"out"};
    case Gate: return gate_output_ports(gate);
    case Mem: return {"y"};
    case Source: return {"out"};
    }
    return {};
}

std::string InstanceKind::describe() const {
    switch (type) {
    case Channel:
        switch (channel.mode) {
        case ChannelMode::Pure: return "channel(pure, d=" + channel.d.str() + ")";
        case ChannelMode::Bounded: return "channel(bounded, d=" + channel.d.str() + ")";
        default:
            return "channel(inertial, d=" + channel.d.str() +
                   ", threshold=" + channel.inertial_threshold.str() + ")";
        }
    case Gate: return to_string(gate);
    case Mem: return "mem(T=" + mem.T.str() + ")";
    case Source: return "source";
    }
    return "?";
}

PortRef PortRef::parse(const std::string& text) {
    const auto dot = text.find('.');
    if (dot == std::string::npos)
        return PortRef{"", text};
    return PortRef{text.substr(0, dot), text.substr(dot + 1)};
}

const Instance& Netlist::instance(const std::string& id) const {
    for (const Instance& m : modules)
        if (m.id == id)
            return m;
    throw ConfigError("netlist '" + name + "' has no instance '" + id + "'");
}

bool Netlist::has_instance(const std::string& id) const {
    return std::any_of(modules.begin(), modules.end(),
                       [&](const Instance& m) { return m.id == id; });
}

const PortRef* Netlist::driver_of(const PortRef& sink) const {
    for (const Wire& w : wires)
        if (w.to == sink)
            return &w.from;
    return nullptr;
}

std::vector<std::string> validate(const Netlist& n) {
    std::vector<std::string> bad;
    std::set<std::string> ids;
    for (const Instance& m : n.modules)
        if (!ids.insert(m.id).second)
            bad.push_back("duplicate instance id '" + m.id + "'");

    const auto known_output = [&](const PortRef& r) {
        if (r.exported())
            return std::find(n.inputs.begin(), n.inputs.end(), r.port) != n.inputs.end();
        if (!n.has_instance(r.instance))
            return false;
        const auto ports = n.instance(r.instance).kind.output_ports();
        return std::find(ports.begin(), ports.end(), r.port) != ports.end();
    };
    const auto known_input = [&](const PortRef& r) {
        if (r.exported())
            return std::find(n.outputs.begin(), n.outputs.end(), r.port) != n.outputs.end();
        if (!n.has_instance(r.instance))
            return false;
        const auto ports = n.instance(r.instance).kind.input_ports();
        return std::find(ports.begin(), ports.end(), r.port) != ports.end();
    };

    std::map<std::string, int> drive_count;
    for (const Wire& w : n.wires) {
        if (!known_output(w.from))
            bad.push_back("wire source " + w.from.str() + " is not an exported input or a submodule output");
        if (!known_input(w.to))
            bad.push_back("wire sink " + w.to.str() + " is not an exported output or a submodule input");
        ++drive_count[w.to.str()];
    }
    for (const auto& [port, cnt] : drive_count)
        if (cnt > 1)
            bad.push_back("port " + port + " driven " + std::to_string(cnt) + " times");

    for (const Instance& m : n.modules)
        for (const std::string& p : m.kind.input_ports())
            if (!drive_count.count(m.id + "." + p))
                bad.push_back("input " + m.id + "." + p + " is neither exported nor driven");
    for (const std::string& p : n.outputs)
        if (!drive_count.count(p))
            bad.push_back("exported output " + p + " is not driven");
    for (const std::string& p : n.inputs)
        if (std::find(n.outputs.begin(), n.outputs.end(), p) != n.outputs.end())
            bad.push_back("port '" + p + "' is both an exported input and output");
    return bad;
}

void require_valid(const Netlist& n) {
    const auto bad = validate(n);
    if (bad.empty())
        return;
    std::string msg = "netlist '" + n.name + "' is not well-formed:";
    for (const auto& b : bad)
        msg += "\n  - " + b;
    throw ConfigError(msg);
}

namespace {

bool instance_delayed(const Instance& m, bool min_policy_lag_zero) {
    switch (m.kind.type) {
    case InstanceKind::Channel:
        if (m.kind.channel.mode == ChannelMode::Pure)
            return m.kind.channel.d.sign() > 0;
        if (m.kind.channel.mode == ChannelMode::Bounded)
            return !min_policy_lag_zero;
        return m.kind.channel.d.sign() > 0;
    case InstanceKind::Mem:
        return true;
    default:
        return false;
    }
}

}  // namespace

GraphInfo graph_analysis(const Netlist& n, bool min_policy_lag_zero) {
    std::map<std::string, std::set<std::string>> succ;
    for (const Instance& m : n.modules)
        succ[m.id];
    for (const Wire& w : n.wires)
        if (!w.from.exported() && !w.to.exported())
            succ[w.from.instance].insert(w.to.instance);

    GraphInfo info;

    // Simple cycle enumeration by DFS from each node (small graphs).
    std::vector<std::string> order;
    for (const auto& [id, _] : succ)
        order.push_back(id);
    std::set<std::vector<std::string>> seen;
    for (const std::string& root : order) {
        std::vector<std::string> path{root};
        std::set<std::string> onpath{root};
        const std::function<void(const std::string&)> dfs = [&](const std::string& v) {
            for (const std::string& w : succ[v]) {
                if (w == root && path.size() >= 1) {
                    // canonicalize: rotate so the smallest id is first
                    std::vector<std::string> cyc = path;
                    const auto mn = std::min_element(cyc.begin(), cyc.end());
                    std::rotate(cyc.begin(), mn, cyc.end());
                    if (seen.insert(cyc).second)
                        info.cycles.push_back(cyc);
                } else if (!onpath.count(w) && w >= root) {
                    path.push_back(w);
                    onpath.insert(w);
                    dfs(w);
                    path.pop_back();
                    onpath.erase(w);
                }
            }
        };
        dfs(root);
    }
    info.acyclic = info.cycles.empty();

    for (const auto& cyc : info.cycles) {
        const bool delayed = std::any_of(cyc.begin(), cyc.end(), [&](const std::string& id) {
            return instance_delayed(n.instance(id), min_policy_lag_zero);
        });
        if (!delayed) {
            info.every_cycle_delayed = false;
            info.undelayed_cycle = cyc;
            break;
        }
    }
    return info;
}

InstanceKind::Type kind_type_from_string(const std::string& s) {
    if (s == "channel")
        return InstanceKind::Channel;
    if (s == "mem")
        return InstanceKind::Mem;
    if (s == "source")
        return InstanceKind::Source;
    return InstanceKind::Gate;  // gates are named by their function
}

namespace {

json kind_to_json(const InstanceKind& k) {
    json j;
    switch (k.type) {
    case InstanceKind::Channel: {
        j["kind"] = "channel";
        json p;
        p["mode"] = k.channel.mode == ChannelMode::Pure      ? "pure"
                    : k.channel.mode == ChannelMode::Bounded ? "bounded"
                                                             : "inertial";
        p["d"] = k.channel.d.str();
        if (k.channel.mode == ChannelMode::Inertial)
            p["threshold"] = k.channel.inertial_threshold.str();
        j["params"] = p;
        break;
    }
    case InstanceKind::Gate:
        j["kind"] = to_string(k.gate);
        break;
    case InstanceKind::Mem:
        j["kind"] = "mem";
        j["params"] = json{{"T", k.mem.T.str()}};
        break;
    case InstanceKind::Source: {
        j["kind"] = "source";
        json p;
        switch (k.source.kind) {
        case SourceKind::Constant:
            p["type"] = "constant";
            p["value"] = k.source.value ? 1 : 0;
            break;
        case SourceKind::Step:
            p["type"] = "step";
            p["t0"] = k.source.t0.str();
            p["value"] = k.source.value ? 1 : 0;
            break;
        case SourceKind::SinglePulse:
            p["type"] = "pulse";
            p["t0"] = k.source.t0.str();
            p["width"] = k.source.width.str();
            break;
        case SourceKind::RandomPulse:
            p["type"] = "random-pulse";
            p["t0"] = k.source.t0.str();
            p["width_min"] = k.source.width_min.str();
            p["width_max"] = k.source.width_max.str();
            break;
        }
        j["params"] = p;
        break;
    }
    }
    return j;
}

InstanceKind kind_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "channel") {
        const json& p = j.at("params");
        const std::string mode = p.value("mode", "pure");
        ChannelParams cp;
        if (mode == "pure")
            cp = ChannelParams::pure(Time::parse(p.at("d").get<std::string>()));
        else if (mode == "bounded")
            cp = ChannelParams::bounded(Time::parse(p.at("d").get<std::string>()));
        else if (mode == "inertial")
            cp = ChannelParams::inertial(Time::parse(p.at("d").get<std::string>()),
                                         Time::parse(p.at("threshold").get<std::string>()));
        else
            throw ConfigError("unknown channel mode '" + mode + "'");
        return InstanceKind::make_channel(cp);
    }
    if (kind == "mem") {
        return InstanceKind::make_mem(MemParams{Time::parse(j.at("params").at("T").get<std::string>())});
    }
    if (kind == "source") {
        const json& p = j.at("params");
        const std::string type = p.at("type").get<std::string>();
        SourceParams sp;
        if (type == "constant") {
            sp.kind = SourceKind::Constant;
            sp.value = p.at("value").get<int>() != 0;
        } else if (type == "step") {
            sp.kind = SourceKind::Step;
            sp.t0 = Time::parse(p.at("t0").get<std::string>());
            sp.value = p.at("value").get<int>() != 0;
        } else if (type == "pulse") {
            sp.kind = SourceKind::SinglePulse;
            sp.t0 = Time::parse(p.at("t0").get<std::string>());
            sp.width = Time::parse(p.at("width").get<std::string>());
        } else if (type == "random-pulse") {
            sp.kind = SourceKind::RandomPulse;
            if (p.contains("t0"))
                sp.t0 = Time::parse(p.at("t0").get<std::string>());
            sp.width_min = Time::parse(p.at("width_min").get<std::string>());
            sp.width_max = Time::parse(p.at("width_max").get<std::string>());
        } else {
            throw ConfigError("unknown source type '" + type + "'");
        }
        return InstanceKind::make_source(sp);
    }
    return InstanceKind::make_gate(gate_from_string(kind));
}

}  // namespace

std::string Netlist::to_json() const {
    json j;
    j["name"] = name;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    j["modules"] = json::array();
    for (const Instance& m : modules) {
        json mj = kind_to_json(m.kind);
        mj["id"] = m.id;
        j["modules"].push_back(mj);
    }
    j["wires"] = json::array();
    for (const Wire& w : wires)
        j["wires"].push_back(json{{"from", w.from.str()}, {"to", w.to.str()}});
    return j.dump(2) + "\n";
}

Netlist Netlist::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("netlist JSON: ") + e.what());
    }
    try {
        Netlist n;
        n.name = j.value("name", "netlist");
        for (const auto& s : j.value("inputs", json::array()))
            n.inputs.push_back(s.get<std::string>());
        for (const auto& s : j.value("outputs", json::array()))
            n.outputs.push_back(s.get<std::string>());
        for (const auto& mj : j.value("modules", json::array()))
            n.modules.push_back(Instance{mj.at("id").get<std::string>(), kind_from_json(mj)});
        for (const auto& wj : j.value("wires", json::array()))
            n.wires.push_back(Wire{PortRef::parse(wj.at("from").get<std::string>()),
                                   PortRef::parse(wj.at("to").get<std::string>())});
        return n;
    } catch (const json::exception& e) {
        throw ParseError(std::string("netlist JSON structure: ") + e.what());
    }
}

Netlist Netlist::load(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw ConfigError("cannot open netlist file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return from_json_text(ss.str());
}

void Netlist::save(const std::string& path) const {
    std::ofstream f(path);
    if (!f)
        throw ConfigError("cannot write netlist file '" + path + "'");
    f << to_json();
}

}  // namespace tcirc
