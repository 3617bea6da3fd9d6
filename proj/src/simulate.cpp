#include "tcirc/simulate.hpp"

#include <algorithm>
#include <set>

namespace tcirc {

PortOverride PortOverride::scripted(Signal s, Interval window) {
    PortOverride o;
    o.mode = Mode::Scripted;
    o.forced = std::move(s);
    o.window = std::move(window);
    return o;
}

PortOverride PortOverride::byzantine(Signal s) {
    PortOverride o;
    o.mode = Mode::Byzantine;
    o.window = s.domain();
    o.forced = std::move(s);
    return o;
}

PortOverride PortOverride::crash(Time at) {
    PortOverride o;
    o.mode = Mode::Crash;
    o.crash_at = std::move(at);
    return o;
}

InitConditions InitConditions::adversarial(const Netlist& n, const Strategy& strat,
                                           const Interval& I, int max_pulses) {
    InitConditions init;
    const Time& lo = I.lo();
    for (const Instance& m : n.modules) {
        const std::string key = "init:" + m.id;
        if (m.kind.type == InstanceKind::Channel) {
            const Time span_hi = min(lo + m.kind.channel.d, I.hi());
            if (!(span_hi > lo))
                continue;
            const Interval span = Interval::closed(lo, span_hi);
            const auto mode = strat.uniform_int(key + ":mode", 4);
            const bool init_val = strat.bits(key + ":v") & 1;
            if (mode == 0) {
                init.channel_content.emplace(m.id, Signal::constant(span, false));
            } else if (mode == 1) {
                init.channel_content.emplace(m.id, Signal::constant(span, true));
            } else {
                const int k = 1 + static_cast<int>(strat.uniform_int(key + ":k", max_pulses));
                std::vector<Time> ts;
                for (int i = 0; i < 2 * k; ++i)
                    ts.push_back(lo + (span_hi - lo).scaled(
                                          strat.unit(key + ":t" + std::to_string(i))));
                std::sort(ts.begin(), ts.end());
                ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
                while (!ts.empty() && ts.front() == lo)
                    ts.erase(ts.begin());
                init.channel_content.emplace(m.id, Signal(span, init_val, std::move(ts)));
            }
        } else if (m.kind.type == InstanceKind::Mem) {
            init.mem_boundary.emplace(m.id,
                                      MemBoundary::adversarial(m.kind.mem, strat, lo, key));
        }
    }
    return init;
}

std::string InitConditions::describe() const {
    std::string s;
    for (const auto& [id, sig] : channel_content) {
        s += id + ": content init=" + std::to_string(sig.initial()) + " flips=[";
        bool first = true;
        for (const Time& t : sig.transitions()) {
            if (!first)
                s += ",";
            s += t.str();
            first = false;
        }
        s += "]; ";
    }
    for (const auto& [id, b] : mem_boundary) {
        s += id + ": y0=" + std::to_string(b.y0);
        if (b.pending_fall)
            s += " fall=" + b.pending_fall->str();
        s += "; ";
    }
    return s.empty() ? "quiescent" : s;
}

namespace {

struct RootState {
    bool value = false;          // visible on the wire
    bool shadow = false;         // module-produced value
    bool recorded_init = false;  // value at the interval start
    bool recorded_cur = false;
    std::vector<Time> transitions;
    const PortOverride* ov = nullptr;
};

struct ChannelState {
    const Instance* inst = nullptr;
    std::string in_root;
    std::string out_key;
    Time last_out;
    bool in_last = false;  // input value at the last scheduling decision
    const Signal* imitate = nullptr;
    size_t imitate_pos = 0;
};

struct MemState {
    const Instance* inst = nullptr;
    std::string x_root;
    std::string y_key;
    std::optional<Time> pending;
};

struct Ev {
    int type;  // 0 module set, 1 override set, 2 reconcile, 3 mem fall
    std::string target;
    bool value;
};

}  // namespace

SimResult simulate(const Netlist& n, const std::map<std::string, Signal>& inputs,
                   const Strategy& strat, const InitConditions& init, const Interval& I,
                   const SimOptions& opts) {
    require_valid(n);
    if (I.lo_unbounded() || I.hi_unbounded())
        throw DomainError("simulate requires a bounded interval");
    const Time& lo = I.lo();
    const Time& hi = I.hi();

    const bool bounded_has_min_lag = strat.policy() == Policy::Maximal;
    const GraphInfo g = graph_analysis(n, !bounded_has_min_lag);
    if (!g.every_cycle_delayed) {
        std::string cyc;
        for (const auto& id : g.undelayed_cycle)
            cyc += (cyc.empty() ? "" : " -> ") + id;
        throw ConfigError("zero-delay cycle rejected: " + cyc);
    }
    for (const Instance& m : n.modules)
        if (m.kind.type == InstanceKind::Channel && m.kind.channel.mode == ChannelMode::Inertial)
            throw ConfigError("inertial channels are not supported inside event simulation; "
                              "apply suppress_short_pulses to a generated trace instead (" +
                              m.id + ")");

    // Net roots: exported inputs by name, instance outputs as "id.port".
    std::map<std::string, RootState> roots;
    std::map<std::string, std::string> sink_root;  // instance input / exported output -> root
    for (const std::string& p : n.inputs)
        roots[p];
    for (const Instance& m : n.modules)
        for (const std::string& p : m.kind.output_ports())
            roots[m.id + "." + p];
    for (const Wire& w : n.wires)
        sink_root[w.to.str()] = w.from.exported() ? w.from.port : w.from.str();

    for (const auto& [key, ov] : opts.faults.overrides) {
        const auto it = roots.find(key);
        if (it == roots.end())
            throw ConfigError("fault override targets unknown output port '" + key + "'");
        it->second.ov = &ov;
    }

    // Input signals restricted to the run interval.
    std::map<std::string, Signal> in_sigs;
    for (const std::string& p : n.inputs) {
        const auto it = inputs.find(p);
        if (it == inputs.end())
            throw ConfigError("no input signal supplied for exported input '" + p + "'");
        in_sigs.emplace(p, it->second.restrict(I));
    }

    // Source output signals, generated up front.
    std::map<std::string, Signal> src_sigs;
    std::vector<ChannelState> channels;
    std::vector<MemState> mems;
    std::vector<const Instance*> gates;
    for (const Instance& m : n.modules) {
        switch (m.kind.type) {
        case InstanceKind::Source:
            src_sigs.emplace(m.id + ".out",
                             source_generate(m.kind.source, strat, I,
                                             opts.key_namespace + ":src:" + m.id));
            break;
        case InstanceKind::Channel: {
            ChannelState cs;
            cs.inst = &m;
            cs.in_root = sink_root.at(m.id + ".in");
            cs.out_key = m.id + ".out";
            cs.last_out = lo;
            const auto im = opts.imitate_channel.find(m.id);
            if (im != opts.imitate_channel.end())
                cs.imitate = &im->second;
            channels.push_back(std::move(cs));
            break;
        }
        case InstanceKind::Mem: {
            MemState ms;
            ms.inst = &m;
            ms.x_root = sink_root.at(m.id + ".x");
            ms.y_key = m.id + ".y";
            mems.push_back(std::move(ms));
            break;
        }
        case InstanceKind::Gate:
            gates.push_back(&m);
            break;
        }
    }

    // Zero-time gate layer must be acyclic; settle order is topological.
    std::map<std::string, std::vector<std::string>> gate_succ;
    std::map<std::string, int> gate_indeg;
    for (const Instance* gp : gates) {
        gate_succ[gp->id];
        gate_indeg[gp->id];
    }
    for (const Instance* gp : gates)
        for (const std::string& p : gp->kind.input_ports()) {
            const std::string& root = sink_root.at(gp->id + "." + p);
            const auto dot = root.find('.');
            if (dot != std::string::npos) {
                const std::string src = root.substr(0, dot);
                if (gate_indeg.count(src)) {
                    gate_succ[src].push_back(gp->id);
                    ++gate_indeg[gp->id];
                }
            }
        }
    std::vector<const Instance*> gate_order;
    {
        std::vector<std::string> ready;
        for (const auto& [id, deg] : gate_indeg)
            if (deg == 0)
                ready.push_back(id);
        std::sort(ready.begin(), ready.end());
        while (!ready.empty()) {
            const std::string id = ready.front();
            ready.erase(ready.begin());
            gate_order.push_back(&n.instance(id));
            for (const std::string& nxt : gate_succ[id])
                if (--gate_indeg[nxt] == 0) {
                    ready.push_back(nxt);
                    std::sort(ready.begin(), ready.end());
                }
        }
        if (gate_order.size() != gates.size())
            throw ConfigError("zero-time gate layer contains a cycle");
    }

    std::map<Time, std::vector<Ev>> queue;
    const auto enqueue = [&](const Time& t, Ev ev) {
        if (t <= hi)
            queue[t].push_back(std::move(ev));
    };

    size_t events = 0;
    const auto charge = [&](size_t k) {
        events += k;
        if (events > opts.budget_events) {
            std::string hot;
            size_t hot_n = 0;
            for (const auto& [key, r] : roots)
                if (r.transitions.size() >= hot_n) {
                    hot_n = r.transitions.size();
                    hot = key;
                }
            throw BudgetError("event budget exceeded (hottest port: " + hot + " with " +
                                  std::to_string(hot_n) + " transitions)",
                              hot);
        }
    };

    // A module writes through its override controller: scripted/byzantine
    // windows capture the write in the shadow; a crashed port freezes.
    const auto module_set = [&](const std::string& key, bool v, const Time& t) {
        RootState& r = roots.at(key);
        r.shadow = v;
        if (r.ov) {
            if (r.ov->mode == PortOverride::Mode::Crash && t > r.ov->crash_at)
                return;
            if (r.ov->mode != PortOverride::Mode::Crash && r.ov->window.contains(t))
                return;
        }
        r.value = v;
    };

    // --- initial values at the interval start -------------------------------
    for (const std::string& p : n.inputs)
        roots.at(p).value = roots.at(p).shadow = in_sigs.at(p).initial();
    for (const auto& [key, sig] : src_sigs)
        roots.at(key).shadow = roots.at(key).value = sig.initial();
    std::map<std::string, Signal> contents;
    for (ChannelState& cs : channels) {
        const Time span_hi = min(lo + cs.inst->kind.channel.d, hi);
        const auto given = init.channel_content.find(cs.inst->id);
        Signal content = given != init.channel_content.end()
                             ? given->second.restrict(Interval::closed(lo, span_hi))
                             : Signal::constant(Interval::closed(lo, span_hi), false);
        roots.at(cs.out_key).shadow = roots.at(cs.out_key).value = content.initial();
        if (!content.transitions().empty())
            cs.last_out = content.transitions().back();
        contents.emplace(cs.inst->id, std::move(content));
    }
    for (MemState& ms : mems) {
        const auto given = init.mem_boundary.find(ms.inst->id);
        const MemBoundary b = given != init.mem_boundary.end() ? given->second : MemBoundary::clean();
        roots.at(ms.y_key).shadow = roots.at(ms.y_key).value = b.y0;
        if (b.y0) {
            ms.pending = b.pending_fall.value_or(lo + ms.inst->kind.mem.T);
            enqueue(*ms.pending, Ev{3, ms.inst->id, false});
        }
    }

    // Settle one instant: gates in topo order, then mems; repeat for rises.
    const auto settle_instant = [&](const Time& t, const std::set<std::string>& fall_due) {
        std::set<std::string> falls = fall_due;
        for (size_t iter = 0;; ++iter) {
            if (iter > n.modules.size() + 2)
                throw ConfigError("instant fixed point did not converge at t=" + t.str());
            bool changed = false;
            for (const Instance* gp : gate_order) {
                std::vector<bool> in_vals;
                for (const std::string& p : gp->kind.input_ports())
                    in_vals.push_back(roots.at(sink_root.at(gp->id + "." + p)).value);
                const auto outs = gate_output_ports(gp->kind.gate);
                for (size_t oi = 0; oi < outs.size(); ++oi) {
                    const bool v = gate_truth(gp->kind.gate, in_vals, oi);
                    RootState& r = roots.at(gp->id + "." + outs[oi]);
                    const bool before = r.value;
                    if (r.shadow != v)
                        module_set(gp->id + "." + outs[oi], v, t);
                    changed |= r.value != before;
                }
            }
            for (MemState& ms : mems) {
                const bool x = roots.at(ms.x_root).value;
                if (falls.count(ms.inst->id) && ms.pending && *ms.pending == t) {
                    falls.erase(ms.inst->id);
                    if (x) {  // re-triggered at the fall instant, stays high
                        ms.pending = t + ms.inst->kind.mem.T;
                        enqueue(*ms.pending, Ev{3, ms.inst->id, false});
                    } else {
                        const bool before = roots.at(ms.y_key).value;
                        module_set(ms.y_key, false, t);
                        ms.pending.reset();
                        changed |= roots.at(ms.y_key).value != before;
                    }
                }
                if (!roots.at(ms.y_key).shadow && x) {
                    const bool before = roots.at(ms.y_key).value;
                    module_set(ms.y_key, true, t);
                    ms.pending = t + ms.inst->kind.mem.T;
                    enqueue(*ms.pending, Ev{3, ms.inst->id, false});
                    changed |= roots.at(ms.y_key).value != before;
                }
            }
            if (!changed)
                break;
        }
    };

    settle_instant(lo, {});
    for (auto& [key, r] : roots)
        r.recorded_init = r.recorded_cur = r.value;

    // Queue the externally driven transitions.
    for (const std::string& p : n.inputs)
        for (const Time& t : in_sigs.at(p).transitions())
            enqueue(t, Ev{0, p, in_sigs.at(p).value_at(t)});
    for (const auto& [key, sig] : src_sigs)
        for (const Time& t : sig.transitions())
            enqueue(t, Ev{0, key, sig.value_at(t)});
    for (ChannelState& cs : channels) {
        const Signal& content = contents.at(cs.inst->id);
        for (const Time& t : content.transitions())
            enqueue(t, Ev{0, cs.out_key, content.value_at(t)});
        // Seam: from lo + d on, the output follows the recorded input.
        const Time seam = lo + cs.inst->kind.channel.d;
        if (seam <= hi) {
            const bool v = roots.at(cs.in_root).value;
            if (content.final_value() != v) {
                enqueue(seam, Ev{0, cs.out_key, v});
                if (cs.inst->kind.channel.mode == ChannelMode::Bounded)
                    cs.last_out = max(cs.last_out, seam);
            }
        }
    }
    for (const auto& [key, ovr] : opts.faults.overrides) {
        const PortOverride& ov = ovr;
        if (ov.mode == PortOverride::Mode::Crash)
            continue;
        const Signal& forced = *ov.forced;
        const auto win = ov.window.intersect(I);
        if (!win)
            continue;
        enqueue(win->lo(), Ev{1, key, forced.value_at(win->lo())});
        for (const Time& t : forced.transitions_in(*win))
            enqueue(t, Ev{1, key, forced.value_at(t)});
        if (ov.mode == PortOverride::Mode::Scripted && !ov.window.contains(hi) &&
            !ov.window.hi_unbounded())
            enqueue(ov.window.hi(), Ev{2, key, false});
    }

    for (ChannelState& cs : channels)
        cs.in_last = roots.at(cs.in_root).value;

    // A channel schedules one delivery per input edge; deliveries may land in
    // the very instant being processed (zero-delay draws), hence the inner
    // loop that drains an instant to a fixed point before recording it.
    const auto react_channels = [&](const Time& t) {
        for (ChannelState& cs : channels) {
            const bool v = roots.at(cs.in_root).value;
            if (v == cs.in_last)
                continue;
            cs.in_last = v;
            const ChannelParams& cp = cs.inst->kind.channel;
            if (cp.mode == ChannelMode::Pure) {
                enqueue(t + cp.d, Ev{0, cs.out_key, v});
                continue;
            }
            // Bounded: strictly increasing outputs; optionally imitate a
            // target trace where its next edge is legal for this input edge.
            Time o(0);
            bool picked = false;
            if (cs.imitate) {
                const auto& ts = cs.imitate->transitions();
                size_t i = cs.imitate_pos;
                while (i < ts.size() && (ts[i] <= cs.last_out || ts[i] < t))
                    ++i;
                if (i < ts.size() && ts[i] <= t + cp.d && cs.imitate->value_at(ts[i]) == v) {
                    o = ts[i];
                    cs.imitate_pos = i + 1;
                    picked = true;
                }
            }
            if (!picked) {
                const std::string key =
                    opts.key_namespace + ":chn:" + cs.inst->id + ":" + t.str();
                o = (t > cs.last_out) ? strat.draw(key, t, t + cp.d)
                                      : strat.draw_above(key, cs.last_out, t + cp.d);
            }
            cs.last_out = o;
            enqueue(o, Ev{0, cs.out_key, v});
        }
    };

    // --- main loop -----------------------------------------------------------
    while (!queue.empty()) {
        const Time t = queue.begin()->first;
        while (!queue.empty() && queue.begin()->first == t) {
            std::vector<Ev> evs = std::move(queue.begin()->second);
            queue.erase(queue.begin());
            charge(evs.size());

            std::set<std::string> fall_due;
            std::stable_sort(evs.begin(), evs.end(),
                             [](const Ev& a, const Ev& b) { return a.type < b.type; });
            for (const Ev& ev : evs) {
                switch (ev.type) {
                case 0:
                    module_set(ev.target, ev.value, t);
                    break;
                case 1:
                    roots.at(ev.target).value = ev.value;
                    break;
                case 2:
                    roots.at(ev.target).value = roots.at(ev.target).shadow;
                    break;
                case 3:
                    fall_due.insert(ev.target);
                    break;
                }
            }
            settle_instant(t, fall_due);
            react_channels(t);
        }
        for (auto& [key, r] : roots) {
            if (r.value != r.recorded_cur) {
                r.recorded_cur = r.value;
                if (t == lo)
                    r.recorded_init = r.value;
                else
                    r.transitions.push_back(t);
            }
        }
    }

    // --- collect signals -----------------------------------------------------
    Execution exec;
    exec.interval = I;
    std::map<std::string, Signal> root_sigs;
    for (const auto& [key, r] : roots)
        root_sigs.emplace(key, Signal(I, r.recorded_init, r.transitions));
    for (const auto& [key, sig] : root_sigs)
        exec.ports.emplace(key, sig);
    for (const std::string& p : n.outputs) {
        const auto it = sink_root.find(p);
        if (it != sink_root.end())
            exec.ports.emplace(p, root_sigs.at(it->second));
    }
    for (const Instance& m : n.modules)
        for (const std::string& p : m.kind.input_ports()) {
            const std::string sink = m.id + "." + p;
            exec.ports.emplace(sink, root_sigs.at(sink_root.at(sink)));
        }
    SimResult res;
    res.exec = std::move(exec);
    res.events = events;
    return res;
}

std::map<std::string, Verdict> check_feasible(const Netlist& n, const Execution& E,
                                              const Interval& judge) {
    std::map<std::string, Verdict> out;
    for (const Instance& m : n.modules) {
        switch (m.kind.type) {
        case InstanceKind::Channel:
            out.emplace(m.id, channel_check(m.kind.channel, E.at(m.id + ".in"),
                                            E.at(m.id + ".out"), judge));
            break;
        case InstanceKind::Mem:
            out.emplace(m.id,
                        mem_check(m.kind.mem, E.at(m.id + ".x"), E.at(m.id + ".y"), judge));
            break;
        case InstanceKind::Gate: {
            std::vector<Signal> ins, outs;
            for (const std::string& p : m.kind.input_ports())
                ins.push_back(E.at(m.id + "." + p));
            for (const std::string& p : m.kind.output_ports())
                outs.push_back(E.at(m.id + "." + p));
            out.emplace(m.id, gate_check(m.kind.gate, ins, outs, judge));
            break;
        }
        case InstanceKind::Source:
            out.emplace(m.id, source_check(m.kind.source, E.at(m.id + ".out"), judge));
            break;
        }
    }
    return out;
}

bool all_feasible(const std::map<std::string, Verdict>& verdicts) {
    return std::all_of(verdicts.begin(), verdicts.end(),
                       [](const auto& kv) { return kv.second.feasible; });
}

}  // namespace tcirc
