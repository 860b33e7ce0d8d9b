#include "dtnattack/netsim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "dtnattack/common/error.hpp"
#include "dtnattack/common/random.hpp"
#include "dtnattack/common/text.hpp"
#include "dtnattack/genome/serialization.hpp"
#include "dtnattack/mobility/trajectory.hpp"
#include "dtnattack/netsim/replay.hpp"

namespace dtn::netsim {

namespace {

constexpr double kTimeEps = 1e-9;

// Stream salts for derived seeds.
constexpr std::uint64_t kHonestMobility = 1;
constexpr std::uint64_t kAttackerMobility = 2;
constexpr std::uint64_t kTraffic = 3;
constexpr std::uint64_t kFlooder = 4;
constexpr std::uint64_t kEvaluationSeeds = 5;

std::vector<genome::AttackerGenome> sortedAttackers(std::vector<genome::AttackerGenome> attackers) {
    std::vector<std::pair<std::string, genome::AttackerGenome>> keyed;
    keyed.reserve(attackers.size());
    for (auto& a : attackers) keyed.emplace_back(genome::formatGenome(a), std::move(a));
    std::stable_sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<genome::AttackerGenome> out;
    out.reserve(keyed.size());
    for (auto& [key, a] : keyed) out.push_back(std::move(a));
    return out;
}

/// Tracks link lifetimes between ticks to emit ContactEvents.
class ContactRecorder {
public:
    void update(const std::vector<Link>& links, double t) {
        std::vector<std::pair<Link, double>> next;
        next.reserve(links.size());
        auto it = open_.begin();
        for (const auto& l : links) {
            while (it != open_.end() && it->first < l) close(*it++, t);
            if (it != open_.end() && it->first == l) {
                next.push_back(*it++);
            } else {
                next.emplace_back(l, t);
            }
        }
        while (it != open_.end()) close(*it++, t);
        open_ = std::move(next);
    }

    std::vector<ContactEvent> finish(double t) {
        for (const auto& o : open_) close(o, t);
        open_.clear();
        std::sort(events_.begin(), events_.end(), [](const ContactEvent& x, const ContactEvent& y) {
            return std::tie(x.start, x.nodeA, x.nodeB, x.interface) < std::tie(y.start, y.nodeA, y.nodeB, y.interface);
        });
        return std::move(events_);
    }

private:
    void close(const std::pair<Link, double>& o, double t) {
        events_.push_back({o.first.a, o.first.b, o.second, t, o.first.interface});
    }

    std::vector<std::pair<Link, double>> open_;
    std::vector<ContactEvent> events_;
};

}  // namespace

std::vector<NodeSpec> buildNodes(const SimConfig& config) {
    if (!config.scenario) throw ValidationError("simulation config has no scenario");
    const auto& sc = *config.scenario;
    std::vector<NodeSpec> nodes;
    NodeId next = 0;
    for (const auto& h : sc.params().honest) {
        if (h.count == 0) continue;
        const auto& cls = sc.movementClass(h.movementClass);
        for (int i = 0; i < h.count; ++i)
            nodes.push_back({next++, Role::Honest, cls.name, sc.interfacesFor(cls), sc.bufferFor(cls)});
    }
    const auto honest = next;
    for (const auto id : config.convertedToBlackHole) {
        if (id < 0 || id >= honest) throw ValidationError("only honest nodes can be converted to black holes");
        nodes[static_cast<std::size_t>(id)].role = Role::BlackHole;
    }
    const auto space = sc.genomeSpace(1, std::numeric_limits<int>::max());
    for (const auto& a : sortedAttackers(config.attackers)) {
        space.validate(a);
        const auto& cls = sc.movementClass(a.movement);
        const Role role = a.logic == genome::AttackLogic::BlackHole ? Role::BlackHole : Role::Flooder;
        nodes.push_back({next++, role, cls.name, sc.interfacesFor(cls), sc.bufferFor(cls)});
    }
    return nodes;
}

namespace {

struct RadioTable {
    std::vector<double> range2;
    double maxRange2 = 0.0;
    explicit RadioTable(const std::vector<RadioInterface>& interfaces) {
        for (const auto& iface : interfaces) {
            range2.push_back(iface.range * iface.range);
            maxRange2 = std::max(maxRange2, range2.back());
        }
    }
};

std::uint8_t maskOf(const std::vector<InterfaceId>& interfaces) {
    std::uint8_t mask = 0;
    for (const auto iface : interfaces) mask |= static_cast<std::uint8_t>(1u << iface);
    return mask;
}

std::int64_t firstTickAtOrAfter(double time, double tick) {
    auto i = static_cast<std::int64_t>(std::floor(time / tick));
    while (static_cast<double>(i) * tick < time - kTimeEps) ++i;
    while (i > 0 && static_cast<double>(i - 1) * tick >= time - kTimeEps) --i;
    return i;
}

}  // namespace

HonestReplay buildHonestReplay(const Scenario& sc, std::uint64_t seed) {
    const auto& p = sc.params();
    std::vector<mobility::Trajectory> movers;
    std::vector<std::uint8_t> masks;
    NodeId id = 0;
    for (const auto& h : p.honest) {
        if (h.count == 0) continue;
        const auto& cls = sc.movementClass(h.movementClass);
        auto graph = sc.graphFor(cls.name);
        for (int i = 0; i < h.count; ++i, ++id) {
            movers.emplace_back(graph, cls, mobility::HonestWaypoints(graph, sc.cityMap().specialPoiWeight()),
                                Rng(deriveSeed(seed, kHonestMobility, id)));
            masks.push_back(maskOf(sc.interfacesFor(cls)));
        }
    }
    const RadioTable radio(p.interfaces);

    HonestReplay r;
    r.honest = movers.size();
    r.firstTick = firstTickAtOrAfter(p.warmup, p.tick);
    const auto endTick = firstTickAtOrAfter(p.warmup + p.duration, p.tick);
    r.ticks = std::max<std::int64_t>(0, endTick - r.firstTick);
    r.positions.reserve(static_cast<std::size_t>(r.ticks) * r.honest);
    r.linkStart.reserve(static_cast<std::size_t>(r.ticks) + 1);
    r.linkStart.push_back(0);

    std::vector<mobility::Position> pos(movers.size());
    for (std::size_t i = 0; i < movers.size(); ++i) pos[i] = movers[i].position();
    for (std::int64_t tick = 0; tick < endTick; ++tick) {
        if (tick > 0)
            for (std::size_t i = 0; i < movers.size(); ++i) pos[i] = movers[i].advance(p.tick);
        if (tick < r.firstTick) continue;
        r.positions.insert(r.positions.end(), pos.begin(), pos.end());
        for (std::size_t a = 0; a < pos.size(); ++a) {
            for (std::size_t b = a + 1; b < pos.size(); ++b) {
                const double dx = pos[a].x - pos[b].x;
                const double dy = pos[a].y - pos[b].y;
                const double d2 = dx * dx + dy * dy;
                if (d2 > radio.maxRange2) continue;
                appendLinks(r.links, static_cast<NodeId>(a), static_cast<NodeId>(b), d2, masks[a] & masks[b],
                            radio.range2);
            }
        }
        r.linkStart.push_back(r.links.size());
    }
    return r;
}

SimResult runSimulation(const SimConfig& config) {
    auto nodes = buildNodes(config);
    const auto& sc = *config.scenario;
    const auto& p = sc.params();
    const auto attackers = sortedAttackers(config.attackers);
    const auto replay = sc.honestReplay(config.seed);
    const auto honestCount = static_cast<NodeId>(replay->honest);

    // Attackers move from t = 0 like everyone else.
    std::vector<mobility::Trajectory> movers;
    movers.reserve(attackers.size());
    for (std::size_t i = 0; i < attackers.size(); ++i) {
        const auto& cls = sc.movementClass(attackers[i].movement);
        movers.emplace_back(sc.graphFor(cls.name), cls,
                            mobility::AttackerWaypoints(sc.gridIndexFor(cls.name), attackers[i].pois),
                            Rng(deriveSeed(config.seed, kAttackerMobility, i)));
    }

    std::vector<NodeId> endpoints;
    for (NodeId id = 0; id < honestCount; ++id)
        if (nodes[static_cast<std::size_t>(id)].role == Role::Honest) endpoints.push_back(id);
    if (endpoints.size() < 2) throw ValidationError("honest traffic needs at least 2 honest endpoints");

    std::vector<NodeId> flooders;
    for (const auto& n : nodes)
        if (n.role == Role::Flooder) flooders.push_back(n.id);

    std::vector<std::uint8_t> masks;
    for (const auto& n : nodes) masks.push_back(maskOf(n.interfaces));
    const RadioTable radio(p.interfaces);

    Engine engine(std::move(nodes), p.interfaces, p.tick, p.ttl, config.seed, config.recordEvents);

    const double trafficEnd = p.warmup + p.duration;
    const std::int64_t endTick =
        firstTickAtOrAfter(config.stopAt ? std::min(*config.stopAt, trafficEnd) : trafficEnd, p.tick);
    Rng traffic(deriveSeed(config.seed, kTraffic));
    std::vector<Rng> floodRngs;
    for (std::size_t i = 0; i < flooders.size(); ++i) floodRngs.emplace_back(deriveSeed(config.seed, kFlooder, i));
    std::int64_t honestIssued = 0;
    std::int64_t floodIssued = 0;  // same schedule for every flooder

    std::vector<mobility::Position> attackerPos(movers.size());
    for (std::size_t i = 0; i < movers.size(); ++i) attackerPos[i] = movers[i].position();
    std::vector<Link> links;
    std::vector<Injection> injections;
    ContactRecorder recorder;
    double t = 0.0;
    for (std::int64_t tick = 0; tick < endTick; ++tick) {
        t = static_cast<double>(tick) * p.tick;
        if (tick > 0)
            for (std::size_t i = 0; i < movers.size(); ++i) attackerPos[i] = movers[i].advance(p.tick);
        // Nothing can be in flight before traffic starts.
        if (tick < replay->firstTick) continue;

        const auto honestPos = replay->positionsAt(tick);
        const auto honestLinks = replay->linksAt(tick);
        links.assign(honestLinks.begin(), honestLinks.end());
        if (!movers.empty()) {
            for (std::size_t i = 0; i < movers.size(); ++i) {
                const auto a = static_cast<std::size_t>(honestCount) + i;
                for (std::size_t b = 0; b < a; ++b) {
                    const auto& q = b < honestPos.size() ? honestPos[b] : attackerPos[b - honestPos.size()];
                    const double dx = attackerPos[i].x - q.x;
                    const double dy = attackerPos[i].y - q.y;
                    const double d2 = dx * dx + dy * dy;
                    if (d2 > radio.maxRange2) continue;
                    appendLinks(links, static_cast<NodeId>(b), static_cast<NodeId>(a), d2, masks[a] & masks[b],
                                radio.range2);
                }
            }
            std::sort(links.begin(), links.end());
        }

        injections.clear();
        for (;; ++honestIssued) {
            const double due = p.warmup + static_cast<double>(honestIssued) * p.honestInterval;
            if (due > t + kTimeEps || due >= trafficEnd - kTimeEps) break;
            const auto src = traffic.below(endpoints.size());
            auto dst = traffic.below(endpoints.size() - 1);
            if (dst >= src) ++dst;
            injections.push_back({endpoints[src], endpoints[dst], p.honestSize, true});
        }
        for (;; ++floodIssued) {
            const double due = p.warmup + static_cast<double>(floodIssued) * p.flooderInterval;
            if (due > t + kTimeEps || due >= trafficEnd - kTimeEps) break;
            for (std::size_t i = 0; i < flooders.size(); ++i) {
                const auto dst = endpoints[floodRngs[i].below(endpoints.size())];
                injections.push_back({flooders[i], dst, p.floodSize, false});
            }
        }

        engine.step(tick, t, links, injections);
        if (config.recordContacts) recorder.update(links, t);
        if (config.observer) config.observer(engine.state());
    }

    auto result = engine.result();
    if (config.recordContacts) result.contactTrace = recorder.finish(t + p.tick);
    return result;
}

SimResult runSimulation(const ScriptedScenario& sc) {
    if (!(sc.duration > 0.0) || !(sc.tick > 0.0)) throw ValidationError("scripted run needs positive duration and tick");
    for (const auto& c : sc.contacts) {
        if (!(c.start < c.end)) throw ValidationError("contact needs start < end");
        if (c.nodeA == c.nodeB) throw ValidationError("contact needs two distinct nodes");
        for (const auto n : {c.nodeA, c.nodeB}) {
            if (n < 0 || n >= static_cast<NodeId>(sc.nodes.size())) throw ValidationError("contact with unknown node");
            const auto& ifs = sc.nodes[static_cast<std::size_t>(n)].interfaces;
            if (std::find(ifs.begin(), ifs.end(), c.interface) == ifs.end())
                throw ValidationError("contact on an interface a node lacks");
        }
    }
    auto messages = sc.messages;
    std::stable_sort(messages.begin(), messages.end(),
                     [](const ScriptedMessage& x, const ScriptedMessage& y) { return x.time < y.time; });

    Engine engine(sc.nodes, sc.interfaces, sc.tick, sc.ttl, sc.seed, sc.recordEvents);
    std::size_t nextMessage = 0;
    std::vector<Link> links;
    std::vector<Injection> injections;
    for (std::int64_t tick = 0;; ++tick) {
        const double t = static_cast<double>(tick) * sc.tick;
        if (t >= sc.duration - kTimeEps) break;
        links.clear();
        for (const auto& c : sc.contacts)
            if (c.start <= t + kTimeEps && t < c.end - kTimeEps)
                links.push_back({std::min(c.nodeA, c.nodeB), std::max(c.nodeA, c.nodeB), c.interface});
        std::sort(links.begin(), links.end());
        links.erase(std::unique(links.begin(), links.end()), links.end());

        injections.clear();
        while (nextMessage < messages.size() && messages[nextMessage].time <= t + kTimeEps) {
            const auto& m = messages[nextMessage++];
            injections.push_back({m.source, m.destination, m.size, m.honest});
        }
        engine.step(tick, t, links, injections);
        if (sc.observer) sc.observer(engine.state());
    }
    return engine.result();
}

Evaluation evaluateFitness(const std::shared_ptr<const Scenario>& scenario,
                           std::span<const genome::AttackerGenome> group, std::span<const std::uint64_t> seeds) {
    if (seeds.empty()) throw ValidationError("fitness evaluation needs at least one seed");
    if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size())
        throw ValidationError("fitness evaluation seeds must be distinct");
    Evaluation ev;
    SimConfig cfg;
    cfg.scenario = scenario;
    cfg.attackers.assign(group.begin(), group.end());
    for (const auto seed : seeds) {
        cfg.seed = seed;
        const auto r = runSimulation(cfg);
        ev.ddrs.push_back(r.ddr);
        ev.latencies.push_back(r.meanLatency);
    }
    const auto n = static_cast<double>(seeds.size());
    ev.fitness.f1 = std::accumulate(ev.ddrs.begin(), ev.ddrs.end(), 0.0) / n;
    ev.fitness.f2 = std::accumulate(ev.latencies.begin(), ev.latencies.end(), 0.0) / n;
    return ev;
}

std::vector<std::uint64_t> evaluationSeeds(std::uint64_t master, std::size_t count) {
    std::vector<std::uint64_t> seeds;
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; seeds.size() < count; ++i) {
        const auto s = deriveSeed(master, kEvaluationSeeds, i);
        if (seen.insert(s).second) seeds.push_back(s);
    }
    return seeds;
}

std::string eventTraceCsv(std::span<const TraceEvent> events) {
    std::string out = "time,kind,node_a,node_b,message\n";
    for (const auto& e : events) {
        out += formatDouble(e.time);
        out += ',';
        out += toString(e.kind);
        out += ',' + std::to_string(e.nodeA) + ',' + std::to_string(e.nodeB) + ',' + std::to_string(e.message) + '\n';
    }
    return out;
}

std::string contactTraceCsv(std::span<const ContactEvent> contacts) {
    std::string out = "start,end,node_a,node_b,interface\n";
    for (const auto& c : contacts)
        out += formatDouble(c.start) + ',' + formatDouble(c.end) + ',' + std::to_string(c.nodeA) + ',' +
               std::to_string(c.nodeB) + ',' + std::to_string(c.interface) + '\n';
    return out;
}

std::vector<ContactEvent> parseContactTraceCsv(std::string_view csv) {
    std::vector<ContactEvent> out;
    int lineNo = 0;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        auto eol = csv.find('\n', pos);
        if (eol == std::string_view::npos) eol = csv.size();
        const auto line = trim(csv.substr(pos, eol - pos));
        pos = eol + 1;
        ++lineNo;
        if (line.empty() || (lineNo == 1 && line.starts_with("start"))) continue;
        const auto fields = split(line, ',');
        if (fields.size() != 5) throw ParseError("contact trace row needs 5 fields", lineNo);
        try {
            ContactEvent c;
            c.start = parseDouble(fields[0]);
            c.end = parseDouble(fields[1]);
            c.nodeA = static_cast<NodeId>(parseInt(fields[2]));
            c.nodeB = static_cast<NodeId>(parseInt(fields[3]));
            c.interface = static_cast<InterfaceId>(parseInt(fields[4]));
            out.push_back(c);
        } catch (const std::invalid_argument& e) {
            throw ParseError(std::string("contact trace: ") + e.what(), lineNo);
        }
    }
    return out;
}

}  // namespace dtn::netsim
