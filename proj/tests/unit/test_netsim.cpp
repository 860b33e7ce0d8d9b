#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <numeric>

#include "dtnattack/common/error.hpp"
#include "dtnattack/netsim/replay.hpp"
#include "dtnattack/netsim/simulator.hpp"
#include "invariants.hpp"
#include "oracle.hpp"

using namespace dtn;
using namespace dtn::netsim;

namespace {

constexpr double kb = 1000.0;

std::shared_ptr<const Scenario> tinyScenario(double duration = 600, double warmup = 200) {
    return parseScenario(R"({"map": {"grid": {"n": 5, "spacing": 30}}, "grid": {"rows": 5, "cols": 5},
        "honest": {"pedestrian": 12, "car": 4}, "duration": )" +
                         std::to_string(duration) + R"(, "warmup": )" + std::to_string(warmup) + R"(, "seed": 7})");
}

genome::AttackerGenome attacker(const std::string& mov, genome::AttackLogic logic) {
    return {mov, logic, {{2, 2}, {0, 4}}};
}

}  // namespace

TEST_CASE("radio ranges decide links") {
    const double bt = bluetooth().range, hs = highSpeed().range;
    CHECK(bt == 15.0);
    CHECK(hs == 100.0);
    const std::vector<double> r2{bt * bt, hs * hs};
    std::vector<Link> out;
    appendLinks(out, 0, 1, 14.0 * 14.0, 0b01, r2);  // two pedestrians
    REQUIRE(out.size() == 1);
    CHECK(out[0].interface == 0);
    out.clear();
    appendLinks(out, 0, 1, 50.0 * 50.0, 0b01, r2);  // pedestrian and car share bluetooth only
    CHECK(out.empty());
    appendLinks(out, 0, 1, 80.0 * 80.0, 0b11, r2);  // two cars
    REQUIRE(out.size() == 1);
    CHECK(out[0].interface == 1);
    out.clear();
    appendLinks(out, 0, 1, 14.0 * 14.0, 0b11, r2);
    CHECK(out.size() == 2);
}

TEST_CASE("map runs only link nodes within range") {
    SimConfig cfg;
    cfg.scenario = tinyScenario(300, 100);
    cfg.recordContacts = true;
    const auto nodes = buildNodes(cfg);
    const auto replay = buildHonestReplay(*cfg.scenario, cfg.seed);
    for (std::int64_t t = replay.firstTick; t < replay.firstTick + replay.ticks; ++t) {
        const auto pos = replay.positionsAt(t);
        for (const auto& l : replay.linksAt(t)) {
            const double d = std::hypot(pos[l.a].x - pos[l.b].x, pos[l.a].y - pos[l.b].y);
            CHECK(d <= (l.interface == 0 ? 15.0 : 100.0) + 1e-9);
            const auto& ia = nodes[l.a].interfaces;
            CHECK(std::find(ia.begin(), ia.end(), l.interface) != ia.end());
        }
    }
}

TEST_CASE("honest and flood traffic volumes") {
    const auto scenario = tinyScenario(18'000, 50);
    SimConfig cfg;
    cfg.scenario = scenario;
    cfg.attackers = {attacker("car", genome::AttackLogic::Flood)};
    const auto r = runSimulation(cfg);
    CHECK(r.honestCreated == 600);
    CHECK(r.floodCreated == 6000);

    SimConfig quiet;
    quiet.scenario = scenario;
    quiet.stopAt = 40.0;  // still inside the warm-up
    CHECK(runSimulation(quiet).honestCreated == 0);
}

TEST_CASE("flood deliveries do not count toward DDR") {
    ScriptedScenario s;
    s.nodes = oracle::nodes({{Role::Honest, false}, {Role::Flooder, false}, {Role::Honest, false}});
    s.contacts = {{0, 1, 0, 50, 0}, {1, 2, 0, 50, 0}};
    for (int i = 0; i < 5; ++i) s.messages.push_back({double(i), 1, 2, 100 * kb, false});
    s.messages.push_back({0, 0, 2, 10 * kb, true});
    const auto r = runSimulation(s);
    CHECK(r.floodCreated == 5);
    CHECK(r.floodDelivered == 5);
    CHECK(r.honestCreated == 1);
    CHECK(r.honestDelivered == 1);
    CHECK(r.ddr == 1.0);
}

TEST_CASE("direct delivery latency is the transfer time") {
    ScriptedScenario s;
    s.nodes = oracle::nodes({{Role::Honest, false}, {Role::Honest, false}, {Role::Honest, false}});
    s.contacts = {{0, 1, 0, 50, 0}, {0, 2, 0, 50, 0}};
    s.messages = {{3, 0, 2, 10 * kb, true}};
    const auto r = runSimulation(s);
    REQUIRE(r.deliveredIds.size() == 1);
    CHECK(r.deliveryLatencies[0] == doctest::Approx(10 * kb / 250e3).epsilon(1e-12));
}

TEST_CASE("random contact choice is uniform") {
    ScriptedScenario s;
    s.nodes = oracle::nodes({{Role::Honest, false}, {Role::Honest, false}, {Role::Honest, false}, {Role::Honest, false}});
    s.contacts = {{0, 1, 0, 1, 0}, {0, 2, 0, 1, 0}};
    s.messages = {{0, 0, 3, 10 * kb, true}};
    s.duration = 1;
    s.recordEvents = true;
    int toOne = 0;
    const int trials = 10'000;
    for (int i = 0; i < trials; ++i) {
        s.seed = static_cast<std::uint64_t>(i) + 1;
        const auto r = runSimulation(s);
        for (const auto& e : r.events)
            if (e.kind == TraceKind::TransferStart && e.nodeB == 1) ++toOne;
    }
    CHECK(double(toOne) / trials == doctest::Approx(0.5).epsilon(0.04));
}

TEST_CASE("full receiver keeps the message at the sender") {
    ScriptedScenario s;
    s.nodes = oracle::nodes({{Role::Honest, false}, {Role::Honest, false}, {Role::Honest, false}}, 10 * kb);
    s.contacts = {{0, 1, 0, 1, 0}, {0, 2, 20, 30, 0}};
    s.messages = {{0, 0, 2, 10 * kb, true}, {0, 1, 2, 10 * kb, true}};
    s.duration = 40;
    s.recordEvents = true;
    bool heldAtSender = false;
    s.observer = [&](const NetworkState& st) {
        if (st.time == 10.0) {
            const auto& b = st.nodes[0].buffer;
            heldAtSender = std::find(b.begin(), b.end(), MessageId{0}) != b.end();
        }
    };
    const auto r = runSimulation(s);
    CHECK(r.rejectedTransfers >= 1);
    CHECK(heldAtSender);
    REQUIRE(std::find(r.deliveredIds.begin(), r.deliveredIds.end(), MessageId{0}) != r.deliveredIds.end());
    CHECK(r.deliveryLatencies[0] == doctest::Approx(20.04));
}

TEST_CASE("black hole in a forced chain gives DDR 0") {
    ScriptedScenario s;
    s.nodes = oracle::nodes({{Role::Honest, false}, {Role::BlackHole, false}, {Role::Honest, false}});
    s.contacts = {{0, 1, 0, 5, 0}, {1, 2, 5, 10, 0}};
    s.messages = {{0, 0, 2, 10 * kb, true}, {1, 0, 2, 10 * kb, true}};
    const auto r = runSimulation(s);
    CHECK(r.ddr == 0.0);
    CHECK(r.honestDroppedByBlackhole == 2);
    CHECK(r.droppedByBlackhole == 2);
}

TEST_CASE("static pair in permanent contact delivers everything") {
    ScriptedScenario s;
    s.nodes = oracle::nodes({{Role::Honest, false}, {Role::Honest, false}});
    s.contacts = {{0, 1, 0, 100, 0}};
    for (int i = 0; i < 10; ++i) s.messages.push_back({double(i), 0, 1, 10 * kb, true});
    const auto r = runSimulation(s);
    CHECK(r.honestCreated == 10);
    CHECK(r.ddr == 1.0);
}

TEST_CASE("messages expire and transfers must finish before TTL") {
    ScriptedScenario s;
    s.nodes = oracle::nodes({{Role::Honest, false}, {Role::Honest, false}});
    s.ttl = 10;
    s.contacts = {{0, 1, 5, 30, 0}};
    // 2.4 MB over bluetooth takes 9.6 s: too long from t = 5 for a t = 0 message.
    s.messages = {{0, 0, 1, 2400 * kb, true}, {0, 0, 1, 10 * kb, true}};
    s.duration = 30;
    const auto r = runSimulation(s);
    CHECK(r.honestDelivered == 1);
    CHECK(r.deliveredIds == std::vector<MessageId>{1});
    CHECK(r.expired == 1);
}

TEST_CASE("scripted runs match the brute-force oracle") {
    const auto schedules = oracle::schedules();
    REQUIRE(schedules.size() >= 5);
    for (std::size_t i = 0; i < schedules.size(); ++i) {
        CAPTURE(i);
        const auto want = oracle::run(schedules[i]);
        const auto got = runSimulation(schedules[i]);
        CHECK(got.deliveredIds == want.delivered);
        CHECK(got.deliveryLatencies == want.latencies);
        CHECK(got.ddr == want.ddr);
        CHECK(got.honestCreated == want.created);
    }
}

TEST_CASE("oracle agrees on random scripted schedules") {
    Rng rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        ScriptedScenario s;
        const int n = static_cast<int>(rng.between(3, 6));
        for (int i = 0; i < n; ++i) {
            const bool vehicle = rng.bernoulli(0.3);
            const auto role = i < 2 ? Role::Honest : rng.bernoulli(0.2) ? Role::BlackHole : Role::Honest;
            auto spec = oracle::nodes({{role, vehicle}}, rng.bernoulli(0.3) ? 30 * kb : 5e6, 5e7).front();
            spec.id = i;
            s.nodes.push_back(spec);
        }
        s.duration = 80;
        s.ttl = rng.bernoulli(0.3) ? 25 : 18'000;
        s.seed = rng.below(1000);
        for (int c = 0; c < 12; ++c) {
            NodeId a = static_cast<NodeId>(rng.below(n)), b = static_cast<NodeId>(rng.below(n));
            if (a == b) continue;
            if (a > b) std::swap(a, b);
            const bool fast = s.nodes[a].interfaces.size() == 2 && s.nodes[b].interfaces.size() == 2 && rng.bernoulli(0.5);
            const double start = static_cast<double>(rng.below(70));
            s.contacts.push_back({a, b, start, start + static_cast<double>(rng.between(1, 15)), fast ? 1 : 0});
        }
        std::vector<NodeId> honest;
        for (const auto& nd : s.nodes)
            if (nd.role == Role::Honest) honest.push_back(nd.id);
        for (int m = 0; m < 10; ++m) {
            const auto src = honest[rng.below(honest.size())];
            auto dst = honest[rng.below(honest.size())];
            if (src == dst) continue;
            const double size = rng.bernoulli(0.2) ? 1000 * kb : 10 * kb;
            s.messages.push_back({static_cast<double>(rng.below(60)), src, dst, size, true});
        }
        CAPTURE(trial);
        const auto want = oracle::run(s);
        const auto got = runSimulation(s);
        REQUIRE(got.deliveredIds == want.delivered);
        REQUIRE(got.deliveryLatencies == want.latencies);
        REQUIRE(got.ddr == want.ddr);
    }
}

TEST_CASE("conservation, single copy and buffer bound hold every tick") {
    const auto scenario = tinyScenario(1000, 50);
    const auto space = scenario->genomeSpace();
    Rng rng(5);
    for (int run = 0; run < 20; ++run) {
        SimConfig cfg;
        cfg.scenario = scenario;
        cfg.seed = static_cast<std::uint64_t>(run) + 100;
        for (int i = 0; i < 4; ++i) cfg.attackers.push_back(genome::randomGenome(space, rng));
        invariants::Checker check;
        cfg.observer = std::ref(check);
        const auto r = runSimulation(cfg);
        CAPTURE(run);
        CHECK(check.ticks > 0);
        CHECK(check.violations.empty());
        if (!check.violations.empty()) MESSAGE(check.violations.front());
        for (const double l : r.deliveryLatencies) {
            CHECK(l > 0.0);
            CHECK(l <= scenario->params().ttl);
        }
    }
}

TEST_CASE("a black-hole relay never increases deliveries") {
    Rng rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        ScriptedScenario s;
        s.nodes = oracle::nodes({{Role::Honest, false}, {Role::Honest, false}, {Role::Honest, false},
                                 {Role::Honest, false}, {Role::Honest, false}, {Role::Honest, false}});
        s.duration = 100;
        s.seed = static_cast<std::uint64_t>(trial);
        for (int c = 0; c < 14; ++c) {
            NodeId a = static_cast<NodeId>(rng.below(6)), b = static_cast<NodeId>(rng.below(6));
            if (a == b) continue;
            const double start = static_cast<double>(rng.below(90));
            s.contacts.push_back({std::min(a, b), std::max(a, b), start, start + 5, 0});
        }
        s.messages = {{0, 0, 5, 10 * kb, true}};
        const auto base = runSimulation(s);
        for (NodeId relay = 1; relay <= 4; ++relay) {
            auto attacked = s;
            attacked.nodes[static_cast<std::size_t>(relay)].role = Role::BlackHole;
            CHECK(runSimulation(attacked).honestDelivered <= base.honestDelivered);
        }
    }
}

TEST_CASE("runs are deterministic") {
    const auto scenario = tinyScenario();
    SimConfig cfg;
    cfg.scenario = scenario;
    cfg.seed = 42;
    cfg.attackers = {attacker("car", genome::AttackLogic::BlackHole), attacker("pedestrian", genome::AttackLogic::Flood)};
    cfg.recordEvents = true;
    cfg.recordContacts = true;
    const auto a = runSimulation(cfg);
    std::reverse(cfg.attackers.begin(), cfg.attackers.end());
    const auto b = runSimulation(cfg);
    CHECK(a == b);
    CHECK(a.honestCreated > 0);
}

TEST_CASE("fitness averages per-seed DDR and latency") {
    const auto scenario = tinyScenario();
    const auto seeds = evaluationSeeds(scenario->params().seed);
    CHECK(seeds.size() == 10);
    CHECK(std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() == 10);
    const std::vector<genome::AttackerGenome> group{attacker("car", genome::AttackLogic::BlackHole)};
    const auto ev = evaluateFitness(scenario, group, seeds);
    REQUIRE(ev.ddrs.size() == 10);
    const double mean = std::accumulate(ev.ddrs.begin(), ev.ddrs.end(), 0.0) / 10.0;
    CHECK(ev.fitness.f1 == doctest::Approx(mean).epsilon(1e-12));
    const double lat = std::accumulate(ev.latencies.begin(), ev.latencies.end(), 0.0) / 10.0;
    CHECK(ev.fitness.f2 == doctest::Approx(lat).epsilon(1e-12));
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        SimConfig cfg;
        cfg.scenario = scenario;
        cfg.seed = seeds[i];
        cfg.attackers = group;
        CHECK(runSimulation(cfg).ddr == ev.ddrs[i]);
    }

    const std::vector<std::uint64_t> dup{1, 2, 1};
    CHECK_THROWS_AS(evaluateFitness(scenario, group, dup), ValidationError);
    const auto none = evaluateFitness(scenario, {}, seeds);
    SimConfig plain;
    plain.scenario = scenario;
    plain.seed = seeds[0];
    CHECK(none.ddrs[0] == runSimulation(plain).ddr);
}

TEST_CASE("scripted validation") {
    ScriptedScenario s;
    s.nodes = oracle::nodes({{Role::Honest, false}, {Role::Honest, true}});
    s.contacts = {{0, 1, 5, 5, 0}};
    CHECK_THROWS_AS(runSimulation(s), ValidationError);
    s.contacts = {{0, 0, 0, 5, 0}};
    CHECK_THROWS_AS(runSimulation(s), ValidationError);
    s.contacts = {{0, 3, 0, 5, 0}};
    CHECK_THROWS_AS(runSimulation(s), ValidationError);
    s.contacts = {{0, 1, 0, 5, 1}};  // pedestrian lacks the high-speed radio
    CHECK_THROWS_AS(runSimulation(s), ValidationError);
}

TEST_CASE("contact trace CSV round-trips") {
    SimConfig cfg;
    cfg.scenario = tinyScenario(300, 100);
    cfg.recordContacts = true;
    const auto r = runSimulation(cfg);
    REQUIRE(!r.contactTrace.empty());
    for (const auto& c : r.contactTrace) {
        CHECK(c.nodeA < c.nodeB);
        CHECK(c.start < c.end);
    }
    CHECK(parseContactTraceCsv(contactTraceCsv(r.contactTrace)) == r.contactTrace);
    CHECK_THROWS_AS(parseContactTraceCsv("start,end,node_a,node_b,interface\n1,2,3\n"), ParseError);
}

TEST_CASE("scenario parsing") {
    const auto sc = parseScenario(R"({"map": {"grid": {"n": 4, "spacing": 20}}, "grid": {"rows": 8, "cols": 8},
        "honest": {"pedestrian": 3, "car": 2}, "duration": 100, "warmup": 10, "seed": 3,
        "traffic": {"honest_interval": 10}})");
    CHECK(sc->honestCount() == 5);
    CHECK(sc->params().honestInterval == 10.0);
    CHECK(sc->params().gridRows == 8);
    CHECK(sc->params().seed == 3);
    CHECK_THROWS_AS(parseScenario("{\"grid\": {\"rows\": 3}}"), Error);
    CHECK_THROWS_AS(parseScenario("{not json"), ParseError);
    const auto desk = loadScenario(std::string(DTN_SCENARIOS) + "/desk.json");
    CHECK(desk->honestCount() == 40);
}
