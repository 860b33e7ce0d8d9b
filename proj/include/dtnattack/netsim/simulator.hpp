#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dtnattack/common/fitness.hpp"
#include "dtnattack/genome/attacker_genome.hpp"
#include "dtnattack/netsim/engine.hpp"
#include "dtnattack/netsim/scenario.hpp"

namespace dtn::netsim {

/// One map-driven run: the scenario, the attackers and the seed.
///
/// Node ids: honest nodes first, in census order, then attackers sorted by
/// their text form (so results do not depend on member order). Random
/// streams: honest/attacker mobility, traffic and each flooder draw from
/// separate seeds derived from `seed`, so adding an attacker never perturbs
/// honest mobility or honest traffic.
struct SimConfig {
    std::shared_ptr<const Scenario> scenario;
    std::vector<genome::AttackerGenome> attackers;
    std::uint64_t seed = 1;

    /// Honest node ids re-cast as black holes. They keep their movement but
    /// stop being traffic endpoints.
    std::vector<NodeId> convertedToBlackHole;

    /// Ends the run early (simulated seconds from t = 0).
    std::optional<double> stopAt;

    bool recordContacts = false;
    bool recordEvents = false;
    TickObserver observer;
};

SimResult runSimulation(const SimConfig& config);

/// Node specs in id order for a config, as the simulator builds them.
std::vector<NodeSpec> buildNodes(const SimConfig& config);

struct ScriptedMessage {
    double time = 0.0;
    NodeId source = 0;
    NodeId destination = 0;
    double size = 0.0;
    bool honest = true;
};

/// Hand-built scenario: fixed node set, contact windows instead of mobility.
/// A contact [start, end) is live at every tick time t with start <= t < end.
/// Messages are created at the first tick at or after their time.
struct ScriptedScenario {
    std::vector<NodeSpec> nodes;
    std::vector<RadioInterface> interfaces{bluetooth(), highSpeed()};
    std::vector<ContactEvent> contacts;
    std::vector<ScriptedMessage> messages;
    double duration = 100.0;
    double tick = 1.0;
    double ttl = 18'000.0;
    std::uint64_t seed = 1;
    bool recordEvents = false;
    TickObserver observer;
};

SimResult runSimulation(const ScriptedScenario& scenario);

/// Per-seed outcome of a fitness evaluation.
struct Evaluation {
    FitnessVector fitness;
    std::vector<double> ddrs;       // one per seed
    std::vector<double> latencies;  // mean latency per seed
    bool operator==(const Evaluation&) const = default;
};

/// Runs the group once per seed and averages DDR (f1) and latency (f2).
Evaluation evaluateFitness(const std::shared_ptr<const Scenario>& scenario,
                           std::span<const genome::AttackerGenome> group, std::span<const std::uint64_t> seeds);

/// `count` distinct evaluation seeds derived from a master seed.
std::vector<std::uint64_t> evaluationSeeds(std::uint64_t master, std::size_t count = 10);

/// CSV: time,kind,node_a,node_b,message
std::string eventTraceCsv(std::span<const TraceEvent> events);
/// CSV: start,end,node_a,node_b,interface
std::string contactTraceCsv(std::span<const ContactEvent> contacts);
std::vector<ContactEvent> parseContactTraceCsv(std::string_view csv);

}  // namespace dtn::netsim
