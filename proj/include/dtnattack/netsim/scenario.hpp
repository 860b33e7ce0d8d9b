#pragma once

#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "dtnattack/genome/attacker_genome.hpp"
#include "dtnattack/map/city_map.hpp"
#include "dtnattack/map/grid_overlay.hpp"
#include "dtnattack/map/layer_graph.hpp"
#include "dtnattack/mobility/movement_class.hpp"
#include "dtnattack/netsim/types.hpp"

namespace dtn::netsim {

struct HonestReplay;

struct HonestCensus {
    std::string movementClass;
    int count = 0;
};

/// Everything about a scenario except the map and the attackers.
struct ScenarioParams {
    int gridRows = 100;
    int gridCols = 100;
    std::vector<HonestCensus> honest{{"pedestrian", 150}, {"car", 50}};
    std::vector<mobility::MovementClass> classes{mobility::pedestrianClass(), mobility::carClass()};
    std::vector<RadioInterface> interfaces{bluetooth(), highSpeed()};

    double duration = 18'000.0;  // traffic period, after the warm-up
    double warmup = 1'000.0;
    double tick = 1.0;
    double ttl = 18'000.0;

    double honestInterval = 30.0;
    double flooderInterval = 3.0;
    double honestSize = 10'000.0;
    double floodSize = 100'000.0;
    double pedestrianBuffer = 5'000'000.0;
    double vehicleBuffer = 50'000'000.0;

    std::uint64_t seed = 1;

    void validate() const;
};

/// Immutable simulation world: the map plus per-class routing graphs and grid
/// indices. Shared by concurrent runs; path caches fill lazily.
class Scenario {
public:
    Scenario(std::shared_ptr<const map::CityMap> map, ScenarioParams params);

    const map::CityMap& cityMap() const { return *map_; }
    const ScenarioParams& params() const { return params_; }
    const map::GridOverlay& overlay() const { return overlay_; }

    const mobility::MovementClass& movementClass(const std::string& name) const;
    std::shared_ptr<const map::LayerGraph> graphFor(const std::string& movementClass) const;
    std::shared_ptr<const map::GridIndex> gridIndexFor(const std::string& movementClass) const;

    int honestCount() const;
    /// Classes an attacker genome may choose, i.e. classes with map access.
    std::vector<std::string> attackerClasses() const;
    /// Genome domain matching this scenario's grid and classes.
    genome::GenomeSpace genomeSpace(int minPois = 1, int maxPois = 20) const;

    /// Interfaces and buffer of a node of the given class.
    std::vector<InterfaceId> interfacesFor(const mobility::MovementClass& cls) const;
    double bufferFor(const mobility::MovementClass& cls) const;

    /// Honest mobility for a seed, built on first use and kept for the most
    /// recent `kReplayCacheSize` seeds.
    std::shared_ptr<const HonestReplay> honestReplay(std::uint64_t seed) const;
    static constexpr std::size_t kReplayCacheSize = 24;

private:
    struct ClassWorld {
        mobility::MovementClass cls;
        std::shared_ptr<const map::LayerGraph> graph;
        std::shared_ptr<const map::GridIndex> index;
    };
    const ClassWorld& world(const std::string& name) const;

    std::shared_ptr<const map::CityMap> map_;
    ScenarioParams params_;
    map::GridOverlay overlay_;
    std::map<std::string, ClassWorld> classes_;

    mutable std::mutex replayMutex_;
    mutable std::deque<std::pair<std::uint64_t, std::shared_ptr<const HonestReplay>>> replays_;
};

/// Scenario file (JSON):
///
///     {
///       "map": {"file": "city.map"}            or
///       "map": {"grid": {"n": 10, "spacing": 40, "walkways": false}},
///       "grid": {"rows": 100, "cols": 100},
///       "honest": {"pedestrian": 30, "car": 10},
///       "duration": 3600, "warmup": 1000, "tick": 1, "ttl": 18000,
///       "traffic": {"honest_interval": 30, "flooder_interval": 3,
///                   "honest_size": 10000, "flood_size": 100000},
///       "buffers": {"pedestrian": 5e6, "vehicle": 5e7},
///       "classes": [{"name": "car", "speed": [2.7, 13.9],
///                    "pause": [0, 120], "vehicle": true}],
///       "seed": 1
///     }
///
/// Every key except "map" is optional. A relative map file path is resolved
/// against the scenario file's directory.
std::shared_ptr<const Scenario> loadScenario(const std::string& path);
std::shared_ptr<const Scenario> parseScenario(const std::string& json, const std::string& baseDir = ".");

}  // namespace dtn::netsim
