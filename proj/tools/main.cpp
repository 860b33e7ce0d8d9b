#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

#include "dtnattack/common/error.hpp"
#include "dtnattack/common/text.hpp"
#include "dtnattack/genome/serialization.hpp"
#include "dtnattack/harness/campaign.hpp"
#include "dtnattack/harness/stats.hpp"
#include "dtnattack/map/grid_city.hpp"
#include "dtnattack/map/map_io.hpp"
#include "dtnattack/netsim/simulator.hpp"

using namespace dtn;

namespace {

struct CampaignFlags {
    std::string config;
    std::string out;
    std::string algorithm = "ge";
    std::uint64_t seed = 1;
    int kMin = 1;
    int kMax = 1;
    int repetitions = 5;
    int stagnation = 50;
    int maxGenerations = 0;
    int maxPois = 20;
    int count = 150;
    unsigned jobs = 1;
    bool resume = false;
};

void addCommon(CLI::App* cmd, CampaignFlags& f) {
    cmd->add_option("--config", f.config, "Scenario JSON file")->required();
    cmd->add_option("--out", f.out, "Output directory");
    cmd->add_option("--seed", f.seed, "Master seed");
    cmd->add_option("--k-min", f.kMin, "Smallest group size");
    cmd->add_option("--k-max", f.kMax, "Largest group size");
    cmd->add_option("--jobs", f.jobs, "Worker threads");
}

int runCampaignCommand(const CampaignFlags& f, harness::Algorithm algorithm) {
    harness::CampaignConfig c;
    c.scenario = netsim::loadScenario(f.config);
    c.scenarioLabel = f.config;
    c.algorithm = algorithm;
    c.bounds = {f.kMin, f.kMax};
    c.repetitions = f.repetitions;
    c.masterSeed = f.seed;
    c.stagnation = f.stagnation;
    c.maxGenerations = f.maxGenerations;
    c.maxPois = f.maxPois;
    c.randomCount = f.count;
    c.jobs = f.jobs;
    c.outDir = f.out;
    c.resume = f.resume;
    c.campaignId = std::string(harness::toString(algorithm)) + "-k" + std::to_string(f.kMin) + "-" +
                   std::to_string(f.kMax) + "-s" + std::to_string(f.seed);
    const auto result = harness::runCampaign(c);
    if (f.out.empty()) std::cout << harness::formatResultsCsv(result.rows);
    for (const auto& r : result.repetitions)
        std::cerr << "rep " << r.repetition << ": f1 " << formatDouble(r.fitness.f1) << " f2 "
                  << formatDouble(r.fitness.f2) << ", " << r.generations << " generations, " << r.evaluations
                  << " evaluations, size " << r.best.size() << '\n';
    return 0;
}

nlohmann::json summary(const netsim::SimResult& r) {
    return {{"honest_created", r.honestCreated},
            {"honest_delivered", r.honestDelivered},
            {"ddr", r.ddr},
            {"mean_latency", r.meanLatency},
            {"flood_created", r.floodCreated},
            {"flood_delivered", r.floodDelivered},
            {"dropped_by_black_hole", r.droppedByBlackhole},
            {"honest_dropped_by_black_hole", r.honestDroppedByBlackhole},
            {"expired", r.expired},
            {"dropped_at_source", r.droppedAtSource},
            {"rejected_transfers", r.rejectedTransfers},
            {"aborted_transfers", r.abortedTransfers}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Searches for damaging attacker groups in simulated delay-tolerant networks"};
    app.require_subcommand(1);

    // simulate
    std::string simConfig, simGroup, simTrace, simContacts;
    std::uint64_t simSeed = 1;
    bool simSeedSet = false;
    auto* simulate = app.add_subcommand("simulate", "Run one scenario and print the result as JSON");
    simulate->add_option("--config", simConfig, "Scenario JSON file")->required();
    simulate->add_option("--seed", simSeed, "Run seed (default: scenario seed)")
        ->each([&](const std::string&) { simSeedSet = true; });
    simulate->add_option("--group", simGroup, "Attacker group text file");
    simulate->add_option("--trace", simTrace, "Write the event trace CSV here");
    simulate->add_option("--contacts", simContacts, "Write the contact trace CSV here");

    // evaluate
    std::string evalConfig, evalGroup;
    auto* evaluate = app.add_subcommand("evaluate", "Print the fitness \"f1 f2\" of a group over the evaluation seeds");
    evaluate->add_option("--config", evalConfig, "Scenario JSON file")->required();
    evaluate->add_option("--group", evalGroup, "Attacker group text file (empty file: no attack)")->required();

    CampaignFlags evo, rnd, greedy;
    auto* evolve = app.add_subcommand("evolve", "Run an evolutionary campaign");
    addCommon(evolve, evo);
    evolve->add_option("--algorithm", evo.algorithm, "ge or classical")->check(CLI::IsMember({"ge", "classical"}));
    evolve->add_option("--repetitions", evo.repetitions, "Independent runs");
    evolve->add_option("--stagnation", evo.stagnation, "Generations without improvement before stopping");
    evolve->add_option("--max-generations", evo.maxGenerations, "Generation cap (0: none)");
    evolve->add_option("--max-pois", evo.maxPois, "Longest POI list");
    evolve->add_flag("--resume", evo.resume, "Continue from checkpoints in --out");

    auto* random = app.add_subcommand("random-baseline", "Evaluate randomly generated groups");
    addCommon(random, rnd);
    random->add_option("--count", rnd.count, "Number of groups");
    random->add_option("--max-pois", rnd.maxPois, "Longest POI list");

    auto* greedyCmd = app.add_subcommand("greedy-baseline", "Greedy reachability attacker selection");
    addCommon(greedyCmd, greedy);

    // compare
    std::string cmpA, cmpB, armA, armB;
    std::size_t cmpCount = 150;
    double alpha = 0.05;
    auto* compare = app.add_subcommand("compare", "Rank-sum test on the lowest f1 values of two arms");
    compare->add_option("--a", cmpA, "Results CSV of arm A")->required();
    compare->add_option("--b", cmpB, "Results CSV of arm B")->required();
    compare->add_option("--arm-a", armA, "Arm name in A (default: first row's arm)");
    compare->add_option("--arm-b", armB, "Arm name in B (default: first row's arm)");
    compare->add_option("--count", cmpCount, "Lowest values pooled per arm");
    compare->add_option("--alpha", alpha, "Significance level");

    // top-groups
    std::vector<std::string> topIn;
    std::string topArm;
    double tolerance = 0.02;
    auto* top = app.add_subcommand("top-groups", "Composition of the groups within a tolerance of the best");
    top->add_option("--in", topIn, "Results CSV files")->required();
    top->add_option("--arm", topArm, "Only rows of this arm");
    top->add_option("--tolerance", tolerance, "Relative tolerance");

    // gen-map
    int mapN = 10;
    double spacing = 40.0;
    map::GridCityLayers layers;
    std::string mapOut;
    auto* genMap = app.add_subcommand("gen-map", "Write a synthetic grid city map");
    genMap->add_option("--n", mapN, "Points per side");
    genMap->add_option("--spacing", spacing, "Metres between neighbouring points");
    genMap->add_flag("--walkways", layers.walkways, "Separate pedestrian layer with park diagonals");
    genMap->add_option("--vehicle-class", layers.vehicleClass, "Vehicle class on streets");
    genMap->add_option("--diagonal-stride", layers.diagonalStride, "Diagonal density of the walkways layer");
    genMap->add_option("--out", mapOut, "Output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(ErrorCategory::Usage);
    }

    try {
        if (*simulate) {
            const auto scenario = netsim::loadScenario(simConfig);
            netsim::SimConfig cfg;
            cfg.scenario = scenario;
            cfg.seed = simSeedSet ? simSeed : scenario->params().seed;
            if (!simGroup.empty()) cfg.attackers = genome::parseGroup(readFile(simGroup));
            cfg.recordEvents = !simTrace.empty();
            cfg.recordContacts = !simContacts.empty();
            const auto r = netsim::runSimulation(cfg);
            if (!simTrace.empty()) writeFile(simTrace, netsim::eventTraceCsv(r.events));
            if (!simContacts.empty()) writeFile(simContacts, netsim::contactTraceCsv(r.contactTrace));
            std::cout << summary(r).dump(2) << '\n';
        } else if (*evaluate) {
            const auto scenario = netsim::loadScenario(evalConfig);
            const auto text = readFile(evalGroup);
            const auto group = trim(text).empty() ? std::vector<genome::AttackerGenome>{} : genome::parseGroup(text);
            const auto seeds = netsim::evaluationSeeds(scenario->params().seed);
            const auto ev = netsim::evaluateFitness(scenario, group, seeds);
            std::cout << formatDouble(ev.fitness.f1) << ' ' << formatDouble(ev.fitness.f2) << '\n';
        } else if (*evolve) {
            return runCampaignCommand(evo, harness::parseAlgorithm(evo.algorithm));
        } else if (*random) {
            return runCampaignCommand(rnd, harness::Algorithm::Random);
        } else if (*greedyCmd) {
            return runCampaignCommand(greedy, harness::Algorithm::Greedy);
        } else if (*compare) {
            const auto a = harness::parseResultsCsv(readFile(cmpA));
            const auto b = harness::parseResultsCsv(readFile(cmpB));
            if (a.empty() || b.empty()) throw ValidationError("both results files need at least one row");
            if (armA.empty()) armA = a.front().arm;
            if (armB.empty()) armB = b.front().arm;
            const auto sa = harness::lowestF1(a, armA, cmpCount);
            const auto sb = harness::lowestF1(b, armB, cmpCount);
            if (sa.size() < 5 || sb.size() < 5) throw ValidationError("each arm needs at least 5 rows");
            const auto t = harness::rankSumTest(sa, sb, alpha);
            std::cout << "A " << armA << " n=" << sa.size() << " median=" << formatDouble(harness::median(sa)) << '\n'
                      << "B " << armB << " n=" << sb.size() << " median=" << formatDouble(harness::median(sb)) << '\n'
                      << "W " << formatDouble(t.w) << (t.exact ? " (exact)" : " (normal approximation)") << '\n'
                      << "p_less " << formatDouble(t.pLess) << '\n'
                      << "p_greater " << formatDouble(t.pGreater) << '\n'
                      << "p_two_sided " << formatDouble(t.pTwoSided) << '\n'
                      << "verdict " << harness::toString(t.verdict) << '\n';
        } else if (*top) {
            std::vector<harness::ResultRow> rows;
            for (const auto& path : topIn)
                for (auto& r : harness::parseResultsCsv(readFile(path)))
                    if (topArm.empty() || r.arm == topArm) rows.push_back(std::move(r));
            std::cout << harness::formatTopGroupReport(harness::analyzeTopGroups(rows, tolerance));
        } else if (*genMap) {
            const auto text = map::saveMap(map::generateGridCity(mapN, spacing, layers));
            if (mapOut.empty())
                std::cout << text;
            else
                writeFile(mapOut, text);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(e.category());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(ErrorCategory::Simulation);
    }
    return 0;
}
