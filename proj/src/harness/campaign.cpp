#include "dtnattack/harness/campaign.hpp"

#include <chrono>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>

#include <json.hpp>

#include "dtnattack/common/error.hpp"
#include "dtnattack/common/text.hpp"
#include "dtnattack/common/worker_pool.hpp"
#include "dtnattack/evolution/classical.hpp"
#include "dtnattack/evolution/group_evolution.hpp"
#include "dtnattack/genome/serialization.hpp"

namespace dtn::harness {

namespace fs = std::filesystem;

std::string_view toString(Algorithm a) {
    switch (a) {
        case Algorithm::GroupEvolution:
            return "ge";
        case Algorithm::Classical:
            return "classical";
        case Algorithm::Random:
            return "random";
        case Algorithm::Greedy:
            return "greedy";
    }
    return "ge";
}

Algorithm parseAlgorithm(std::string_view text) {
    if (text == "ge") return Algorithm::GroupEvolution;
    if (text == "classical") return Algorithm::Classical;
    if (text == "random") return Algorithm::Random;
    if (text == "greedy") return Algorithm::Greedy;
    throw ValidationError("unknown algorithm '" + std::string(text) + "' (ge, classical, random, greedy)");
}

void CampaignConfig::validate() const {
    if (!scenario) throw ValidationError("campaign needs a scenario");
    if (bounds.kMin < 1 || bounds.kMax < bounds.kMin) throw ValidationError("need 1 <= kMin <= kMax");
    if (repetitions < 1) throw ValidationError("repetitions must be >= 1");
    if (evaluationSeedCount < 1) throw ValidationError("need at least one evaluation seed");
    if (randomCount < 1) throw ValidationError("random sample count must be >= 1");
    if (campaignId.empty() || campaignId.find_first_of(",\n\"") != std::string::npos)
        throw ValidationError("campaign id must be non-empty without commas or quotes");
    if (algorithm == Algorithm::GroupEvolution || algorithm == Algorithm::Classical) engineParams().validate();
}

evolution::EngineParams CampaignConfig::engineParams() const {
    evolution::EngineParams p;
    p.space = scenario->genomeSpace(minPois, maxPois);
    p.bounds = bounds;
    p.stagnation = stagnation;
    p.maxGenerations = maxGenerations;
    return p;
}

std::vector<std::uint64_t> CampaignConfig::evaluationSeeds() const {
    return netsim::evaluationSeeds(scenario->params().seed, evaluationSeedCount);
}

namespace {

class Log {
public:
    explicit Log(const std::string& dir) {
        if (!dir.empty()) path_ = (fs::path(dir) / "log.txt").string();
    }
    void line(const std::string& text) {
        if (path_.empty()) return;
        std::lock_guard lock(mutex_);
        const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        std::ostringstream out;
        out << std::put_time(std::gmtime(&now), "%Y-%m-%dT%H:%M:%SZ") << ' ' << text << '\n';
        std::ofstream(path_, std::ios::app) << out.str();
    }

private:
    std::string path_;
    std::mutex mutex_;
};

void writeAtomically(const fs::path& path, std::string_view contents) {
    const auto tmp = path.string() + ".tmp";
    writeFile(tmp, contents);
    fs::rename(tmp, path);
}

std::string historyCsv(const std::vector<evolution::GenerationRecord>& history) {
    std::ostringstream out;
    out << "generation,best_f1,best_f2,requests,evaluations,tau,sigma\n";
    for (const auto& r : history)
        out << r.generation << ',' << formatDouble(r.best.f1) << ',' << formatDouble(r.best.f2) << ',' << r.requests
            << ',' << r.evaluations << ',' << formatDouble(r.tau) << ',' << formatDouble(r.sigma) << '\n';
    return out.str();
}

template <typename Engine>
RepetitionResult runEngine(const CampaignConfig& config, int rep, std::vector<ResultRow>& rows, Log& log) {
    evolution::EvaluationCache cache(evolution::simulationEvaluator(config.scenario, config.evaluationSeeds()), 1);
    const auto seed = deriveSeed(config.masterSeed, static_cast<std::uint64_t>(rep));
    const bool persist = !config.outDir.empty();
    const auto dir = fs::path(config.outDir);
    const auto checkpointPath = dir / ("checkpoint_rep" + std::to_string(rep) + ".json");

    auto engine = [&] {
        if (persist && config.resume && fs::exists(checkpointPath)) {
            log.line("rep " + std::to_string(rep) + ": resuming from " + checkpointPath.string());
            return Engine::restore(readFile(checkpointPath.string()), cache);
        }
        return Engine(config.engineParams(), cache, seed);
    }();
    if (persist) writeAtomically(checkpointPath, engine.checkpoint());

    while (!engine.stopped()) {
        try {
            engine.step();
        } catch (const std::exception& e) {
            throw Error(ErrorCategory::Simulation,
                        "repetition " + std::to_string(rep) + " failed in generation " +
                            std::to_string(engine.generation()) + ": " + e.what() +
                            (persist ? " (resume from " + checkpointPath.string() + ")" : ""));
        }
        if (persist) writeAtomically(checkpointPath, engine.checkpoint());
    }

    RepetitionResult r;
    r.repetition = rep;
    r.best = engine.bestGroup();
    r.fitness = engine.bestFitness();
    for (const auto& h : engine.history()) r.series.push_back(h.best);
    r.evaluations = cache.misses();
    r.generations = engine.generation();
    if constexpr (std::is_same_v<Engine, evolution::GroupEvolution>)
        r.groupOperatorApplications = engine.groupOperatorApplications();
    for (const auto& e : engine.evaluatedGroups())
        rows.push_back(makeRow(config.campaignId, std::string(toString(config.algorithm)), rep, e.generation,
                               e.members, e.evaluation));
    if (persist) {
        writeFile((dir / ("best_rep" + std::to_string(rep) + ".txt")).string(), genome::formatGroup(r.best));
        writeFile((dir / ("history_rep" + std::to_string(rep) + ".csv")).string(), historyCsv(engine.history()));
    }
    log.line("rep " + std::to_string(rep) + ": " + std::to_string(r.generations) + " generations, " +
             std::to_string(r.evaluations) + " evaluations, best f1 " + formatDouble(r.fitness.f1));
    return r;
}

std::string metadata(const CampaignConfig& c) {
    nlohmann::json j = {{"campaign", c.campaignId},
                        {"scenario", c.scenarioLabel},
                        {"algorithm", toString(c.algorithm)},
                        {"k_min", c.bounds.kMin},
                        {"k_max", c.bounds.kMax},
                        {"repetitions", c.repetitions},
                        {"master_seed", c.masterSeed},
                        {"evaluation_seeds", c.evaluationSeeds()},
                        {"stagnation", c.stagnation},
                        {"max_generations", c.maxGenerations},
                        {"min_pois", c.minPois},
                        {"max_pois", c.maxPois},
                        {"random_count", c.randomCount},
                        {"top_group_rule", "f1 <= best_f1 * (1 + tolerance)"}};
    return j.dump(2) + "\n";
}

}  // namespace

CampaignResult runCampaign(const CampaignConfig& config) {
    config.validate();
    const bool persist = !config.outDir.empty();
    if (persist) {
        std::error_code ec;
        fs::create_directories(config.outDir, ec);
        if (ec) throw IoError("cannot create " + config.outDir + ": " + ec.message());
        writeFile((fs::path(config.outDir) / "campaign.json").string(), metadata(config));
    }
    Log log(config.outDir);
    log.line(std::string("start ") + std::string(toString(config.algorithm)) + " k=[" +
             std::to_string(config.bounds.kMin) + "," + std::to_string(config.bounds.kMax) + "]");

    CampaignResult result;
    const auto arm = std::string(toString(config.algorithm));
    switch (config.algorithm) {
        case Algorithm::GroupEvolution:
        case Algorithm::Classical: {
            const auto n = static_cast<std::size_t>(config.repetitions);
            std::vector<RepetitionResult> reps(n);
            std::vector<std::vector<ResultRow>> rows(n);
            parallelFor(n, config.jobs, [&](std::size_t i) {
                const int rep = static_cast<int>(i);
                reps[i] = config.algorithm == Algorithm::GroupEvolution
                              ? runEngine<evolution::GroupEvolution>(config, rep, rows[i], log)
                              : runEngine<evolution::ClassicalEvolution>(config, rep, rows[i], log);
            });
            result.repetitions = std::move(reps);
            for (auto& r : rows) result.rows.insert(result.rows.end(), r.begin(), r.end());
            break;
        }
        case Algorithm::Random: {
            evolution::EvaluationCache cache(evolution::simulationEvaluator(config.scenario, config.evaluationSeeds()),
                                             config.jobs);
            const auto sample = baselines::sampleRandomGroups(
                config.randomCount, config.bounds, config.engineParams().space, config.masterSeed, cache);
            for (const auto& s : sample) result.rows.push_back(makeRow(config.campaignId, arm, 0, 0, s.members, s.evaluation));
            break;
        }
        case Algorithm::Greedy: {
            const auto seeds = config.evaluationSeeds();
            std::vector<int> ks;
            for (int k = config.bounds.kMin; k <= config.bounds.kMax; ++k) ks.push_back(k);
            std::vector<baselines::GreedyOutcome> outcomes(ks.size());
            parallelFor(ks.size(), config.jobs,
                        [&](std::size_t i) { outcomes[i] = baselines::greedyBaseline(config.scenario, ks[i], seeds); });
            netsim::SimConfig probe;
            probe.scenario = config.scenario;
            const auto nodes = netsim::buildNodes(probe);
            std::ostringstream greedyCsv;
            greedyCsv << "k,seed,reachability_before,reachability_after,nodes,ddr\n";
            for (const auto& o : outcomes) {
                for (std::size_t s = 0; s < seeds.size(); ++s) {
                    ResultRow row;
                    row.campaign = config.campaignId;
                    row.arm = arm;
                    row.repetition = static_cast<int>(s);
                    row.groupSize = o.k;
                    std::string nodeList;
                    for (const auto id : o.selected[s]) {
                        ++(genome::isVehicle(nodes.at(static_cast<std::size_t>(id)).movementClass) ? row.composition.bv
                                                                                                   : row.composition.bp);
                        nodeList += (nodeList.empty() ? "" : ";") + std::to_string(id);
                    }
                    row.groupHash = "greedy-k" + std::to_string(o.k) + "-" + nodeList;
                    std::replace(row.groupHash.begin(), row.groupHash.end(), ';', '.');
                    row.f1 = o.evaluation.ddrs[s];
                    row.f2 = o.evaluation.latencies[s];
                    row.ddrs = {o.evaluation.ddrs[s]};
                    result.rows.push_back(std::move(row));
                    greedyCsv << o.k << ',' << seeds[s] << ',' << o.reachabilityBefore[s] << ','
                              << o.reachabilityAfter[s] << ',' << nodeList << ',' << formatDouble(o.evaluation.ddrs[s])
                              << '\n';
                }
            }
            if (persist) writeFile((fs::path(config.outDir) / "greedy.csv").string(), greedyCsv.str());
            result.greedy = std::move(outcomes);
            break;
        }
    }
    if (persist) writeFile((fs::path(config.outDir) / "results.csv").string(), formatResultsCsv(result.rows));
    log.line("done: " + std::to_string(result.rows.size()) + " rows");
    return result;
}

}  // namespace dtn::harness
