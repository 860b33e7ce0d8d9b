#include "dtnattack/evolution/classical.hpp"

#include <algorithm>

#include "dtnattack/common/error.hpp"
#include "dtnattack/evolution/selection.hpp"
#include "dtnattack/genome/operators.hpp"
#include "dtnattack/genome/serialization.hpp"
#include "json_io.hpp"

namespace dtn::evolution {

namespace {

constexpr std::uint64_t kEngineSalt = 0x6561;

}  // namespace

const char* operatorName(ClassicalOperator op) {
    switch (op) {
        case ClassicalOperator::OnePointCrossover:
            return "onePointImpreciseCrossover";
        case ClassicalOperator::TwoPointCrossover:
            return "twoPointImpreciseCrossover";
        case ClassicalOperator::SingleParameterAlteration:
            return "singleParameterAlterationMutation";
        case ClassicalOperator::Insertion:
            return "insertionMutation";
        case ClassicalOperator::Removal:
            return "removalMutation";
        case ClassicalOperator::Replacement:
            return "replacementMutation";
    }
    return "unknown";
}

ClassicalEvolution::ClassicalEvolution(EngineParams params, EvaluationCache& cache)
    : params_(std::move(params)), cache_(&cache) {
    params_.validate();
}

ClassicalEvolution::ClassicalEvolution(EngineParams params, EvaluationCache& cache, std::uint64_t seed)
    : ClassicalEvolution(std::move(params), cache) {
    rng_ = Rng(deriveSeed(seed, kEngineSalt));
    adaptive_ = AdaptiveState::uniform(kClassicalOperatorCount, std::vector<bool>(kClassicalOperatorCount, true),
                                       params_.tau, params_.sigma, params_.alpha);
    initialize();
}

std::vector<Evaluation> ClassicalEvolution::evaluate(const std::vector<Group>& groups) {
    auto evals = cache_->evaluate(groups);
    for (std::size_t i = 0; i < groups.size(); ++i)
        if (logged_.insert(genome::canonicalForm(groups[i])).second)
            evaluated_.push_back({generation_, groups[i], evals[i]});
    return evals;
}

void ClassicalEvolution::initialize() {
    std::vector<Group> groups;
    for (int i = 0; i < params_.mu; ++i) {
        Group g;
        const auto size = rng_.between(params_.bounds.kMin, params_.bounds.kMax);
        for (std::int64_t k = 0; k < size; ++k) g.push_back(genome::randomGenome(params_.space, rng_));
        groups.push_back(std::move(g));
    }
    auto evals = evaluate(groups);
    std::vector<Candidate> all;
    for (std::size_t i = 0; i < groups.size(); ++i) all.push_back({std::move(groups[i]), std::move(evals[i]), 0});
    survive(std::move(all));
    record(std::vector<int>(kClassicalOperatorCount, 0));
}

genome::AttackerGenome& ClassicalEvolution::pickMember(Group& g) { return g[rng_.below(g.size())]; }

std::vector<Group> ClassicalEvolution::vary(ClassicalOperator op, const Group& a, const Group& b) {
    const auto& space = params_.space;
    const auto& bounds = params_.bounds;
    const double sigma = adaptive_.sigma;
    const bool blockLevel = bounds.kMin < bounds.kMax && op != ClassicalOperator::SingleParameterAlteration &&
                            rng_.bernoulli(0.5);

    if (op == ClassicalOperator::OnePointCrossover || op == ClassicalOperator::TwoPointCrossover) {
        if (blockLevel) {
            const auto cutA = rng_.below(a.size() + 1);
            const auto cutB = rng_.below(b.size() + 1);
            Group x(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(cutA));
            x.insert(x.end(), b.begin() + static_cast<std::ptrdiff_t>(cutB), b.end());
            Group y(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(cutB));
            y.insert(y.end(), a.begin() + static_cast<std::ptrdiff_t>(cutA), a.end());
            for (auto* g : {&x, &y}) {
                while (static_cast<int>(g->size()) > bounds.kMax)
                    g->erase(g->begin() + static_cast<std::ptrdiff_t>(rng_.below(g->size())));
                while (static_cast<int>(g->size()) < bounds.kMin) g->push_back(genome::randomGenome(space, rng_));
            }
            return {std::move(x), std::move(y)};
        }
        Group x = a;
        Group y = b;
        auto& ma = pickMember(x);
        auto& mb = pickMember(y);
        auto r = op == ClassicalOperator::OnePointCrossover ? genome::onePointImpreciseCrossover(ma, mb, space, rng_)
                                                            : genome::twoPointImpreciseCrossover(ma, mb, space, rng_);
        ma = std::move(r.first);
        mb = std::move(r.second);
        return {std::move(x), std::move(y)};
    }

    Group x = a;
    if (blockLevel) {
        const int size = static_cast<int>(x.size());
        switch (op) {
            case ClassicalOperator::Insertion:
                if (size < bounds.kMax)
                    x.insert(x.begin() + static_cast<std::ptrdiff_t>(rng_.below(x.size() + 1)),
                             genome::randomGenome(space, rng_));
                break;
            case ClassicalOperator::Removal:
                if (size > bounds.kMin) x.erase(x.begin() + static_cast<std::ptrdiff_t>(rng_.below(x.size())));
                break;
            default:
                pickMember(x) = genome::randomGenome(space, rng_);
                break;
        }
        return {std::move(x)};
    }
    auto& m = pickMember(x);
    switch (op) {
        case ClassicalOperator::SingleParameterAlteration:
            m = genome::singleParameterAlterationMutation(m, space, rng_, sigma).genome;
            break;
        case ClassicalOperator::Insertion:
            m = genome::insertionMutation(m, space, rng_, sigma).genome;
            break;
        case ClassicalOperator::Removal:
            m = genome::removalMutation(m, space, rng_, sigma).genome;
            break;
        default:
            m = genome::replacementMutation(m, space, rng_, sigma).genome;
            break;
    }
    return {std::move(x)};
}

void ClassicalEvolution::survive(std::vector<Candidate> offspring) {
    std::vector<Candidate> all = std::move(population_);
    for (auto& c : offspring) all.push_back(std::move(c));
    std::set<std::string> seen;
    std::vector<Candidate> unique;
    for (auto& c : all)
        if (seen.insert(genome::canonicalForm(c.members)).second) unique.push_back(std::move(c));
    std::stable_sort(unique.begin(), unique.end(), [](const Candidate& a, const Candidate& b) {
        return isBetter(a.evaluation.fitness, b.evaluation.fitness);
    });
    if (unique.size() > static_cast<std::size_t>(params_.mu)) unique.resize(static_cast<std::size_t>(params_.mu));
    population_ = std::move(unique);
}

bool ClassicalEvolution::stopped() const {
    return stagnant_ >= params_.stagnation || (params_.maxGenerations > 0 && generation_ >= params_.maxGenerations);
}

bool ClassicalEvolution::step() {
    if (stopped()) return false;
    ++generation_;

    std::vector<FitnessVector> fitness;
    for (const auto& c : population_) fitness.push_back(c.evaluation.fitness);
    const double tau = adaptive_.tau;
    const FitnessVector before = bestFitness();

    std::vector<int> applied(kClassicalOperatorCount, 0);
    std::vector<std::size_t> opOf;
    std::vector<FitnessVector> parentBest;
    std::vector<std::size_t> applicationOf;
    std::vector<Group> children;
    for (int a = 0; a < params_.lambda; ++a) {
        const auto opIndex = adaptive_.chooseOperator(rng_);
        const auto op = static_cast<ClassicalOperator>(opIndex);
        ++applied[opIndex];
        const auto i1 = tournamentSelect(fitness, tau, rng_);
        FitnessVector pb = fitness[i1];
        std::size_t i2 = i1;
        if (op == ClassicalOperator::OnePointCrossover || op == ClassicalOperator::TwoPointCrossover) {
            i2 = tournamentSelect(fitness, tau, rng_);
            if (isBetter(fitness[i2], pb)) pb = fitness[i2];
        }
        for (auto& g : vary(op, population_[i1].members, population_[i2].members)) {
            children.push_back(std::move(g));
            applicationOf.push_back(opOf.size());
        }
        opOf.push_back(opIndex);
        parentBest.push_back(pb);
    }

    auto evals = evaluate(children);
    std::vector<bool> success(opOf.size(), false);
    std::vector<Candidate> offspring;
    for (std::size_t i = 0; i < children.size(); ++i) {
        const auto app = applicationOf[i];
        if (isBetter(evals[i].fitness, parentBest[app])) success[app] = true;
        offspring.push_back({std::move(children[i]), std::move(evals[i]), generation_});
    }
    std::vector<OperatorTally> tallies(kClassicalOperatorCount);
    for (std::size_t app = 0; app < opOf.size(); ++app) {
        ++tallies[opOf[app]].applied;
        if (success[app]) ++tallies[opOf[app]].succeeded;
    }

    survive(std::move(offspring));
    const bool improved = isBetter(bestFitness(), before);
    stagnant_ = improved ? 0 : stagnant_ + 1;
    adaptive_.adapt(tallies, improved);
    record(applied);
    return true;
}

void ClassicalEvolution::run() {
    while (step()) {
    }
}

void ClassicalEvolution::record(const std::vector<int>& applied) {
    history_.push_back({generation_, bestFitness(), cache_->requests(), cache_->misses(), adaptive_.tau,
                        adaptive_.sigma, adaptive_.probabilities, applied});
}

std::string ClassicalEvolution::checkpoint() const {
    namespace io = jsonio;
    using io::json;
    json pop = json::array();
    for (const auto& c : population_)
        pop.push_back({{"members", io::group(c.members)}, {"evaluation", io::evaluation(c.evaluation)},
                       {"birth", c.birth}});
    json hist = json::array();
    for (const auto& r : history_) hist.push_back(io::record(r));
    json log = json::array();
    for (const auto& e : evaluated_) log.push_back(io::evaluated(e));
    json j = {{"engine", "classical"},
              {"params", io::params(params_)},
              {"rng", rng_.state()},
              {"population", pop},
              {"adaptive", io::adaptive(adaptive_)},
              {"generation", generation_},
              {"stagnant", stagnant_},
              {"history", hist},
              {"evaluated", log},
              {"cache", io::cache(*cache_)}};
    return j.dump(1);
}

ClassicalEvolution ClassicalEvolution::restore(const std::string& text, EvaluationCache& cacheRef) {
    namespace io = jsonio;
    using io::json;
    try {
        const auto j = json::parse(text);
        if (j.at("engine") != "classical") throw ValidationError("checkpoint is not a classical-EA checkpoint");
        ClassicalEvolution ea(io::params(j.at("params")), cacheRef);
        ea.rng_.restore(j.at("rng").get<std::string>());
        for (const auto& c : j.at("population"))
            ea.population_.push_back({io::group(c.at("members")), io::evaluation(c.at("evaluation")), c.at("birth")});
        ea.adaptive_ = io::adaptive(j.at("adaptive"));
        ea.generation_ = j.at("generation");
        ea.stagnant_ = j.at("stagnant");
        for (const auto& r : j.at("history")) ea.history_.push_back(io::record(r));
        for (const auto& e : j.at("evaluated")) {
            ea.evaluated_.push_back(io::evaluated(e));
            ea.logged_.insert(genome::canonicalForm(ea.evaluated_.back().members));
        }
        io::restoreCache(j.at("cache"), cacheRef);
        return ea;
    } catch (const json::exception& e) {
        throw ParseError(std::string("checkpoint: ") + e.what(), 0);
    }
}

}  // namespace dtn::evolution
