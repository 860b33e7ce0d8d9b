#include "dtnattack/evolution/group_evolution.hpp"

#include <algorithm>
#include <optional>

#include "dtnattack/common/error.hpp"
#include "dtnattack/evolution/selection.hpp"
#include "dtnattack/genome/operators.hpp"
#include "dtnattack/genome/serialization.hpp"
#include "json_io.hpp"

namespace dtn::evolution {

namespace {

constexpr std::uint64_t kEngineSalt = 0x6745;

std::string memberKey(const genome::AttackGroup& g) {
    std::string key;
    for (const auto id : genome::sortedMembers(g)) key += std::to_string(id) + ' ';
    return key;
}

void keepBetter(std::optional<FitnessVector>& current, const FitnessVector& candidate) {
    if (!current || isBetter(candidate, *current)) current = candidate;
}

}  // namespace

const char* operatorName(GeOperator op) {
    switch (op) {
        case GeOperator::OnePointCrossover:
            return "onePointImpreciseCrossover";
        case GeOperator::TwoPointCrossover:
            return "twoPointImpreciseCrossover";
        case GeOperator::SingleParameterAlteration:
            return "singleParameterAlterationMutation";
        case GeOperator::Insertion:
            return "insertionMutation";
        case GeOperator::Removal:
            return "removalMutation";
        case GeOperator::Replacement:
            return "replacementMutation";
        case GeOperator::GroupInsertion:
            return "groupRandomInsertionMutation";
        case GeOperator::GroupRemoval:
            return "groupRandomRemovalMutation";
        case GeOperator::GroupBalancedCrossover:
            return "groupBalancedCrossover";
        case GeOperator::GroupUnbalancedCrossover:
            return "groupUnbalancedCrossover";
        case GeOperator::GroupUnionIntersection:
            return "groupUnionIntersection";
        case GeOperator::GroupDreamTeam:
            return "groupDreamTeam";
    }
    return "unknown";
}

GroupEvolution::GroupEvolution(EngineParams params, EvaluationCache& cache)
    : params_(std::move(params)), cache_(&cache) {
    params_.validate();
}

GroupEvolution::GroupEvolution(EngineParams params, EvaluationCache& cache, std::uint64_t seed)
    : GroupEvolution(std::move(params), cache) {
    rng_ = Rng(deriveSeed(seed, kEngineSalt));
    adaptive_ = AdaptiveState::uniform(kGeOperatorCount, enabledOperators(), params_.tau, params_.sigma,
                                       params_.alpha);
    initialize();
}

std::vector<bool> GroupEvolution::enabledOperators() const {
    std::vector<bool> on(kGeOperatorCount, true);
    const bool groups = params_.bounds.kMax > 1;
    const bool resizable = params_.bounds.kMin < params_.bounds.kMax;
    for (std::size_t i = 6; i < kGeOperatorCount; ++i) on[i] = groups;
    on[static_cast<std::size_t>(GeOperator::GroupInsertion)] = groups && resizable;
    on[static_cast<std::size_t>(GeOperator::GroupRemoval)] = groups && resizable;
    on[static_cast<std::size_t>(GeOperator::GroupUnbalancedCrossover)] = groups && resizable;
    return on;
}

genome::IndividualId GroupEvolution::adopt(const genome::AttackerGenome& g,
                                           std::vector<genome::IndividualId>& fresh) {
    auto text = genome::formatGenome(g);
    if (const auto it = byText_.find(text); it != byText_.end()) return it->second;
    const auto id = nextId_++;
    individuals_[id] = {id, g, {}, generation_};
    byText_.emplace(std::move(text), id);
    fresh.push_back(id);
    return id;
}

Group GroupEvolution::resolve(const genome::AttackGroup& g) const {
    Group out;
    out.reserve(g.members.size());
    for (const auto id : g.members) out.push_back(individuals_.at(id).genome);
    return out;
}

Group GroupEvolution::bestGroup() const { return bestMembers_; }

void GroupEvolution::evaluatePending(const std::vector<genome::IndividualId>& freshIndividuals,
                                     std::vector<PendingGroup>& pending, std::vector<Evaluation>& groupEvals) {
    std::vector<Group> batch;
    batch.reserve(freshIndividuals.size() + pending.size());
    for (const auto id : freshIndividuals) batch.push_back({individuals_.at(id).genome});
    for (const auto& p : pending) batch.push_back(resolve(p.group));
    auto evals = cache_->evaluate(batch);
    for (std::size_t i = 0; i < freshIndividuals.size(); ++i)
        individuals_.at(freshIndividuals[i]).evaluation = evals[i];
    groupEvals.assign(evals.begin() + static_cast<std::ptrdiff_t>(freshIndividuals.size()), evals.end());
    for (std::size_t i = 0; i < pending.size(); ++i) logGroup(pending[i].group, groupEvals[i]);
}

void GroupEvolution::logGroup(const genome::AttackGroup& g, const Evaluation& e) {
    auto members = resolve(g);
    if (!logged_.insert(genome::canonicalForm(members)).second) return;
    evaluated_.push_back({generation_, std::move(members), e});
}

void GroupEvolution::initialize() {
    std::vector<genome::IndividualId> fresh;
    for (int i = 0; i < params_.nuIndividual; ++i) adopt(genome::randomGenome(params_.space, rng_), fresh);

    // Deal individuals out once before reusing any, so small groups still
    // cover the initial population where possible.
    std::vector<genome::IndividualId> order = fresh;
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng_.below(i)]);
    std::size_t cursor = 0;
    std::vector<PendingGroup> pending;
    for (int g = 0; g < params_.muGroup; ++g) {
        genome::AttackGroup group;
        const auto size = rng_.between(params_.bounds.kMin, params_.bounds.kMax);
        for (std::int64_t k = 0; k < size; ++k)
            group.members.push_back(cursor < order.size() ? order[cursor++] : fresh[rng_.below(fresh.size())]);
        pending.push_back({std::move(group), 0});
    }
    std::vector<genome::IndividualId> referenced;
    for (const auto& p : pending) referenced.insert(referenced.end(), p.group.members.begin(), p.group.members.end());
    std::sort(referenced.begin(), referenced.end());
    referenced.erase(std::unique(referenced.begin(), referenced.end()), referenced.end());
    for (auto it = individuals_.begin(); it != individuals_.end();) {
        if (std::binary_search(referenced.begin(), referenced.end(), it->first)) {
            ++it;
        } else {
            byText_.erase(genome::formatGenome(it->second.genome));
            it = individuals_.erase(it);
        }
    }

    std::vector<Evaluation> evals;
    evaluatePending(referenced, pending, evals);
    groups_.clear();
    survive(pending, evals);
    best_ = groups_.front().evaluation.fitness;
    bestMembers_ = resolve(groups_.front().group);
    record(std::vector<int>(kGeOperatorCount, 0));
}

void GroupEvolution::survive(std::vector<PendingGroup>& pending, std::vector<Evaluation>& evals) {
    std::vector<GroupEntry> all = std::move(groups_);
    for (std::size_t i = 0; i < pending.size(); ++i)
        all.push_back({std::move(pending[i].group), std::move(evals[i]), generation_});
    std::set<std::string> seen;
    std::vector<GroupEntry> unique;
    for (auto& g : all)
        if (seen.insert(memberKey(g.group)).second) unique.push_back(std::move(g));
    std::stable_sort(unique.begin(), unique.end(), [](const GroupEntry& a, const GroupEntry& b) {
        return isBetter(a.evaluation.fitness, b.evaluation.fitness);
    });
    if (unique.size() > static_cast<std::size_t>(params_.muGroup))
        unique.resize(static_cast<std::size_t>(params_.muGroup));
    groups_ = std::move(unique);
    removeOrphans();
}

void GroupEvolution::removeOrphans() {
    std::set<genome::IndividualId> referenced;
    for (const auto& g : groups_) referenced.insert(g.group.members.begin(), g.group.members.end());
    for (auto it = individuals_.begin(); it != individuals_.end();) {
        if (referenced.contains(it->first)) {
            ++it;
        } else {
            byText_.erase(genome::formatGenome(it->second.genome));
            it = individuals_.erase(it);
        }
    }
}

bool GroupEvolution::stopped() const {
    return stagnant_ >= params_.stagnation || (params_.maxGenerations > 0 && generation_ >= params_.maxGenerations);
}

bool GroupEvolution::step() {
    if (stopped()) return false;
    ++generation_;

    // Parent pools: the population as it stood at the start of the generation.
    std::vector<genome::IndividualId> ids;
    std::vector<FitnessVector> indFitness;
    for (const auto& [id, ind] : individuals_) {
        ids.push_back(id);
        indFitness.push_back(ind.evaluation.fitness);
    }
    std::vector<std::size_t> rankOrder(ids.size());
    for (std::size_t i = 0; i < rankOrder.size(); ++i) rankOrder[i] = i;
    std::stable_sort(rankOrder.begin(), rankOrder.end(),
                     [&](std::size_t a, std::size_t b) { return isBetter(indFitness[a], indFitness[b]); });
    std::vector<genome::IndividualId> ranked;
    for (const auto i : rankOrder) ranked.push_back(ids[i]);

    const std::vector<GroupEntry> parents = groups_;
    std::vector<FitnessVector> groupFitness;
    std::map<genome::IndividualId, std::vector<std::size_t>> holders;
    for (std::size_t gi = 0; gi < parents.size(); ++gi) {
        groupFitness.push_back(parents[gi].evaluation.fitness);
        for (const auto m : parents[gi].group.members) {
            auto& h = holders[m];
            if (h.empty() || h.back() != gi) h.push_back(gi);
        }
    }

    const double sigma = adaptive_.sigma;
    const double tau = adaptive_.tau;
    const auto& space = params_.space;
    const auto& bounds = params_.bounds;

    std::vector<int> applied(kGeOperatorCount, 0);
    std::vector<std::size_t> opOf;
    std::vector<std::optional<FitnessVector>> parentBest;
    std::vector<PendingGroup> pending;
    std::vector<genome::IndividualId> fresh;

    for (int a = 0; a < params_.lambda; ++a) {
        const auto opIndex = adaptive_.chooseOperator(rng_);
        const auto op = static_cast<GeOperator>(opIndex);
        ++applied[opIndex];
        const std::size_t app = opOf.size();
        opOf.push_back(opIndex);
        parentBest.emplace_back();
        auto& pb = parentBest.back();

        if (!isGroupOperator(op)) {
            const auto p1 = ids[tournamentSelect(indFitness, tau, rng_)];
            std::vector<std::pair<genome::AttackerGenome, genome::IndividualId>> children;
            const auto& g1 = individuals_.at(p1).genome;
            if (op == GeOperator::OnePointCrossover || op == GeOperator::TwoPointCrossover) {
                const auto p2 = ids[tournamentSelect(indFitness, tau, rng_)];
                const auto& g2 = individuals_.at(p2).genome;
                auto x = op == GeOperator::OnePointCrossover ? genome::onePointImpreciseCrossover(g1, g2, space, rng_)
                                                             : genome::twoPointImpreciseCrossover(g1, g2, space, rng_);
                children.emplace_back(std::move(x.first), p1);
                children.emplace_back(std::move(x.second), p2);
            } else {
                genome::MutationResult m;
                switch (op) {
                    case GeOperator::SingleParameterAlteration:
                        m = genome::singleParameterAlterationMutation(g1, space, rng_, sigma);
                        break;
                    case GeOperator::Insertion:
                        m = genome::insertionMutation(g1, space, rng_, sigma);
                        break;
                    case GeOperator::Removal:
                        m = genome::removalMutation(g1, space, rng_, sigma);
                        break;
                    default:
                        m = genome::replacementMutation(g1, space, rng_, sigma);
                        break;
                }
                children.emplace_back(std::move(m.genome), p1);
            }
            for (const auto& [child, parent] : children) {
                const auto cid = adopt(child, fresh);
                if (cid == parent) continue;
                const auto& h = holders.at(parent);
                const auto gi = h[rng_.below(h.size())];
                auto group = parents[gi].group;
                *std::find(group.members.begin(), group.members.end(), parent) = cid;
                keepBetter(pb, parents[gi].evaluation.fitness);
                pending.push_back({std::move(group), app});
            }
            continue;
        }

        ++groupOps_;
        const auto i1 = tournamentSelect(groupFitness, tau, rng_);
        const auto& a1 = parents[i1].group;
        keepBetter(pb, groupFitness[i1]);
        std::vector<genome::AttackGroup> offspring;
        auto second = [&]() -> const genome::AttackGroup& {
            const auto i2 = tournamentSelect(groupFitness, tau, rng_);
            keepBetter(pb, groupFitness[i2]);
            return parents[i2].group;
        };
        switch (op) {
            case GeOperator::GroupInsertion:
                offspring.push_back(genome::groupRandomInsertionMutation(a1, ids, bounds, rng_));
                break;
            case GeOperator::GroupRemoval:
                offspring.push_back(genome::groupRandomRemovalMutation(a1, bounds, rng_));
                break;
            case GeOperator::GroupBalancedCrossover: {
                const auto& a2 = second();
                auto r = genome::groupBalancedCrossover(a1, a2, bounds, rng_);
                offspring = {std::move(r.first), std::move(r.second)};
                break;
            }
            case GeOperator::GroupUnbalancedCrossover: {
                const auto& a2 = second();
                auto r = genome::groupUnbalancedCrossover(a1, a2, bounds, rng_);
                offspring = {std::move(r.first), std::move(r.second)};
                break;
            }
            case GeOperator::GroupUnionIntersection: {
                const auto& a2 = second();
                auto r = genome::groupUnionIntersection(a1, a2, bounds, rng_);
                offspring = {std::move(r.first), std::move(r.second)};
                break;
            }
            default:
                // A dream team has no parents; it must beat the current best.
                pb = groupFitness.front();
                offspring.push_back(genome::groupDreamTeam(ranked, bounds, rng_));
                break;
        }
        for (auto& g : offspring)
            if (bounds.admits(g.members.size())) pending.push_back({std::move(g), app});
    }

    std::vector<Evaluation> evals;
    evaluatePending(fresh, pending, evals);

    std::vector<OperatorTally> tallies(kGeOperatorCount);
    std::vector<bool> success(opOf.size(), false);
    for (std::size_t i = 0; i < pending.size(); ++i) {
        const auto app = pending[i].application;
        if (parentBest[app] && isBetter(evals[i].fitness, *parentBest[app])) success[app] = true;
    }
    for (std::size_t app = 0; app < opOf.size(); ++app) {
        ++tallies[opOf[app]].applied;
        if (success[app]) ++tallies[opOf[app]].succeeded;
    }

    survive(pending, evals);
    bool improved = false;
    if (isBetter(groups_.front().evaluation.fitness, best_)) {
        best_ = groups_.front().evaluation.fitness;
        bestMembers_ = resolve(groups_.front().group);
        improved = true;
        stagnant_ = 0;
    } else {
        ++stagnant_;
    }
    adaptive_.adapt(tallies, improved);
    record(applied);
    return true;
}

void GroupEvolution::run() {
    while (step()) {
    }
}

void GroupEvolution::record(const std::vector<int>& applied) {
    history_.push_back({generation_, best_, cache_->requests(), cache_->misses(), adaptive_.tau, adaptive_.sigma,
                        adaptive_.probabilities, applied});
}

std::string GroupEvolution::checkpoint() const {
    namespace io = jsonio;
    using io::json;
    json inds = json::array();
    for (const auto& [id, ind] : individuals_)
        inds.push_back({{"id", id},
                        {"genome", genome::formatGenome(ind.genome)},
                        {"evaluation", io::evaluation(ind.evaluation)},
                        {"birth", ind.birth}});
    json groups = json::array();
    for (const auto& g : groups_)
        groups.push_back({{"members", g.group.members}, {"evaluation", io::evaluation(g.evaluation)}, {"birth", g.birth}});
    json hist = json::array();
    for (const auto& r : history_) hist.push_back(io::record(r));
    json log = json::array();
    for (const auto& e : evaluated_) log.push_back(io::evaluated(e));
    json j = {{"engine", "ge"},
              {"params", io::params(params_)},
              {"rng", rng_.state()},
              {"individuals", inds},
              {"groups", groups},
              {"next_id", nextId_},
              {"adaptive", io::adaptive(adaptive_)},
              {"generation", generation_},
              {"stagnant", stagnant_},
              {"best", io::fitness(best_)},
              {"best_members", io::group(bestMembers_)},
              {"group_ops", groupOps_},
              {"history", hist},
              {"evaluated", log},
              {"cache", io::cache(*cache_)}};
    return j.dump(1);
}

GroupEvolution GroupEvolution::restore(const std::string& text, EvaluationCache& cacheRef) {
    namespace io = jsonio;
    using io::json;
    try {
        const auto j = json::parse(text);
        if (j.at("engine") != "ge") throw ValidationError("checkpoint is not a group-evolution checkpoint");
        GroupEvolution ge(io::params(j.at("params")), cacheRef);
        ge.rng_.restore(j.at("rng").get<std::string>());
        for (const auto& i : j.at("individuals")) {
            Individual ind{i.at("id"), genome::parseGenome(i.at("genome").get<std::string>()),
                           io::evaluation(i.at("evaluation")), i.at("birth")};
            ge.byText_.emplace(genome::formatGenome(ind.genome), ind.id);
            ge.individuals_.emplace(ind.id, std::move(ind));
        }
        for (const auto& g : j.at("groups"))
            ge.groups_.push_back({{g.at("members").get<std::vector<genome::IndividualId>>()},
                                  io::evaluation(g.at("evaluation")),
                                  g.at("birth")});
        ge.nextId_ = j.at("next_id");
        ge.adaptive_ = io::adaptive(j.at("adaptive"));
        ge.generation_ = j.at("generation");
        ge.stagnant_ = j.at("stagnant");
        ge.best_ = io::fitness(j.at("best"));
        ge.bestMembers_ = io::group(j.at("best_members"));
        ge.groupOps_ = j.at("group_ops");
        for (const auto& r : j.at("history")) ge.history_.push_back(io::record(r));
        for (const auto& e : j.at("evaluated")) {
            ge.evaluated_.push_back(io::evaluated(e));
            ge.logged_.insert(genome::canonicalForm(ge.evaluated_.back().members));
        }
        io::restoreCache(j.at("cache"), cacheRef);
        return ge;
    } catch (const json::exception& e) {
        throw ParseError(std::string("checkpoint: ") + e.what(), 0);
    }
}

}  // namespace dtn::evolution
