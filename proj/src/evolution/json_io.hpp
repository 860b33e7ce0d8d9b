#pragma once

// JSON encodings shared by the engine checkpoints.

#include <json.hpp>

#include "dtnattack/common/text.hpp"
#include "dtnattack/evolution/adaptation.hpp"
#include "dtnattack/evolution/evaluation.hpp"
#include "dtnattack/evolution/params.hpp"
#include "dtnattack/genome/serialization.hpp"

namespace dtn::evolution::jsonio {

using nlohmann::json;

// Doubles travel as shortest round-trip text so checkpoints are exact.
inline json number(double v) { return formatDouble(v); }
inline double number(const json& j) { return parseDouble(j.get<std::string>()); }

inline json numbers(const std::vector<double>& v) {
    json a = json::array();
    for (const auto x : v) a.push_back(number(x));
    return a;
}
inline std::vector<double> numbers(const json& j) {
    std::vector<double> v;
    for (const auto& x : j) v.push_back(number(x));
    return v;
}

inline json fitness(const FitnessVector& f) { return json::array({number(f.f1), number(f.f2)}); }
inline FitnessVector fitness(const json& j) { return {number(j.at(0)), number(j.at(1))}; }

inline json evaluation(const Evaluation& e) {
    return {{"fitness", fitness(e.fitness)}, {"ddrs", numbers(e.ddrs)}, {"latencies", numbers(e.latencies)}};
}
inline Evaluation evaluation(const json& j) {
    return {fitness(j.at("fitness")), numbers(j.at("ddrs")), numbers(j.at("latencies"))};
}

inline json group(const Group& g) { return genome::formatGroup(g); }
inline Group group(const json& j) { return genome::parseGroup(j.get<std::string>()); }

inline json params(const EngineParams& p) {
    json s = {{"movement_classes", p.space.movementClasses},
              {"rows", p.space.rows},
              {"cols", p.space.cols},
              {"min_pois", p.space.minPois},
              {"max_pois", p.space.maxPois}};
    json logics = json::array();
    for (const auto l : p.space.logics) logics.push_back(std::string(genome::toString(l)));
    s["logics"] = logics;
    return {{"space", s},
            {"k_min", p.bounds.kMin},
            {"k_max", p.bounds.kMax},
            {"tau", number(p.tau)},
            {"sigma", number(p.sigma)},
            {"alpha", number(p.alpha)},
            {"stagnation", p.stagnation},
            {"max_generations", p.maxGenerations},
            {"mu", p.mu},
            {"lambda", p.lambda},
            {"mu_group", p.muGroup},
            {"nu_individual", p.nuIndividual}};
}
inline EngineParams params(const json& j) {
    EngineParams p;
    const auto& s = j.at("space");
    p.space.movementClasses = s.at("movement_classes").get<std::vector<std::string>>();
    p.space.logics.clear();
    for (const auto& l : s.at("logics")) p.space.logics.push_back(genome::parseAttackLogic(l.get<std::string>()));
    p.space.rows = s.at("rows");
    p.space.cols = s.at("cols");
    p.space.minPois = s.at("min_pois");
    p.space.maxPois = s.at("max_pois");
    p.bounds = {j.at("k_min").get<int>(), j.at("k_max").get<int>()};
    p.tau = number(j.at("tau"));
    p.sigma = number(j.at("sigma"));
    p.alpha = number(j.at("alpha"));
    p.stagnation = j.at("stagnation");
    p.maxGenerations = j.at("max_generations");
    p.mu = j.at("mu");
    p.lambda = j.at("lambda");
    p.muGroup = j.at("mu_group");
    p.nuIndividual = j.at("nu_individual");
    return p;
}

inline json adaptive(const AdaptiveState& a) {
    return {{"tau", number(a.tau)},
            {"sigma", number(a.sigma)},
            {"alpha", number(a.alpha)},
            {"probabilities", numbers(a.probabilities)},
            {"enabled", a.enabled}};
}
inline AdaptiveState adaptive(const json& j) {
    AdaptiveState a;
    a.tau = number(j.at("tau"));
    a.sigma = number(j.at("sigma"));
    a.alpha = number(j.at("alpha"));
    a.probabilities = numbers(j.at("probabilities"));
    a.enabled = j.at("enabled").get<std::vector<bool>>();
    return a;
}

inline json record(const GenerationRecord& r) {
    return {{"generation", r.generation},
            {"best", fitness(r.best)},
            {"requests", r.requests},
            {"evaluations", r.evaluations},
            {"tau", number(r.tau)},
            {"sigma", number(r.sigma)},
            {"probabilities", numbers(r.probabilities)},
            {"applied", r.applied}};
}
inline GenerationRecord record(const json& j) {
    return {j.at("generation"),         fitness(j.at("best")),        j.at("requests"),
            j.at("evaluations"),        number(j.at("tau")),          number(j.at("sigma")),
            numbers(j.at("probabilities")), j.at("applied").get<std::vector<int>>()};
}

inline json evaluated(const EvaluatedGroup& e) {
    return {{"generation", e.generation}, {"members", group(e.members)}, {"evaluation", evaluation(e.evaluation)}};
}
inline EvaluatedGroup evaluated(const json& j) {
    return {j.at("generation"), group(j.at("members")), evaluation(j.at("evaluation"))};
}

inline json cache(const EvaluationCache& c) {
    json entries = json::array();
    for (const auto& [key, e] : c.entries()) entries.push_back({{"group", key}, {"evaluation", evaluation(e)}});
    return {{"requests", c.requests()}, {"entries", entries}};
}
inline void restoreCache(const json& j, EvaluationCache& c) {
    for (const auto& e : j.at("entries")) c.insert(e.at("group").get<std::string>(), evaluation(e.at("evaluation")));
    c.setRequests(j.at("requests").get<std::size_t>());
}

}  // namespace dtn::evolution::jsonio
