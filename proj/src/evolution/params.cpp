#include "dtnattack/evolution/params.hpp"

#include "dtnattack/common/error.hpp"

namespace dtn::evolution {

void EngineParams::validate() const {
    space.validateSelf();
    if (bounds.kMin < 1 || bounds.kMax < bounds.kMin) throw ValidationError("need 1 <= kMin <= kMax");
    if (!(tau >= 1.0 && tau <= 4.0)) throw ValidationError("tau must lie in [1, 4]");
    if (!(sigma >= 0.0 && sigma < 1.0)) throw ValidationError("sigma must lie in [0, 1)");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ValidationError("alpha must lie in [0, 1]");
    if (stagnation < 1) throw ValidationError("stagnation threshold must be >= 1");
    if (maxGenerations < 0) throw ValidationError("max generations must be >= 0");
    if (mu < 1 || lambda < 1 || muGroup < 1 || nuIndividual < 1)
        throw ValidationError("population sizes and lambda must be >= 1");
}

}  // namespace dtn::evolution
