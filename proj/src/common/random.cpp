#include "dtnattack/common/random.hpp"

#include <sstream>

#include "dtnattack/common/error.hpp"

namespace dtn {

std::string Rng::state() const {
    std::ostringstream out;
    out << engine_;
    return out.str();
}

void Rng::restore(std::string_view state) {
    std::istringstream in{std::string(state)};
    in >> engine_;
    if (in.fail()) throw ParseError("malformed random-stream state", 0);
}

}  // namespace dtn
