#include "fsde/errors.hpp"

namespace fsde {

FactorizationError::FactorizationError(std::size_t leading_minor, const std::string& what)
    : Error(what), leading_minor_(leading_minor) {}

BlowUpError::BlowUpError(std::size_t node, double time, const std::string& what)
    : Error(what), node_(node), time_(time) {}

}  // namespace fsde
