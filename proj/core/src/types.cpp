#include "fsde/types.hpp"

#include <cmath>
#include <string>

#include "fsde/errors.hpp"

namespace fsde {

HurstParameter::HurstParameter(double value) : value_(value)
{
    if (!(value > 0.5 && value < 1.0)) {
        throw DomainError("H must lie in (1/2,1), got " + std::to_string(value));
    }
}

AlphaParameter::AlphaParameter(double value) : value_(value)
{
    if (!(value > 0.0 && value < 0.5)) {
        throw DomainError("alpha must lie in (0,1/2), got " + std::to_string(value));
    }
}

FracOrder::FracOrder(double value) : value_(value)
{
    if (!(value > 0.0 && value < 1.0)) {
        throw DomainError("fractional order must lie in (0,1), got " + std::to_string(value));
    }
}

}  // namespace fsde
