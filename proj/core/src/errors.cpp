#include "noncollide/errors.hpp"

namespace noncollide {

ChamberViolation::ChamberViolation(std::size_t index, const std::string& what)
    : DomainError(what), index_(index) {}

NumericalUnderflow::NumericalUnderflow(double log_value, const std::string& what)
    : Error(what), log_value_(log_value) {}

}  // namespace noncollide
