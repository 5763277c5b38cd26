#pragma once

#include <stdexcept>
#include <string>

namespace vsslab {

#define VSSLAB_ERROR(Name, Base)                                   \
    class Name : public Base {                                    \
    public:                                                       \
        explicit Name(const std::string& what) : Base(what) {}    \
    };

VSSLAB_ERROR(FieldMismatch, std::logic_error)
VSSLAB_ERROR(DivisionByZero, std::domain_error)
VSSLAB_ERROR(FieldTooSmall, std::invalid_argument)
VSSLAB_ERROR(DuplicateAbscissa, std::invalid_argument)
VSSLAB_ERROR(DegreeMismatch, std::invalid_argument)
VSSLAB_ERROR(InsufficientPolynomials, std::invalid_argument)
VSSLAB_ERROR(DuplicateFeed, std::invalid_argument)
VSSLAB_ERROR(ForeignParty, std::invalid_argument)
VSSLAB_ERROR(RoundOverrun, std::runtime_error)
VSSLAB_ERROR(Livelock, std::runtime_error)
VSSLAB_ERROR(OriginViolation, std::runtime_error)
VSSLAB_ERROR(ConfigInvalid, std::invalid_argument)
VSSLAB_ERROR(ConfigBound, ConfigInvalid)
VSSLAB_ERROR(EnumerationTooLarge, std::invalid_argument)

#undef VSSLAB_ERROR

}  // namespace vsslab
