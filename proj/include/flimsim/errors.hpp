#pragma once

#include <stdexcept>
#include <string>

namespace flimsim {

// Base class for all library errors. kind() returns a stable machine-readable
// name used by the CLI's error JSON.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(msg), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define FLIMSIM_DEFINE_ERROR(Name)                                       \
    class Name : public Error {                                          \
    public:                                                              \
        explicit Name(const std::string& msg) : Error(#Name, msg) {}     \
    }

FLIMSIM_DEFINE_ERROR(DomainError);
FLIMSIM_DEFINE_ERROR(AngleListMismatch);
FLIMSIM_DEFINE_ERROR(DegenerateGeometry);
FLIMSIM_DEFINE_ERROR(BadRange);
FLIMSIM_DEFINE_ERROR(SubsetInfeasible);
FLIMSIM_DEFINE_ERROR(SingularSystem);
FLIMSIM_DEFINE_ERROR(ConfigMismatch);
FLIMSIM_DEFINE_ERROR(ParseError);
FLIMSIM_DEFINE_ERROR(ValidationError);

#undef FLIMSIM_DEFINE_ERROR

}  // namespace flimsim
