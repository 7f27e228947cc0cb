#pragma once

#include <stdexcept>
#include <string>

namespace qgw {

// Base of every failure raised by the library. kind() is a stable tag used
// in reports and CLI diagnostics.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "error"; }
};

#define QGW_DEFINE_ERROR(Name, Tag)                                   \
    class Name : public Error {                                       \
    public:                                                           \
        using Error::Error;                                           \
        const char* kind() const noexcept override { return Tag; }    \
    };

QGW_DEFINE_ERROR(DimensionError, "dimension-error")
QGW_DEFINE_ERROR(NumericError, "numeric-error")
QGW_DEFINE_ERROR(FaithfulnessError, "faithfulness-error")
QGW_DEFINE_ERROR(PreconditionError, "precondition-error")
QGW_DEFINE_ERROR(InvalidFactorizationError, "invalid-factorization-error")
QGW_DEFINE_ERROR(MembershipError, "membership-error")
QGW_DEFINE_ERROR(NotWellDefinedError, "not-well-defined-error")
QGW_DEFINE_ERROR(InternalInconsistencyError, "internal-inconsistency-error")
QGW_DEFINE_ERROR(InputError, "input-error")

#undef QGW_DEFINE_ERROR

}  // namespace qgw
