#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace svdkit {

// Base error. Every failure carries a stable machine-readable code (used by
// the CLI's "ERROR <code>: <message>" contract) plus a human message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define SVDKIT_DEFINE_ERROR(Name)                                    \
    class Name : public Error {                                      \
    public:                                                          \
        explicit Name(const std::string& message)                    \
            : Error(#Name, message) {}                               \
    }

// svd-core
SVDKIT_DEFINE_ERROR(NonFiniteInput);
SVDKIT_DEFINE_ERROR(ShapeError);
SVDKIT_DEFINE_ERROR(RankOutOfRange);
SVDKIT_DEFINE_ERROR(ConvergenceFailure);

// rollcall
SVDKIT_DEFINE_ERROR(DuplicateVote);
SVDKIT_DEFINE_ERROR(EmptyInput);
SVDKIT_DEFINE_ERROR(DegenerateMatrix);
SVDKIT_DEFINE_ERROR(UnknownParty);

// grains
SVDKIT_DEFINE_ERROR(ParameterError);
SVDKIT_DEFINE_ERROR(DegenerateInput);
SVDKIT_DEFINE_ERROR(SingularShape);
SVDKIT_DEFINE_ERROR(InvalidKind);
SVDKIT_DEFINE_ERROR(MismatchedFrames);
SVDKIT_DEFINE_ERROR(InsufficientData);

// entangle
SVDKIT_DEFINE_ERROR(NotNormalized);

// tensor3
SVDKIT_DEFINE_ERROR(InvalidMode);

// cli / io
SVDKIT_DEFINE_ERROR(IoError);
SVDKIT_DEFINE_ERROR(ParseError);

#undef SVDKIT_DEFINE_ERROR

} // namespace svdkit
