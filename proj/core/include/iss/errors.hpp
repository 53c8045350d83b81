#pragma once

#include <stdexcept>
#include <string>

namespace iss {

// Base class for all library errors. Subtypes exist so callers can catch
// a specific failure without string matching.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define ISS_DEFINE_ERROR(NAME)                                                 \
    struct NAME : Error {                                                      \
        using Error::Error;                                                    \
    }

ISS_DEFINE_ERROR(NonFinite);
ISS_DEFINE_ERROR(DuplicateNode);
ISS_DEFINE_ERROR(TooFewSamples);
ISS_DEFINE_ERROR(SingularObservedBlock);
ISS_DEFINE_ERROR(SpernerViolation);
ISS_DEFINE_ERROR(Trivial);
ISS_DEFINE_ERROR(UnknownParticipant);
ISS_DEFINE_ERROR(WrongShareCount);
ISS_DEFINE_ERROR(NotQualified);
ISS_DEFINE_ERROR(DegeneratePair);
ISS_DEFINE_ERROR(CoincidentPoints);
ISS_DEFINE_ERROR(NotFractional);
ISS_DEFINE_ERROR(BadLabel);
ISS_DEFINE_ERROR(EmptySubset);
ISS_DEFINE_ERROR(IllConditioned);
ISS_DEFINE_ERROR(UnknownScheme);
ISS_DEFINE_ERROR(BadParameter);

#undef ISS_DEFINE_ERROR

// Parse failures carry the 1-based line number of the offending input line.
struct ParseError : Error {
    ParseError(const std::string& what, long line)
        : Error(what + " (line " + std::to_string(line) + ")"), line(line) {}
    long line;
};

} // namespace iss
