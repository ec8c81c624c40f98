#pragma once

#include <stdexcept>
#include <string>

namespace gapcert {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonFinite : Error {
    explicit NonFinite(const std::string& msg) : Error(msg) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

struct RankDeficient : Error {
    explicit RankDeficient(const std::string& msg) : Error(msg) {}
};

struct SingularOperator : Error {
    explicit SingularOperator(const std::string& msg) : Error(msg) {}
};

struct NotGraphRepresentable : Error {
    explicit NotGraphRepresentable(const std::string& msg) : Error(msg) {}
};

struct HypothesisViolated : Error {
    explicit HypothesisViolated(const std::string& msg) : Error(msg) {}
};

struct DegenerateBound : Error {
    explicit DegenerateBound(const std::string& msg) : Error(msg) {}
};

struct WindowNotInResolvent : Error {
    explicit WindowNotInResolvent(const std::string& msg) : Error(msg) {}
};

struct GapConditionFailed : Error {
    explicit GapConditionFailed(const std::string& msg) : Error(msg) {}
};

struct IndexOutOfRange : Error {
    explicit IndexOutOfRange(const std::string& msg) : Error(msg) {}
};

struct InvalidSpec : Error {
    explicit InvalidSpec(const std::string& msg) : Error(msg) {}
};

// Signals a bug or a tolerance failure, never expected behaviour.
struct InternalContradiction : Error {
    explicit InternalContradiction(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

}  // namespace gapcert
