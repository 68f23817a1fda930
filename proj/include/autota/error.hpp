#pragma once

#include <stdexcept>
#include <string>

namespace autota {

enum class ErrorKind {
    MalformedQuoteId,
    DuplicateQuoteId,
    EmptyTranscript,
    EmptyUtterance,
    UnknownThemeId,
    ArityMismatch,
    MissingPayload,
    BackendUnavailable,
    UnparseableResponse,
    EmptyCorpus,
    InsufficientRuns,
    InsufficientTranscripts,
    EmptyThemeList,
    ZeroVector,
    NoRecords,
    DivergedLoss,
    NoCandidates,
    PipelineFailure,
    ParseError,
    ConfigError,
    IoError,
};

const char* to_string(ErrorKind kind);

/// Single exception type for the whole pipeline; `kind()` carries the
/// machine-checkable category, what() the human message.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace autota
