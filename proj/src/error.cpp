#include "autota/error.hpp"

namespace autota {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::MalformedQuoteId: return "MalformedQuoteId";
        case ErrorKind::DuplicateQuoteId: return "DuplicateQuoteId";
        case ErrorKind::EmptyTranscript: return "EmptyTranscript";
        case ErrorKind::EmptyUtterance: return "EmptyUtterance";
        case ErrorKind::UnknownThemeId: return "UnknownThemeId";
        case ErrorKind::ArityMismatch: return "ArityMismatch";
        case ErrorKind::MissingPayload: return "MissingPayload";
        case ErrorKind::BackendUnavailable: return "BackendUnavailable";
        case ErrorKind::UnparseableResponse: return "UnparseableResponse";
        case ErrorKind::EmptyCorpus: return "EmptyCorpus";
        case ErrorKind::InsufficientRuns: return "InsufficientRuns";
        case ErrorKind::InsufficientTranscripts: return "InsufficientTranscripts";
        case ErrorKind::EmptyThemeList: return "EmptyThemeList";
        case ErrorKind::ZeroVector: return "ZeroVector";
        case ErrorKind::NoRecords: return "NoRecords";
        case ErrorKind::DivergedLoss: return "DivergedLoss";
        case ErrorKind::NoCandidates: return "NoCandidates";
        case ErrorKind::PipelineFailure: return "PipelineFailure";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::ConfigError: return "ConfigError";
        case ErrorKind::IoError: return "IoError";
    }
    return "UnknownError";
}

} // namespace autota
