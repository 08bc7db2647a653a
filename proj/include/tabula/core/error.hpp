#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tabula {

// Every failure surfaced by the engine carries one of these codes. The
// string form is part of the public API (HTTP bodies, CLI stderr) and must
// stay stable.
enum class ErrorCode {
    // ingest
    EmptyInput,
    UndecodableBytes,
    HeaderDuplicate,
    AllMissing,
    UnknownProject,
    UnknownJob,
    ProfileNotReady,
    // matcher
    EmptyQuestion,
    DanglingOperandRequired,
    NoSignal,
    EmptyCorpus,
    // analysis
    ColumnTypeMismatch,
    EmptyAfterFilter,
    UnknownColumn,
    DegenerateSplit,
    TooFewRows,
    TooManyLevels,
    TooFewLevels,
    NonNumericValue,
    NonMonotoneTime,
    ConstantColumn,
    // automl
    NonNumericTarget,
    AllFeaturesConstant,
    LengthMismatch,
    EmptyRange,
    UnknownFeature,
    SchemaMismatch,
    UnknownModel,
    ModelNotReady,
    // insight
    TooFewColumns,
    EmptyEvalSet,
    EmptySession,
    UnknownIntention,
    // guidance
    UnknownTarget,
    InvalidSettings,
    SessionClosed,
    UnknownSession,
    UnknownReport,
    // service / plumbing
    BadRequest,
    UnsupportedMediaType,
    NotFound,
    Io,
    Internal,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::EmptyInput: return "EMPTY_INPUT";
        case ErrorCode::UndecodableBytes: return "UNDECODABLE_BYTES";
        case ErrorCode::HeaderDuplicate: return "HEADER_DUPLICATE";
        case ErrorCode::AllMissing: return "ALL_MISSING";
        case ErrorCode::UnknownProject: return "UNKNOWN_PROJECT";
        case ErrorCode::UnknownJob: return "UNKNOWN_JOB";
        case ErrorCode::ProfileNotReady: return "PROFILE_NOT_READY";
        case ErrorCode::EmptyQuestion: return "EMPTY_QUESTION";
        case ErrorCode::DanglingOperandRequired: return "DANGLING_OPERAND_REQUIRED";
        case ErrorCode::NoSignal: return "NO_SIGNAL";
        case ErrorCode::EmptyCorpus: return "EMPTY_CORPUS";
        case ErrorCode::ColumnTypeMismatch: return "COLUMN_TYPE_MISMATCH";
        case ErrorCode::EmptyAfterFilter: return "EMPTY_AFTER_FILTER";
        case ErrorCode::UnknownColumn: return "UNKNOWN_COLUMN";
        case ErrorCode::DegenerateSplit: return "DEGENERATE_SPLIT";
        case ErrorCode::TooFewRows: return "TOO_FEW_ROWS";
        case ErrorCode::TooManyLevels: return "TOO_MANY_LEVELS";
        case ErrorCode::TooFewLevels: return "TOO_FEW_LEVELS";
        case ErrorCode::NonNumericValue: return "NON_NUMERIC_VALUE";
        case ErrorCode::NonMonotoneTime: return "NON_MONOTONE_TIME";
        case ErrorCode::ConstantColumn: return "CONSTANT_COLUMN";
        case ErrorCode::NonNumericTarget: return "NON_NUMERIC_TARGET";
        case ErrorCode::AllFeaturesConstant: return "ALL_FEATURES_CONSTANT";
        case ErrorCode::LengthMismatch: return "LENGTH_MISMATCH";
        case ErrorCode::EmptyRange: return "EMPTY_RANGE";
        case ErrorCode::UnknownFeature: return "UNKNOWN_FEATURE";
        case ErrorCode::SchemaMismatch: return "SCHEMA_MISMATCH";
        case ErrorCode::UnknownModel: return "UNKNOWN_MODEL";
        case ErrorCode::ModelNotReady: return "MODEL_NOT_READY";
        case ErrorCode::TooFewColumns: return "TOO_FEW_COLUMNS";
        case ErrorCode::EmptyEvalSet: return "EMPTY_EVAL_SET";
        case ErrorCode::EmptySession: return "EMPTY_SESSION";
        case ErrorCode::UnknownIntention: return "UNKNOWN_INTENTION";
        case ErrorCode::UnknownTarget: return "UNKNOWN_TARGET";
        case ErrorCode::InvalidSettings: return "INVALID_SETTINGS";
        case ErrorCode::SessionClosed: return "SESSION_CLOSED";
        case ErrorCode::UnknownSession: return "UNKNOWN_SESSION";
        case ErrorCode::UnknownReport: return "UNKNOWN_REPORT";
        case ErrorCode::BadRequest: return "BAD_REQUEST";
        case ErrorCode::UnsupportedMediaType: return "UNSUPPORTED_MEDIA_TYPE";
        case ErrorCode::NotFound: return "NOT_FOUND";
        case ErrorCode::Io: return "IO_ERROR";
        case ErrorCode::Internal: return "INTERNAL";
    }
    return "INTERNAL";
}

// HTTP status used by the service for each code.
constexpr int http_status(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::UnknownProject:
        case ErrorCode::UnknownJob:
        case ErrorCode::UnknownModel:
        case ErrorCode::UnknownSession:
        case ErrorCode::UnknownReport:
        case ErrorCode::NotFound:
            return 404;
        case ErrorCode::ProfileNotReady:
        case ErrorCode::SessionClosed:
        case ErrorCode::ModelNotReady:
            return 409;
        case ErrorCode::Io:
        case ErrorCode::Internal:
            return 500;
        case ErrorCode::UndecodableBytes:
        case ErrorCode::UnsupportedMediaType:
            return 415;
        case ErrorCode::BadRequest:
            return 400;
        default:
            return 422;
    }
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }
    std::string_view code_name() const noexcept { return to_string(code_); }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace tabula
