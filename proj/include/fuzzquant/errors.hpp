#ifndef FUZZQUANT_ERRORS_HPP
#define FUZZQUANT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fq {

enum class ErrorCode {
    // quantizer
    EmptySignal,
    DegenerateK,
    NonFiniteValue,
    LengthMismatch,
    ConvergenceFailure,
    // indicators
    DegenerateCentroids,
    // raster
    FileNotFound,
    UnsupportedFormat,
    CorruptData,
    IoError,
    CircleOutOfBounds,
    // polar
    DiscOutOfBounds,
    ZeroRadius,
    DimensionMismatch,
    EmptyRow,
    InvalidPosition,
    // pupil
    PupilNotFound,
    // cfis
    RowCountMismatch,
    NoIrisBand,
    // synth
    InvalidSpec,
};

const char* error_code_name(ErrorCode code);

/// Library error. `stage()` is set by the segmentation pipeline so callers
/// can tell pupil-finder failures from limbic-boundary failures.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}
    Error(ErrorCode code, const std::string& message, std::string stage)
        : std::runtime_error(message), code_(code), stage_(std::move(stage)) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& stage() const noexcept { return stage_; }

private:
    ErrorCode code_;
    std::string stage_;
};

} // namespace fq

#endif
