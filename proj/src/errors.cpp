#include "fuzzquant/errors.hpp"

namespace fq {

const char* error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::EmptySignal: return "EmptySignal";
    case ErrorCode::DegenerateK: return "DegenerateK";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::DegenerateCentroids: return "DegenerateCentroids";
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::CorruptData: return "CorruptData";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::CircleOutOfBounds: return "CircleOutOfBounds";
    case ErrorCode::DiscOutOfBounds: return "DiscOutOfBounds";
    case ErrorCode::ZeroRadius: return "ZeroRadius";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyRow: return "EmptyRow";
    case ErrorCode::InvalidPosition: return "InvalidPosition";
    case ErrorCode::PupilNotFound: return "PupilNotFound";
    case ErrorCode::RowCountMismatch: return "RowCountMismatch";
    case ErrorCode::NoIrisBand: return "NoIrisBand";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    }
    return "UnknownError";
}

} // namespace fq
