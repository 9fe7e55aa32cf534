#include "skewrad/error.hpp"

namespace skewrad {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ShapeError: return "ShapeError";
    case ErrorCode::AssociativityViolation: return "AssociativityViolation";
    case ErrorCode::OrderIncompatibility: return "OrderIncompatibility";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorCode::NotAnIdeal: return "NotAnIdeal";
    case ErrorCode::LeibnizViolation: return "LeibnizViolation";
    case ErrorCode::OrderViolation: return "OrderViolation";
    case ErrorCode::ContextMismatch: return "ContextMismatch";
    case ErrorCode::NotNilpotent: return "NotNilpotent";
    case ErrorCode::SearchCapExceeded: return "SearchCapExceeded";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::NotInS: return "NotInS";
    case ErrorCode::QuasiInverseFailure: return "QuasiInverseFailure";
    case ErrorCode::CertificateFailure: return "CertificateFailure";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "UnknownError";
}

}  // namespace skewrad
