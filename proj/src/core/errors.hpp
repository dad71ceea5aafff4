#pragma once

#include <stdexcept>
#include <string>

namespace minkflow {

// Failure codes carried by every library exception.  The C boundary maps them
// 1:1 onto mf_status values.
enum class ErrorCode {
  InvalidArgument,
  NotPositive,
  NotConvex,
  Domain,
  DegenerateEdge,
  EmptyInterior,
  StepTooLarge,
  FacetMismatch,
  NotSpread,
  MaxIters,
  Parse,
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

struct InvalidArgumentError : Error {
  explicit InvalidArgumentError(const std::string& w) : Error(ErrorCode::InvalidArgument, w) {}
};
struct NotPositiveError : Error {
  explicit NotPositiveError(const std::string& w) : Error(ErrorCode::NotPositive, w) {}
};
struct NotConvexError : Error {
  explicit NotConvexError(const std::string& w) : Error(ErrorCode::NotConvex, w) {}
};
struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error(ErrorCode::Domain, w) {}
};
struct DegenerateEdgeError : Error {
  explicit DegenerateEdgeError(const std::string& w) : Error(ErrorCode::DegenerateEdge, w) {}
};
struct EmptyInteriorError : Error {
  explicit EmptyInteriorError(const std::string& w) : Error(ErrorCode::EmptyInterior, w) {}
};
struct StepTooLargeError : Error {
  explicit StepTooLargeError(const std::string& w) : Error(ErrorCode::StepTooLarge, w) {}
};
struct FacetMismatchError : Error {
  explicit FacetMismatchError(const std::string& w) : Error(ErrorCode::FacetMismatch, w) {}
};
struct NotSpreadError : Error {
  explicit NotSpreadError(const std::string& w) : Error(ErrorCode::NotSpread, w) {}
};
struct MaxItersError : Error {
  explicit MaxItersError(const std::string& w) : Error(ErrorCode::MaxIters, w) {}
};
struct ParseError : Error {
  explicit ParseError(const std::string& w) : Error(ErrorCode::Parse, w) {}
};
struct IoError : Error {
  explicit IoError(const std::string& w) : Error(ErrorCode::Io, w) {}
};

}  // namespace minkflow
