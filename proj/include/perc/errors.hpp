#pragma once

#include <stdexcept>
#include <string>

namespace perc {

enum class Errc {
  // input / structural
  Degenerate,
  NotConnected,
  NotPlanar,
  BridgeEdge,
  DuplicateEdge,
  ZeroLengthEdge,
  CoincidentDirections,
  SelfIntersectingPolygon,
  UnknownEdge,
  UnknownCell,
  CellsNotDistinct,
  TooFewSharedVertices,
  OriginVacant,
  // dual lattice
  DualInvalid,
  HypothesisViolated,
  MissingVacantNeighbor,
  // rectangle covers / crossings
  VertexOnSide,
  NotNicelyCovered,
  NotNicelyPadded,
  PreconditionViolated,
  DualityViolation,
  // io / harness
  SyntaxError,
  InvalidSpec,
  IoError,
  Internal,
};

const char* errc_name(Errc c);

/// Single exception type for the whole library; `code()` identifies the
/// violated property and `what()` carries the witness.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace perc
