#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace scenesem {

enum class Errc {
  // geometry
  InvalidEntity,
  SelfIntersecting,
  DegenerateArea,
  ZeroVector,
  // calculi
  UnsupportedEntityKind,
  DimensionMismatch,
  DegenerateLine,
  CoincidentPositions,
  // sth
  OutOfRange,
  BadInterval,
  NoSignificantMotion,
  OrientationUndefined,
  UnknownObject,
  // fluents / interactions
  UnknownFluentName,
  ArityMismatch,
  UnknownInteraction,
  // floorplan / navrules
  TooFewPoints,
  NoRoomsFound,
  TrackOutsideStructure,
  UnknownStructure,
  // io
  ParseError,
  ConfigError,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (and tests) can branch on the category rather than the message.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace scenesem
