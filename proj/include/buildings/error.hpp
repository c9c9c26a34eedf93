#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace buildings {

enum class Errc {
  // coxeter
  AsymmetricMatrix,
  BadDiagonal,
  OffDiagonalTooSmall,
  BadGeneratorIndex,
  BadSubset,
  InfiniteGroup,
  // building
  MalformedGraph,
  Disconnected,
  NonReducedType,
  InfiniteW,
  UnknownChamber,
  // constructions
  TrivialVertexGroup,
  BadGroupTable,
  NotABuilding,
  // realizations
  RankZero,
  BadComplex,
  // metric
  InvalidShape,
  NotInCommonSimplex,
  DisconnectedPoints,
  ToleranceNotReached,
  // actions
  NotAPermutation,
  // cli
  UnknownSubcommand,
  ParseError,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library. `module()` names the owning module
/// so that the CLI can prefix diagnostics without a lookup table.
class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string module, const std::string& message);

  Errc code() const noexcept { return code_; }
  const std::string& module() const noexcept { return module_; }

 private:
  Errc code_;
  std::string module_;
};

}  // namespace buildings
