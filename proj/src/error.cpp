#include "buildings/error.hpp"

namespace buildings {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::AsymmetricMatrix: return "AsymmetricMatrix";
    case Errc::BadDiagonal: return "BadDiagonal";
    case Errc::OffDiagonalTooSmall: return "OffDiagonalTooSmall";
    case Errc::BadGeneratorIndex: return "BadGeneratorIndex";
    case Errc::BadSubset: return "BadSubset";
    case Errc::InfiniteGroup: return "InfiniteGroup";
    case Errc::MalformedGraph: return "MalformedGraph";
    case Errc::Disconnected: return "Disconnected";
    case Errc::NonReducedType: return "NonReducedType";
    case Errc::InfiniteW: return "InfiniteW";
    case Errc::UnknownChamber: return "UnknownChamber";
    case Errc::TrivialVertexGroup: return "TrivialVertexGroup";
    case Errc::BadGroupTable: return "BadGroupTable";
    case Errc::NotABuilding: return "NotABuilding";
    case Errc::RankZero: return "RankZero";
    case Errc::BadComplex: return "BadComplex";
    case Errc::InvalidShape: return "InvalidShape";
    case Errc::NotInCommonSimplex: return "NotInCommonSimplex";
    case Errc::DisconnectedPoints: return "DisconnectedPoints";
    case Errc::ToleranceNotReached: return "ToleranceNotReached";
    case Errc::NotAPermutation: return "NotAPermutation";
    case Errc::UnknownSubcommand: return "UnknownSubcommand";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(Errc code, std::string module, const std::string& message)
    : std::runtime_error(module + ": " + std::string(to_string(code)) + ": " + message),
      code_(code),
      module_(std::move(module)) {}

}  // namespace buildings
