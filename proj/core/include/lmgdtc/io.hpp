#pragma once

// Binary layout for operators and states, little-endian:
//   char[8]  magic "LMGDTC\0\0"
//   uint32   format version (1)
//   uint32   kind (0 = state, 1 = hermitian, 2 = unitary)
//   uint64   rows
//   uint64   cols (1 for states)
//   double   re, im pairs, row-major

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <variant>

#include "lmgdtc/spin.hpp"

namespace lmgdtc {

inline constexpr std::uint32_t kBinaryFormatVersion = 1;

enum class PayloadKind : std::uint32_t { State = 0, Hermitian = 1, Unitary = 2 };

using Payload = std::variant<StateVector, HermitianOperator, UnitaryOperator>;

void write_binary(std::ostream& out, const StateVector& state);
void write_binary(std::ostream& out, const HermitianOperator& op);
void write_binary(std::ostream& out, const UnitaryOperator& op);

/// Reads one object; the invariants of the stored kind are re-checked on load.
Payload read_binary(std::istream& in);

template <class T>
void save(const std::filesystem::path& path, const T& object);
Payload load(const std::filesystem::path& path);

}  // namespace lmgdtc
