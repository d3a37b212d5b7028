#include "lmgdtc/io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace lmgdtc {

static_assert(std::endian::native == std::endian::little, "binary layout assumes a little-endian host");

namespace {

constexpr std::array<char, 8> kMagic{'L', 'M', 'G', 'D', 'T', 'C', '\0', '\0'};
// A 2000-spin operator is ~64 MB; anything far beyond that is a corrupt header.
constexpr std::uint64_t kMaxDim = 1u << 16;

template <class T>
void put(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof value);
}

template <class T>
T get(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof value);
  if (!in) throw Error("read_binary: truncated input");
  return value;
}

void write_matrix(std::ostream& out, PayloadKind kind, const Eigen::MatrixXcd& m) {
  out.write(kMagic.data(), kMagic.size());
  put(out, kBinaryFormatVersion);
  put(out, static_cast<std::uint32_t>(kind));
  put(out, static_cast<std::uint64_t>(m.rows()));
  put(out, static_cast<std::uint64_t>(m.cols()));
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      put(out, m(r, c).real());
      put(out, m(r, c).imag());
    }
  }
  if (!out) throw Error("write_binary: stream error");
}

}  // namespace

void write_binary(std::ostream& out, const StateVector& state) { write_matrix(out, PayloadKind::State, state.amplitudes()); }
void write_binary(std::ostream& out, const HermitianOperator& op) { write_matrix(out, PayloadKind::Hermitian, op.matrix()); }
void write_binary(std::ostream& out, const UnitaryOperator& op) { write_matrix(out, PayloadKind::Unitary, op.matrix()); }

Payload read_binary(std::istream& in) {
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw Error("read_binary: bad magic");
  if (const auto version = get<std::uint32_t>(in); version != kBinaryFormatVersion)
    throw Error("read_binary: unsupported format version " + std::to_string(version));
  const auto kind = get<std::uint32_t>(in);
  const auto rows = get<std::uint64_t>(in);
  const auto cols = get<std::uint64_t>(in);
  if (rows == 0 || rows > kMaxDim || cols == 0 || cols > kMaxDim) throw Error("read_binary: implausible dimensions");

  Eigen::MatrixXcd m(static_cast<Index>(rows), static_cast<Index>(cols));
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      const double re = get<double>(in);
      const double im = get<double>(in);
      m(r, c) = Complex(re, im);
    }
  }
  switch (static_cast<PayloadKind>(kind)) {
    case PayloadKind::State:
      if (cols != 1) throw Error("read_binary: a state must have one column");
      return StateVector(m.col(0));
    case PayloadKind::Hermitian:
      return HermitianOperator(std::move(m));
    case PayloadKind::Unitary:
      return UnitaryOperator(std::move(m));
  }
  throw Error("read_binary: unknown payload kind " + std::to_string(kind));
}

template <class T>
void save(const std::filesystem::path& path, const T& object) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("save: cannot open " + path.string());
  write_binary(out, object);
}

template void save(const std::filesystem::path&, const StateVector&);
template void save(const std::filesystem::path&, const HermitianOperator&);
template void save(const std::filesystem::path&, const UnitaryOperator&);

Payload load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("load: cannot open " + path.string());
  return read_binary(in);
}

}  // namespace lmgdtc
