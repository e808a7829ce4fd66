#include <array>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

#include "acgd/problems.hpp"

namespace acgd {

namespace {

constexpr std::array<char, 5> kMagic{'A', 'C', 'G', 'D', '1'};

template <class T>
void put_le(std::ostream& out, T v) {
  static_assert(sizeof(T) == 8);
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  char bytes[8];
  for (int k = 0; k < 8; ++k) bytes[k] = static_cast<char>((bits >> (8 * k)) & 0xffu);
  out.write(bytes, 8);
}

template <class T>
T get_le(std::istream& in) {
  static_assert(sizeof(T) == 8);
  unsigned char bytes[8];
  if (!in.read(reinterpret_cast<char*>(bytes), 8)) throw ParseError("ACGD1 container truncated");
  std::uint64_t bits = 0;
  for (int k = 0; k < 8; ++k) bits |= static_cast<std::uint64_t>(bytes[k]) << (8 * k);
  T v;
  std::memcpy(&v, &bits, 8);
  return v;
}

}  // namespace

void write_container(std::ostream& out, const RegressionData& data) {
  const auto n = static_cast<std::uint64_t>(data.A.rows());
  const auto d = static_cast<std::uint64_t>(data.A.cols());
  if (static_cast<std::uint64_t>(data.b.size()) != n) throw UsageError("container: b size != n");
  out.write(kMagic.data(), kMagic.size());
  put_le(out, n);
  put_le(out, d);
  for (Eigen::Index i = 0; i < data.A.rows(); ++i) {
    for (Eigen::Index j = 0; j < data.A.cols(); ++j) put_le(out, data.A(i, j));
  }
  for (Eigen::Index i = 0; i < data.b.size(); ++i) put_le(out, data.b[i]);
  for (Eigen::Index j = 0; j < data.A.cols(); ++j) {
    put_le(out, data.x_natural ? (*data.x_natural)[j] : std::numeric_limits<double>::quiet_NaN());
  }
  if (!out) throw IoError("write failure in ACGD1 container");
}

void save_container(const std::filesystem::path& path, const RegressionData& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_container(out, data);
}

RegressionData read_container(std::istream& in) {
  std::array<char, 5> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw ParseError("not an ACGD1 container (bad magic)");
  }
  const auto n = get_le<std::uint64_t>(in);
  const auto d = get_le<std::uint64_t>(in);
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 31;
  if (n == 0 || d == 0 || n >= kLimit || d >= kLimit || n * d >= (std::uint64_t{1} << 40)) {
    throw ParseError("ACGD1 container has implausible dimensions");
  }
  RegressionData data;
  data.A.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < data.A.rows(); ++i) {
    for (Eigen::Index j = 0; j < data.A.cols(); ++j) data.A(i, j) = get_le<double>(in);
  }
  data.b.resize(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < data.b.size(); ++i) data.b[i] = get_le<double>(in);
  Vector x(static_cast<Eigen::Index>(d));
  for (Eigen::Index j = 0; j < x.size(); ++j) x[j] = get_le<double>(in);
  if (x.allFinite()) data.x_natural = std::move(x);
  return data;
}

RegressionData load_container(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_container(in);
}

}  // namespace acgd
