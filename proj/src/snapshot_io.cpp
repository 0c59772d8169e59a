#include "sourcecount/snapshot_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "sourcecount/errors.hpp"

namespace sourcecount {

static_assert(std::endian::native == std::endian::little,
              "snapshot files are little-endian; add byte swapping for this target");

namespace {

template <typename T> void put(std::ostream &out, T v) {
  out.write(reinterpret_cast<const char *>(&v), sizeof(T));
}

template <typename T> T get(std::istream &in) {
  T v{};
  if (!in.read(reinterpret_cast<char *>(&v), sizeof(T))) {
    throw ConfigError("snapshot file truncated");
  }
  return v;
}

} // namespace

void write_snapshots(std::ostream &out, const SnapshotBlock &block) {
  out.write(kSnapshotMagic, 4);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(block.sensors()));
  put<std::uint64_t>(out, static_cast<std::uint64_t>(block.n_snapshots()));
  for (int i = 0; i < block.sensors(); ++i) {
    for (int t = 0; t < block.n_snapshots(); ++t) {
      put<double>(out, block.data(i, t).real());
      put<double>(out, block.data(i, t).imag());
    }
  }
  if (!out) {
    throw ConfigError("failed writing snapshot file");
  }
}

SnapshotBlock read_snapshots(std::istream &in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kSnapshotMagic, 4) != 0) {
    throw ConfigError("not a snapshot file (bad magic)");
  }
  const auto p = get<std::uint32_t>(in);
  const auto n = get<std::uint64_t>(in);
  if (p < 1 || n < 1 || n > (1ULL << 31)) {
    throw ConfigError("snapshot file has invalid dimensions");
  }
  SnapshotBlock block{SnapshotMatrix(p, static_cast<Eigen::Index>(n))};
  for (std::uint32_t i = 0; i < p; ++i) {
    for (std::uint64_t t = 0; t < n; ++t) {
      const double re = get<double>(in);
      const double im = get<double>(in);
      block.data(i, static_cast<Eigen::Index>(t)) = {re, im};
    }
  }
  return block;
}

void write_snapshots(const std::filesystem::path &path, const SnapshotBlock &block) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot create snapshot file " + path.string());
  }
  write_snapshots(out, block);
}

SnapshotBlock read_snapshots(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open snapshot file " + path.string());
  }
  return read_snapshots(in);
}

} // namespace sourcecount
