#pragma once

#include <filesystem>
#include <iosfwd>

#include "sourcecount/signal_gen.hpp"

namespace sourcecount {

// Binary snapshot dump, little-endian throughout:
//   bytes 0..3   magic "SCSN"
//   bytes 4..7   uint32 p
//   bytes 8..15  uint64 N
//   then p*N (re, im) float64 pairs, row-major (sensor 0 samples first).
inline constexpr char kSnapshotMagic[4] = {'S', 'C', 'S', 'N'};

void write_snapshots(std::ostream &out, const SnapshotBlock &block);
SnapshotBlock read_snapshots(std::istream &in);

void write_snapshots(const std::filesystem::path &path, const SnapshotBlock &block);
SnapshotBlock read_snapshots(const std::filesystem::path &path);

} // namespace sourcecount
