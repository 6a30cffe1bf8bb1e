#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>

#include "skewsds/subset.hpp"

namespace skewsds {

/// On-disk stage cache used by the sort-merge join.
///
/// One file per (v, k, lambda, side, partition). All integers little-endian.
///
///   offset  size  field
///   0       8     magic "SKSDSREC"
///   8       4     format version (kRecordFormatVersion)
///   12      4     v
///   16      4     k
///   20      4     lambda
///   24      1     side, 'A' or 'B'
///   25      3     reserved, zero
///   28      4     partition index
///   32      4     key length in bytes, (v-1)/2
///   36      4     flags, bit 0 set when records are sorted by (key, mask)
///   40      8     record count
///   48      ...   records: key bytes, then the bitmask as two u64 words
///                 (bits 0..63 first)
///
/// The key holds one byte per difference class {i, v-i}, i = 1..(v-1)/2.
/// Profiles are palindromic, so this half carries the whole profile.
inline constexpr char kRecordMagic[8] = {'S', 'K', 'S', 'D', 'S', 'R', 'E', 'C'};
inline constexpr std::uint32_t kRecordFormatVersion = 1;
inline constexpr std::size_t kRecordHeaderSize = 48;

enum class Side : char { A = 'A', B = 'B' };

struct RecordFileHeader {
  std::uint32_t version = kRecordFormatVersion;
  std::uint32_t v = 0;
  std::uint32_t k = 0;
  std::uint32_t lambda = 0;
  Side side = Side::A;
  std::uint32_t partition = 0;
  std::uint32_t key_len = 0;
  bool sorted = false;
  std::uint64_t count = 0;
};

// e.g. "sds-v13-k3-l3-A-p0002.rec"
std::filesystem::path cache_file_path(const std::filesystem::path& dir, int v, int k,
                                      int lambda, Side side, std::uint32_t partition);

class RecordWriter {
 public:
  RecordWriter(const std::filesystem::path& path, RecordFileHeader header);
  RecordWriter(const RecordWriter&) = delete;
  RecordWriter& operator=(const RecordWriter&) = delete;
  ~RecordWriter();

  void append(std::span<const std::uint8_t> key, Mask bits);
  // Patches the record count into the header and flushes. Idempotent.
  void close();

 private:
  std::ofstream out_;
  RecordFileHeader header_;
  bool closed_ = false;
};

class RecordReader {
 public:
  // Throws MalformedInput on a bad magic, version or truncated header.
  explicit RecordReader(const std::filesystem::path& path);

  const RecordFileHeader& header() const noexcept { return header_; }

  // Reads the next record into key (resized to key_len). False at end of file.
  bool next(std::string& key, Mask& bits);

 private:
  std::ifstream in_;
  RecordFileHeader header_;
  std::uint64_t read_ = 0;
};

}  // namespace skewsds
