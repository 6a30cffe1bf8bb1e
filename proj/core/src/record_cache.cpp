#include "skewsds/record_cache.hpp"

#include <array>
#include <cstdio>
#include <cstring>

#include "skewsds/errors.hpp"

namespace skewsds {

namespace {

template <typename T>
void put_le(std::uint8_t* dst, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    dst[i] = static_cast<std::uint8_t>(static_cast<std::uint64_t>(value) >> (8 * i));
  }
}

template <typename T>
T get_le(const std::uint8_t* src) {
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) out |= std::uint64_t{src[i]} << (8 * i);
  return static_cast<T>(out);
}

std::array<std::uint8_t, kRecordHeaderSize> encode(const RecordFileHeader& h) {
  std::array<std::uint8_t, kRecordHeaderSize> buf{};
  std::memcpy(buf.data(), kRecordMagic, 8);
  put_le<std::uint32_t>(buf.data() + 8, h.version);
  put_le<std::uint32_t>(buf.data() + 12, h.v);
  put_le<std::uint32_t>(buf.data() + 16, h.k);
  put_le<std::uint32_t>(buf.data() + 20, h.lambda);
  buf[24] = static_cast<std::uint8_t>(h.side);
  put_le<std::uint32_t>(buf.data() + 28, h.partition);
  put_le<std::uint32_t>(buf.data() + 32, h.key_len);
  put_le<std::uint32_t>(buf.data() + 36, h.sorted ? 1u : 0u);
  put_le<std::uint64_t>(buf.data() + 40, h.count);
  return buf;
}

}  // namespace

std::filesystem::path cache_file_path(const std::filesystem::path& dir, int v, int k,
                                      int lambda, Side side, std::uint32_t partition) {
  char name[64];
  std::snprintf(name, sizeof name, "sds-v%d-k%d-l%d-%c-p%04u.rec", v, k, lambda,
                static_cast<char>(side), partition);
  return dir / name;
}

RecordWriter::RecordWriter(const std::filesystem::path& path, RecordFileHeader header)
    : out_(path, std::ios::binary | std::ios::trunc), header_(header) {
  if (!out_) throw Error("cannot open cache file for writing: " + path.string());
  header_.count = 0;
  const auto buf = encode(header_);
  out_.write(reinterpret_cast<const char*>(buf.data()), buf.size());
}

RecordWriter::~RecordWriter() {
  try {
    close();
  } catch (...) {
  }
}

void RecordWriter::append(std::span<const std::uint8_t> key, Mask bits) {
  if (key.size() != header_.key_len) throw ParameterError("record key length mismatch");
  std::array<std::uint8_t, 16> word_bytes{};
  put_le<std::uint64_t>(word_bytes.data(), static_cast<std::uint64_t>(bits));
  put_le<std::uint64_t>(word_bytes.data() + 8, static_cast<std::uint64_t>(bits >> 64));
  out_.write(reinterpret_cast<const char*>(key.data()), static_cast<std::streamsize>(key.size()));
  out_.write(reinterpret_cast<const char*>(word_bytes.data()), word_bytes.size());
  ++header_.count;
}

void RecordWriter::close() {
  if (closed_) return;
  closed_ = true;
  const auto buf = encode(header_);
  out_.seekp(0);
  out_.write(reinterpret_cast<const char*>(buf.data()), buf.size());
  out_.flush();
  if (!out_) throw Error("failed writing cache file");
  out_.close();
}

RecordReader::RecordReader(const std::filesystem::path& path)
    : in_(path, std::ios::binary) {
  if (!in_) throw MalformedInput("cannot open cache file: " + path.string());
  std::array<std::uint8_t, kRecordHeaderSize> buf{};
  in_.read(reinterpret_cast<char*>(buf.data()), buf.size());
  if (in_.gcount() != static_cast<std::streamsize>(buf.size())) {
    throw MalformedInput("truncated cache header: " + path.string());
  }
  if (std::memcmp(buf.data(), kRecordMagic, 8) != 0) {
    throw MalformedInput("bad cache magic: " + path.string());
  }
  header_.version = get_le<std::uint32_t>(buf.data() + 8);
  if (header_.version != kRecordFormatVersion) {
    throw MalformedInput("unsupported cache format version " + std::to_string(header_.version));
  }
  header_.v = get_le<std::uint32_t>(buf.data() + 12);
  header_.k = get_le<std::uint32_t>(buf.data() + 16);
  header_.lambda = get_le<std::uint32_t>(buf.data() + 20);
  header_.side = static_cast<Side>(buf[24]);
  if (header_.side != Side::A && header_.side != Side::B) {
    throw MalformedInput("bad cache side tag");
  }
  header_.partition = get_le<std::uint32_t>(buf.data() + 28);
  header_.key_len = get_le<std::uint32_t>(buf.data() + 32);
  header_.sorted = (get_le<std::uint32_t>(buf.data() + 36) & 1u) != 0;
  header_.count = get_le<std::uint64_t>(buf.data() + 40);
}

bool RecordReader::next(std::string& key, Mask& bits) {
  if (read_ == header_.count) return false;
  key.resize(header_.key_len);
  std::array<std::uint8_t, 16> word_bytes{};
  in_.read(key.data(), static_cast<std::streamsize>(key.size()));
  in_.read(reinterpret_cast<char*>(word_bytes.data()), word_bytes.size());
  if (!in_) throw MalformedInput("truncated cache record");
  bits = (Mask{get_le<std::uint64_t>(word_bytes.data() + 8)} << 64) |
         Mask{get_le<std::uint64_t>(word_bytes.data())};
  ++read_;
  return true;
}

}  // namespace skewsds
