#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "bibnov/errors.hpp"

namespace bibnov::detail {

// Little helpers for the packed cache formats. Values are written in host
// byte order; caches are not meant to travel between architectures.
class BinaryWriter {
 public:
  explicit BinaryWriter(const std::string& path) : out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw Error(ErrorCode::IoFailure, "cannot write " + path);
  }

  template <typename T>
  void put(const T& value) {
    static_assert(std::is_trivially_copyable_v<T>);
    out_.write(reinterpret_cast<const char*>(&value), sizeof(T));
  }

  template <typename T>
  void put_array(const std::vector<T>& values) {
    put<std::uint64_t>(values.size());
    if (!values.empty())
      out_.write(reinterpret_cast<const char*>(values.data()),
                 static_cast<std::streamsize>(values.size() * sizeof(T)));
  }

  void put_bytes(const void* data, std::size_t size) {
    out_.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
  }

  void put_string(const std::string& s) {
    put<std::uint32_t>(static_cast<std::uint32_t>(s.size()));
    out_.write(s.data(), static_cast<std::streamsize>(s.size()));
  }

  /// Column of strings: lengths, then one concatenated blob.
  void put_string_column(const std::vector<const std::string*>& column) {
    std::vector<std::uint32_t> lengths;
    lengths.reserve(column.size());
    std::string blob;
    for (const auto* s : column) {
      lengths.push_back(static_cast<std::uint32_t>(s->size()));
      blob += *s;
    }
    put_array(lengths);
    put<std::uint64_t>(blob.size());
    out_.write(blob.data(), static_cast<std::streamsize>(blob.size()));
  }

  void finish() {
    out_.flush();
    if (!out_) throw Error(ErrorCode::IoFailure, "short write");
  }

 private:
  std::ofstream out_;
};

class BinaryReader {
 public:
  explicit BinaryReader(const std::string& path) : in_(path, std::ios::binary) {}

  bool ok() const { return static_cast<bool>(in_); }

  template <typename T>
  T get() {
    T value{};
    in_.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in_) throw Error(ErrorCode::IoFailure, "truncated cache");
    return value;
  }

  template <typename T>
  std::vector<T> get_array(std::uint64_t limit = (1ULL << 34)) {
    auto n = get<std::uint64_t>();
    if (n > limit) throw Error(ErrorCode::IoFailure, "corrupt cache length");
    std::vector<T> values(n);
    if (n > 0) in_.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(n * sizeof(T)));
    if (!in_) throw Error(ErrorCode::IoFailure, "truncated cache");
    return values;
  }

  void get_bytes(void* data, std::size_t size) {
    in_.read(static_cast<char*>(data), static_cast<std::streamsize>(size));
    if (!in_) throw Error(ErrorCode::IoFailure, "truncated cache");
  }

  std::string get_string() {
    auto n = get<std::uint32_t>();
    std::string s(n, '\0');
    if (n > 0) get_bytes(s.data(), n);
    return s;
  }

  std::vector<std::string> get_string_column() {
    auto lengths = get_array<std::uint32_t>();
    auto blob_size = get<std::uint64_t>();
    std::string blob(blob_size, '\0');
    if (blob_size > 0) get_bytes(blob.data(), blob_size);
    std::vector<std::string> out;
    out.reserve(lengths.size());
    std::size_t pos = 0;
    for (auto len : lengths) {
      if (pos + len > blob.size()) throw Error(ErrorCode::IoFailure, "corrupt string column");
      out.emplace_back(blob, pos, len);
      pos += len;
    }
    return out;
  }

 private:
  std::ifstream in_;
};

}  // namespace bibnov::detail
