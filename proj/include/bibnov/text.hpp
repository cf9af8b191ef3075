#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace bibnov {

/// Trims, collapses internal whitespace runs to one space and, when
/// `case_fold` is set, lowercases ASCII letters. Multi-byte UTF-8 sequences
/// pass through untouched.
std::string normalize_label(std::string_view raw, bool case_fold = true);

/// 64-bit FNV-1a. Used for input digests and parameter fingerprints.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);

std::string hex64(std::uint64_t value);

/// Digest of a whole file; throws Error(IoFailure) when unreadable.
std::uint64_t file_digest(const std::string& path);

}  // namespace bibnov
