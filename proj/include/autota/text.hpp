#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace autota::text {

/// Lowercases ASCII letters; bytes >= 0x80 pass through unchanged so UTF-8
/// sequences survive intact.
std::string fold_case(std::string_view s);

/// Splits into lowercase word tokens. A token is a maximal run of ASCII
/// alphanumerics or non-ASCII bytes; punctuation is dropped. No stemming,
/// no stopword removal.
std::vector<std::string> tokenize(std::string_view s);

/// Whitespace-delimited token count (the word_count convention everywhere).
std::size_t count_words(std::string_view s);

bool is_stopword(std::string_view token);

/// tokenize() minus stopwords and tokens under 3 characters; the shared
/// vocabulary filter of the mock coder and the heuristic Add rule.
std::vector<std::string> content_tokens(std::string_view s);

std::string trim(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

// FNV-1a, used for embedding buckets and seed mixing. Stable across
// platforms, unlike std::hash.
std::uint64_t fnv1a64(std::string_view s, std::uint64_t seed = 0xcbf29ce484222325ULL);

/// Derives a sub-seed from a run seed plus a textual scope (identity name,
/// chunk index, stage). Same inputs, same sub-seed, on every platform.
std::uint64_t mix_seed(std::uint64_t seed, std::string_view scope);

} // namespace autota::text
