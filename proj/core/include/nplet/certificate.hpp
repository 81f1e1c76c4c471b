#pragma once

// Line-delimited certificate records. Each record is one JSON object on one
// line; polynomials use the "c0 + c1*z^e1 + ..." text form so coefficients
// survive as exact decimal strings.

#include <string>
#include <string_view>

#include "nplet/ranktest.hpp"

namespace nplet {

inline constexpr int kStoreFormatVersion = 1;
inline constexpr std::string_view kStoreFormatName = "nplet-certificates";

/// Fields excluded from canonical hashing.
inline constexpr std::string_view kTimingField = "elapsed_ms";

std::string to_record(const RankCertificate& cert);
/// Throws InvalidInput on malformed records.
RankCertificate from_record(std::string_view line);

/// The record with timing fields removed, re-serialized with sorted keys.
std::string canonical_record(std::string_view line);

/// Hex SHA-256 over the canonical form of every line of a store.
std::string canonical_hash(std::string_view store_contents);
std::string canonical_file_hash(const std::string& path);

}  // namespace nplet
