#pragma once

// Exhaustive sharded search over coprime exponent tuples with a resumable
// certificate store, and an independent re-checker for stores.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nplet/ranktest.hpp"

namespace nplet {

/// Environment variable holding the default worker count.
inline constexpr const char* kWorkersEnv = "NPLET_WORKERS";

/// NPLET_WORKERS if set to a positive integer, else hardware concurrency.
unsigned default_workers();

struct SearchConfig {
  std::size_t n = 4;
  std::int64_t max_last_exponent = 0;
  std::uint64_t shard_count = 1;
  std::uint64_t shard_index = 0;
  std::string output;
  bool resume = false;
  double oracle_rate = 0.01;
  unsigned workers = 1;
  std::size_t batch_size = 1000;
  /// Test hook: stop abruptly once this many tuples have been examined in
  /// this invocation, leaving the checkpoint behind the store.
  std::optional<std::uint64_t> halt_after;
};

/// Throws InvalidInput unless 0 <= shard_index < shard_count,
/// max_last_exponent >= n >= 3 and the rate lies in [0, 1].
void validate(const SearchConfig& config);

struct SearchSummary {
  std::uint64_t tuples_examined = 0;
  std::uint64_t anomalous_found = 0;
  std::uint64_t oracle_checks = 0;
  double elapsed_seconds = 0.0;
  std::map<std::int64_t, std::uint64_t> one_multiplicity_histogram;
  /// Last completed tuple in canonical order.
  std::optional<std::vector<std::int64_t>> cursor;
  /// False when the run stopped through halt_after.
  bool completed = false;
  std::string to_json() const;
};

/// Coprime strictly increasing n-tuples with last entry <= max_last, ordered
/// by a_n, then a_(n-1), ..., then a_1. Indices count emitted tuples from 0.
class TupleEnumerator {
 public:
  TupleEnumerator(std::size_t n, std::int64_t max_last);
  /// Advances to the next tuple; false when exhausted.
  bool next();
  const std::vector<std::int64_t>& current() const { return current_; }
  std::uint64_t index() const { return index_; }

 private:
  bool step();
  std::size_t n_;
  std::int64_t max_last_;
  std::vector<std::int64_t> current_;
  std::uint64_t index_ = 0;
  std::uint64_t emitted_ = 0;
  bool started_ = false;
};

/// Every tuple of the given shard, in canonical order.
std::vector<ExponentTuple> enumerate(std::size_t n, std::int64_t max_last,
                                     std::uint64_t shard_count = 1, std::uint64_t shard_index = 0);

/// Deterministic per-index sampling decision for the oracle cross-check.
bool sampled_for_oracle(std::uint64_t canonical_index, double rate);

/// Appends one certificate per tuple to config.output, checkpointing after
/// every batch to config.output + ".ckpt". Throws TheoremViolation when the
/// oracle disagrees with the exact verdict, after writing both to
/// config.output + ".disagreement.json".
SearchSummary run(const SearchConfig& config);

/// Empty when the certificate survives recomputation of its minors by
/// cofactor expansion and every field checks out; otherwise the reason.
std::string check_certificate(const RankCertificate& cert);

struct VerifyIssue {
  std::size_t line = 0;
  std::string tuple;
  std::string reason;
};

struct VerifyReport {
  bool ok = true;
  std::uint64_t records = 0;
  std::vector<VerifyIssue> issues;
};

VerifyReport verify_records(std::string_view contents);
/// Throws InvalidInput when the file cannot be read.
VerifyReport verify(const std::string& path);

}  // namespace nplet
