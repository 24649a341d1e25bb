#pragma once

// Range sieving infrastructure shared by the exceptional-set searches:
// the SieveReport record, a chunked parallel driver with checkpoint/resume,
// and a segmented square-free sieve.

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "nusq/arith.hpp"

namespace nusq {

struct ChunkTiming {
  u64 index = 0;
  u64 lo = 0;
  u64 hi = 0;
  std::size_t found = 0;
  double ms = 0.0;
};

struct SieveReport {
  std::string target;
  u64 lo = 0;
  u64 hi = 0;
  std::string filter;
  std::vector<u64> exceptions;
  double elapsed_ms = 0.0;
  u64 chunk_count = 0;
  std::vector<ChunkTiming> chunks;
  nlohmann::json metadata = nlohmann::json::object();

  // Timing fields are the only run-to-run varying content; drop them for
  // byte-stable output.
  nlohmann::json to_json(bool with_timing = true) const;
  std::string to_csv(bool with_timing = true) const;
  static std::string csv_header(bool with_timing = true);
};

// Raised for unreadable/unwritable checkpoint files.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a checkpoint belongs to a different job.
class CheckpointMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SieveOptions {
  u64 chunk_size = u64{1} << 18;
  unsigned threads = 1;
  // Written after every wave of chunks when non-empty.
  std::string checkpoint_path;
  // Resume from checkpoint_path if it exists.
  bool resume = false;
  // Called once per finished chunk, in chunk order.
  std::function<void(const nlohmann::json&)> on_chunk;
};

// Work function: exceptions found in the closed range [lo, hi], ascending.
using ChunkWork = std::function<std::vector<u64>(u64 lo, u64 hi)>;

// Splits [lo, hi] into chunks, runs `work` on up to `threads` chunks at a
// time and merges results in chunk order. `job` identifies the run inside
// checkpoint files.
SieveReport run_chunked(const std::string& target, u64 lo, u64 hi, const nlohmann::json& job,
                        const ChunkWork& work, const SieveOptions& options);

// Runs fn(i) for i in [0, count) on `threads` workers.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

// flags[i] is true iff lo + i is square-free (0 is not).
std::vector<bool> square_free_flags(u64 lo, u64 hi);

}  // namespace nusq
