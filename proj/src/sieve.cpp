#include "nusq/sieve.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

namespace nusq {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

nlohmann::json SieveReport::to_json(bool with_timing) const {
  nlohmann::json j;
  j["target"] = target;
  j["range"] = {lo, hi};
  j["filter"] = filter;
  j["exceptions"] = exceptions;
  j["chunk_count"] = chunk_count;
  j["metadata"] = metadata;
  if (with_timing) {
    j["elapsed_ms"] = elapsed_ms;
    nlohmann::json chunk_list = nlohmann::json::array();
    for (const auto& c : chunks) {
      chunk_list.push_back({{"index", c.index}, {"lo", c.lo}, {"hi", c.hi}, {"found", c.found}, {"ms", c.ms}});
    }
    j["chunks"] = chunk_list;
  }
  return j;
}

std::string SieveReport::csv_header(bool with_timing) {
  return with_timing ? "target,lo,hi,filter,exceptions,chunk_count,elapsed_ms"
                     : "target,lo,hi,filter,exceptions,chunk_count";
}

std::string SieveReport::to_csv(bool with_timing) const {
  std::ostringstream os;
  os << csv_header(with_timing) << '\n';
  std::string list;
  for (std::size_t i = 0; i < exceptions.size(); ++i) {
    if (i) list += ';';
    list += std::to_string(exceptions[i]);
  }
  os << csv_field(target) << ',' << lo << ',' << hi << ',' << csv_field(filter) << ','
     << list << ',' << chunk_count;
  if (with_timing) os << ',' << static_cast<long long>(elapsed_ms);
  os << '\n';
  return os.str();
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        fn(i);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  unsigned n = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

namespace {

struct Checkpoint {
  u64 next_chunk = 0;
  std::vector<u64> exceptions;
};

bool load_checkpoint(const std::string& path, const nlohmann::json& job, Checkpoint& cp) {
  std::ifstream in(path);
  if (!in) return false;
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("checkpoint " + path + " is not valid JSON: " + e.what());
  }
  if (j.value("job", nlohmann::json()) != job) {
    throw CheckpointMismatch("checkpoint " + path + " belongs to a different job: " + j["job"].dump());
  }
  cp.next_chunk = j.at("next_chunk").get<u64>();
  cp.exceptions = j.at("exceptions").get<std::vector<u64>>();
  return true;
}

void save_checkpoint(const std::string& path, const nlohmann::json& job, const Checkpoint& cp) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw IoError("cannot write checkpoint " + tmp);
    nlohmann::json j;
    j["job"] = job;
    j["next_chunk"] = cp.next_chunk;
    j["exceptions"] = cp.exceptions;
    out << j.dump() << '\n';
    if (!out) throw IoError("short write on checkpoint " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw IoError("cannot move checkpoint into place at " + path);
  }
}

}  // namespace

SieveReport run_chunked(const std::string& target, u64 lo, u64 hi, const nlohmann::json& job,
                        const ChunkWork& work, const SieveOptions& options) {
  const auto start = Clock::now();
  SieveReport report;
  report.target = target;
  report.lo = lo;
  report.hi = hi;
  if (lo > hi) return report;

  const u64 size = std::max<u64>(1, options.chunk_size);
  const u64 total = (hi - lo) / size + 1;
  report.chunk_count = total;

  Checkpoint cp;
  if (options.resume && !options.checkpoint_path.empty()) {
    load_checkpoint(options.checkpoint_path, job, cp);
    report.exceptions = cp.exceptions;
  }

  const unsigned threads = std::max(1u, options.threads);
  for (u64 first = cp.next_chunk; first < total; first += threads) {
    const u64 wave = std::min<u64>(threads, total - first);
    std::vector<std::vector<u64>> found(wave);
    std::vector<double> ms(wave, 0.0);
    parallel_for(wave, threads, [&](std::size_t i) {
      const u64 idx = first + i;
      const u64 clo = lo + idx * size;
      const u64 chi = std::min(hi, clo + size - 1);
      const auto t0 = Clock::now();
      found[i] = work(clo, chi);
      ms[i] = ms_since(t0);
    });
    for (u64 i = 0; i < wave; ++i) {
      const u64 idx = first + i;
      const u64 clo = lo + idx * size;
      const u64 chi = std::min(hi, clo + size - 1);
      report.exceptions.insert(report.exceptions.end(), found[i].begin(), found[i].end());
      report.chunks.push_back({idx, clo, chi, found[i].size(), ms[i]});
      if (options.on_chunk) {
        options.on_chunk({{"chunk", idx}, {"range", {clo, chi}}, {"exceptions", found[i]}});
      }
    }
    cp.next_chunk = first + wave;
    cp.exceptions = report.exceptions;
    if (!options.checkpoint_path.empty()) save_checkpoint(options.checkpoint_path, job, cp);
  }
  report.elapsed_ms = ms_since(start);
  return report;
}

std::vector<bool> square_free_flags(u64 lo, u64 hi) {
  if (lo > hi) return {};
  std::vector<bool> flags(hi - lo + 1, true);
  if (lo == 0) flags[0] = false;
  const u64 root = isqrt(hi);
  auto mark = [&](u64 p) {
    const u64 sq = p * p;
    u64 start = (lo + sq - 1) / sq * sq;
    if (start == 0) start = sq;
    for (u64 m = start; m <= hi; m += sq) flags[m - lo] = false;
  };
  const auto& table = PrimeTable::shared();
  if (root > table.bound()) {
    // Rare: fall back to a private table large enough for this range.
    PrimeTable local(root);
    for (u64 p : local.primes()) mark(p);
  } else {
    for (u64 p : table.primes()) {
      if (p > root) break;
      mark(p);
    }
  }
  return flags;
}

}  // namespace nusq
