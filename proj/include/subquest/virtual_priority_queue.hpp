#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include <unistd.h>

#include "subquest/codec.hpp"
#include "subquest/error.hpp"
#include "subquest/priority.hpp"
#include "subquest/queues.hpp"

namespace subquest {

struct VpqConfig {
  /// In-memory record threshold; exceeding it spills the lower half.
  std::size_t max_mem_entries = 1'000'000;
  /// Parent directory for run files. Empty means `default_spill_dir()`.
  std::filesystem::path spill_dir;
  /// Records fetched per run read.
  std::size_t read_buffer_records = 256;
};

struct VpqStats {
  std::uint64_t spills = 0;
  std::uint64_t records_spilled = 0;
  std::uint64_t run_reads = 0;
  std::size_t peak_memory_entries = 0;
};

/// `SUBQUEST_SPILL_DIR` if set, otherwise the system temp directory.
inline std::filesystem::path default_spill_dir() {
  if (const char* env = std::getenv("SUBQUEST_SPILL_DIR"); env && *env) return env;
  return std::filesystem::temp_directory_path();
}

/// Max-priority queue that keeps at most `max_mem_entries` records in a
/// memory-resident heap. On overflow the lower-priority half is written to an
/// immutable run file sorted by decreasing priority; `pop` merges the heap
/// with the heads of all runs. Equal priorities leave in enqueue order.
///
/// Run record layout (little-endian):
///   u32 arity; arity x f64 priority; u64 seq; u32 payload_len; payload
///
/// Each queue owns a private directory under the spill directory holding
/// `run-<seq>.bin` files; all of it is removed on destruction.
template <class T, class Codec = PayloadCodec<T>>
class VirtualPriorityQueue {
 public:
  explicit VirtualPriorityQueue(VpqConfig config = {}) : config_(std::move(config)) {
    if (config_.max_mem_entries < 2) throw std::invalid_argument("max_mem_entries must be >= 2");
    if (config_.read_buffer_records < 1) {
      throw std::invalid_argument("read_buffer_records must be >= 1");
    }
    if (config_.spill_dir.empty()) config_.spill_dir = default_spill_dir();
  }

  VirtualPriorityQueue(const VirtualPriorityQueue&) = delete;
  VirtualPriorityQueue& operator=(const VirtualPriorityQueue&) = delete;

  ~VirtualPriorityQueue() {
    std::error_code ec;
    if (!dir_.empty()) std::filesystem::remove_all(dir_, ec);
  }

  void push(T item, const Priority& p) {
    check_usable();
    if (heap_.size() >= config_.max_mem_entries) spill();
    heap_.push_back(Node{p, next_seq_++, std::move(item)});
    std::push_heap(heap_.begin(), heap_.end(), detail::HeapOrder{});
    stats_.peak_memory_entries = std::max(stats_.peak_memory_entries, heap_.size());
  }

  std::optional<QueueEntry<T>> pop() {
    check_usable();
    const bool have_heap = !heap_.empty();
    const bool have_run = !heads_.empty();
    if (!have_heap && !have_run) return std::nullopt;
    bool from_run = have_run;
    if (have_heap && have_run) {
      const auto& h = heap_.front();
      const auto& r = heads_.top();
      auto c = compare(r.priority, h.priority);
      from_run = c > 0 || (c == 0 && r.seq < h.seq);
    }
    if (!from_run) {
      std::pop_heap(heap_.begin(), heap_.end(), detail::HeapOrder{});
      QueueEntry<T> out{std::move(heap_.back().item), heap_.back().priority};
      heap_.pop_back();
      return out;
    }
    auto head = heads_.top();
    heads_.pop();
    auto& run = *runs_[head.run];
    auto record = std::move(run.buffer.front());
    run.buffer.pop_front();
    advance(head.run);
    --size_;
    ByteReader reader(record.payload);
    QueueEntry<T> out{Codec::decode(reader), record.priority};
    if (reader.remaining() != 0) throw CorruptRecord("payload length mismatch");
    return out;
  }

  /// Writes the lower-priority half (floor(n/2) records) of the memory heap
  /// as a new run. Requires at least two records in memory.
  void spill() {
    check_usable();
    if (heap_.size() < 2) throw std::logic_error("spill needs at least two in-memory records");
    std::sort(heap_.begin(), heap_.end(), [](const Node& a, const Node& b) {
      return detail::HeapOrder{}(b, a);
    });
    const std::size_t keep = heap_.size() - heap_.size() / 2;
    ensure_dir();
    auto run = std::make_unique<Run>();
    run->path = dir_ / ("run-" + std::to_string(stats_.spills) + ".bin");
    try {
      std::ofstream out(run->path, std::ios::binary | std::ios::trunc);
      if (!out) throw IoError("cannot create run file " + run->path.string());
      std::uint64_t offset = 0;
      for (std::size_t i = keep; i < heap_.size(); ++i) {
        if ((i - keep) % config_.read_buffer_records == 0) run->block_offsets.push_back(offset);
        ByteWriter w;
        encode_record(heap_[i], w);
        out.write(reinterpret_cast<const char*>(w.bytes().data()),
                  static_cast<std::streamsize>(w.size()));
        offset += w.size();
      }
      run->block_offsets.push_back(offset);
      out.flush();
      if (!out) throw IoError("write failed on run file " + run->path.string());
    } catch (...) {
      broken_ = true;
      throw;
    }
    run->records = heap_.size() - keep;
    stats_.records_spilled += run->records;
    size_ += run->records;
    ++stats_.spills;
    heap_.erase(heap_.begin() + static_cast<std::ptrdiff_t>(keep), heap_.end());
    std::make_heap(heap_.begin(), heap_.end(), detail::HeapOrder{});
    runs_.push_back(std::move(run));
    advance(runs_.size() - 1);
  }

  bool empty() const noexcept { return size_ == 0 && heap_.empty(); }
  std::size_t size() const noexcept { return size_ + heap_.size(); }
  std::size_t memory_size() const noexcept { return heap_.size(); }

  /// Runs that still hold unread records.
  std::size_t live_runs() const noexcept { return heads_.size(); }
  std::size_t total_runs() const noexcept { return runs_.size(); }
  const VpqStats& stats() const noexcept { return stats_; }
  const std::filesystem::path& directory() const noexcept { return dir_; }

  /// White-box access: records of run `i` read straight from its file.
  std::vector<QueueEntry<T>> read_run(std::size_t i) const {
    const auto& run = *runs_.at(i);
    std::ifstream in(run.path, std::ios::binary);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    ByteReader r(bytes);
    std::vector<QueueEntry<T>> out;
    while (r.remaining()) {
      auto rec = decode_record(r);
      ByteReader payload(rec.payload);
      out.push_back({Codec::decode(payload), rec.priority});
    }
    return out;
  }

 private:
  struct Node {
    Priority priority;
    std::uint64_t seq;
    T item;
  };

  struct Record {
    Priority priority;
    std::uint64_t seq;
    std::vector<std::uint8_t> payload;
  };

  struct Run {
    std::filesystem::path path;
    std::size_t records = 0;
    std::vector<std::uint64_t> block_offsets;  // one per block plus the end
    std::size_t next_block = 0;
    std::deque<Record> buffer;
  };

  struct Head {
    Priority priority;
    std::uint64_t seq;
    std::size_t run;
  };

  static void encode_record(const Node& n, ByteWriter& w) {
    w.put_u32(static_cast<std::uint32_t>(n.priority.arity()));
    for (double v : n.priority.values()) w.put_f64(v);
    w.put_u64(n.seq);
    ByteWriter payload;
    Codec::encode(n.item, payload);
    w.put_u32(static_cast<std::uint32_t>(payload.size()));
    w.put_bytes(payload.bytes());
  }

  static Record decode_record(ByteReader& r) {
    auto arity = r.get_u32();
    if (arity > Priority::kMaxArity) throw CorruptRecord("bad priority arity in run record");
    std::vector<double> values(arity);
    for (auto& v : values) v = r.get_f64();
    Record rec{Priority(values), r.get_u64(), {}};
    auto len = r.get_u32();
    auto bytes = r.get_bytes(len);
    rec.payload.assign(bytes.begin(), bytes.end());
    return rec;
  }

  void check_usable() const {
    if (broken_) throw IoError("virtual priority queue is unusable after an I/O failure");
  }

  void ensure_dir() {
    if (!dir_.empty()) return;
    static std::atomic<std::uint64_t> counter{0};
    auto name = "subquest-vpq-" + std::to_string(::getpid()) + "-" + std::to_string(counter++);
    dir_ = config_.spill_dir / name;
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) {
      broken_ = true;
      throw IoError("cannot create spill directory " + dir_.string() + ": " + ec.message());
    }
  }

  /// Makes the next record of run `i` visible in `heads_`, reading a block
  /// when the buffer is empty; deletes the file once exhausted.
  void advance(std::size_t i) {
    auto& run = *runs_[i];
    if (run.buffer.empty() && run.next_block + 1 < run.block_offsets.size()) read_block(run);
    if (run.buffer.empty()) {
      std::error_code ec;
      std::filesystem::remove(run.path, ec);
      return;
    }
    heads_.push(Head{run.buffer.front().priority, run.buffer.front().seq, i});
  }

  void read_block(Run& run) {
    const auto begin = run.block_offsets[run.next_block];
    const auto end = run.block_offsets[run.next_block + 1];
    const std::size_t expected =
        std::min(config_.read_buffer_records, run.records - run.next_block * config_.read_buffer_records);
    std::vector<std::uint8_t> bytes(end - begin);
    try {
      std::ifstream in(run.path, std::ios::binary);
      if (!in) throw IoError("cannot open run file " + run.path.string());
      in.seekg(static_cast<std::streamoff>(begin));
      in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
      if (in.gcount() != static_cast<std::streamsize>(bytes.size())) {
        throw IoError("short read on run file " + run.path.string());
      }
      ++stats_.run_reads;
      ByteReader r(bytes);
      std::size_t count = 0;
      while (r.remaining()) {
        run.buffer.push_back(decode_record(r));
        ++count;
      }
      if (count != expected) throw CorruptRecord("run block record count mismatch");
    } catch (...) {
      broken_ = true;
      throw;
    }
    ++run.next_block;
  }

  struct HeadOrder {
    bool operator()(const Head& a, const Head& b) const {
      auto c = compare(a.priority, b.priority);
      if (c != 0) return c < 0;
      return a.seq > b.seq;
    }
  };

  VpqConfig config_;
  std::vector<Node> heap_;
  std::vector<std::unique_ptr<Run>> runs_;
  std::priority_queue<Head, std::vector<Head>, HeadOrder> heads_;
  std::filesystem::path dir_;
  std::size_t size_ = 0;  // records on disk or in run buffers
  std::uint64_t next_seq_ = 0;
  VpqStats stats_;
  bool broken_ = false;
};

}  // namespace subquest
