#include "skewsds/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <queue>
#include <string_view>
#include <thread>
#include <unordered_map>

#include <boost/multiprecision/cpp_int.hpp>

#include "skewsds/errors.hpp"
#include "skewsds/group.hpp"
#include "skewsds/record_cache.hpp"

namespace skewsds {

namespace {

constexpr int kMaxHalf = 64;

// Half profile: entry h - 1 is P(h) = P(v - h) for h = 1..(v-1)/2.
using Counts = std::array<std::uint8_t, kMaxHalf>;

int half_class(int delta, int v) {
  delta %= v;
  if (delta < 0) delta += v;
  return std::min(delta, v - delta);
}

struct Bounds {
  int v = 0;
  int half = 0;
  Counts lower{};
  Counts upper{};

  static Bounds uniform(int v, int lo, int hi) {
    Bounds b;
    b.v = v;
    b.half = (v - 1) / 2;
    for (int h = 0; h < b.half; ++h) {
      b.lower[h] = static_cast<std::uint8_t>(std::clamp(lo, 0, 255));
      b.upper[h] = static_cast<std::uint8_t>(std::clamp(hi, 0, 255));
    }
    return b;
  }

  bool meets_lower(const Counts& c) const {
    for (int h = 0; h < half; ++h) {
      if (c[h] < lower[h]) return false;
    }
    return true;
  }
};

// Shared leaf budget. Leaves are charged in batches to keep the atomic cold.
class LeafBudget {
 public:
  explicit LeafBudget(std::uint64_t limit) : limit_(limit) {}

  void charge(std::uint64_t n) {
    if (used_.fetch_add(n, std::memory_order_relaxed) + n > limit_) {
      exceeded_.store(true, std::memory_order_relaxed);
    }
  }
  bool exceeded() const { return exceeded_.load(std::memory_order_relaxed); }

 private:
  std::uint64_t limit_;
  std::atomic<std::uint64_t> used_{0};
  std::atomic<bool> exceeded_{false};
};

class LocalCharge {
 public:
  explicit LocalCharge(LeafBudget* budget) : budget_(budget) {}
  ~LocalCharge() { flush(); }
  LocalCharge(const LocalCharge&) = delete;
  LocalCharge& operator=(const LocalCharge&) = delete;

  // Returns false once the shared budget is gone.
  bool leaf() {
    if (++pending_ == 4096) flush();
    return budget_ == nullptr || !budget_->exceeded();
  }
  void flush() {
    if (budget_ != nullptr && pending_ != 0) budget_->charge(pending_);
    pending_ = 0;
  }

 private:
  LeafBudget* budget_;
  std::uint64_t pending_ = 0;
};

template <typename F>
void run_tasks(std::size_t n, unsigned jobs, F&& f) {
  const std::size_t workers = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            f(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

// Flat arena of (key, mask) records.
class RecordTable {
 public:
  explicit RecordTable(int key_len = 0) : key_len_(key_len) {}

  int key_len() const noexcept { return key_len_; }
  std::size_t size() const noexcept { return masks_.size(); }
  bool empty() const noexcept { return masks_.empty(); }

  void push(const std::uint8_t* key, Mask m) {
    keys_.append(reinterpret_cast<const char*>(key), static_cast<std::size_t>(key_len_));
    masks_.push_back(m);
  }
  void push(std::string_view key, Mask m) {
    keys_.append(key);
    masks_.push_back(m);
  }

  std::string_view key(std::size_t i) const {
    return std::string_view(keys_).substr(i * static_cast<std::size_t>(key_len_),
                                          static_cast<std::size_t>(key_len_));
  }
  Mask mask(std::size_t i) const { return masks_[i]; }

  void append(const RecordTable& other) {
    keys_ += other.keys_;
    masks_.insert(masks_.end(), other.masks_.begin(), other.masks_.end());
  }

  // Orders by key bytes, then by the subset order of the payload.
  void sort() {
    std::vector<std::uint32_t> order(size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
      if (auto c = key(x).compare(key(y)); c != 0) return c < 0;
      return mask::lex_compare(masks_[x], masks_[y]) < 0;
    });
    std::string keys;
    keys.reserve(keys_.size());
    std::vector<Mask> masks;
    masks.reserve(masks_.size());
    for (auto i : order) {
      keys.append(key(i));
      masks.push_back(masks_[i]);
    }
    keys_ = std::move(keys);
    masks_ = std::move(masks);
  }

 private:
  int key_len_;
  std::string keys_;
  std::vector<Mask> masks_;
};

// ---------------------------------------------------------------------------
// Skew A enumeration. Depth j = 1..r decides whether j or v - j joins A.

struct ASeed {
  int depth = 1;  // next j to decide
  Mask bits = 0;
  Counts counts{};
};

class SkewAEnumerator {
 public:
  SkewAEnumerator(const Bounds& bounds, LeafBudget* budget)
      : b_(bounds), charge_(budget) {}

  std::uint64_t nodes() const noexcept { return nodes_; }
  std::uint64_t leaves() const noexcept { return leaves_; }

  // Collects the live partial states at the given depth.
  std::vector<ASeed> seeds(int depth) {
    std::vector<ASeed> out;
    stop_depth_ = depth;
    seeds_ = &out;
    auto ignore = [](Mask, const Counts&) {};
    extend(1, 0, Counts{}, ignore);
    seeds_ = nullptr;
    stop_depth_ = -1;
    return out;
  }

  template <typename Visit>
  void run(const ASeed& seed, Visit&& visit) {
    n_ = 0;
    for (Mask rest = seed.bits; rest != 0; rest &= rest - 1) elems_[n_++] = mask::lowest_bit(rest);
    extend(seed.depth, seed.bits, seed.counts, visit);
  }

 private:
  template <typename Visit>
  void extend(int j, Mask bits, const Counts& counts, Visit& visit) {
    ++nodes_;
    if (aborted_) return;
    if (j == stop_depth_) {
      seeds_->push_back(ASeed{j, bits, counts});
      return;
    }
    if (j > b_.half) {
      ++leaves_;
      if (!charge_.leaf()) {
        aborted_ = true;
        return;
      }
      if (b_.meets_lower(counts)) visit(bits, counts);
      return;
    }
    for (int x : {j, b_.v - j}) {
      Counts next = counts;
      bool ok = true;
      for (int i = 0; i < n_; ++i) {
        const int h = half_class(x - elems_[i], b_.v) - 1;
        if (++next[h] > b_.upper[h]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      elems_[n_++] = x;
      extend(j + 1, bits | (Mask{1} << x), next, visit);
      --n_;
    }
  }

  Bounds b_;
  LocalCharge charge_;
  std::array<int, 128> elems_{};
  int n_ = 0;
  int stop_depth_ = -1;
  std::vector<ASeed>* seeds_ = nullptr;
  std::uint64_t nodes_ = 0;
  std::uint64_t leaves_ = 0;
  bool aborted_ = false;
};

// ---------------------------------------------------------------------------
// Canonical B enumeration. B = {0 = b_0 < b_1 < ... < b_{k-1}} is the least
// translate iff its cyclic gap sequence (b_1 - b_0, ..., v - b_{k-1}) is the
// least of its rotations, i.e. a necklace. Prefixes are kept prenecklaces
// (Fredricksen-Kessler-Maiorana test), so every gap is at least the first.

struct BSeed {
  int placed = 1;
  int period = 1;
  Mask bits = 1;
  Counts counts{};
  std::array<int, 128> elems{};
  std::array<int, 129> gaps{};
};

class CanonicalBEnumerator {
 public:
  CanonicalBEnumerator(const Bounds& bounds, int k, LeafBudget* budget)
      : b_(bounds), k_(k), charge_(budget) {}

  std::uint64_t nodes() const noexcept { return nodes_; }
  std::uint64_t leaves() const noexcept { return leaves_; }

  std::vector<BSeed> seeds(int placed) {
    std::vector<BSeed> out;
    if (k_ <= 1) {
      out.push_back(BSeed{});
      return out;
    }
    stop_placed_ = placed;
    seeds_ = &out;
    auto ignore = [](Mask, const Counts&) {};
    elems_[0] = 0;
    extend(1, Mask{1}, Counts{}, 1, ignore);
    seeds_ = nullptr;
    stop_placed_ = -1;
    return out;
  }

  template <typename Visit>
  void run(const BSeed& seed, Visit&& visit) {
    if (k_ == 0) {
      leaf(0, Counts{}, visit);
      return;
    }
    if (k_ == 1) {
      leaf(Mask{1}, Counts{}, visit);
      return;
    }
    elems_ = seed.elems;
    gaps_ = seed.gaps;
    extend(seed.placed, seed.bits, seed.counts, seed.period, visit);
  }

 private:
  template <typename Visit>
  void leaf(Mask bits, const Counts& counts, Visit& visit) {
    ++leaves_;
    if (!charge_.leaf()) {
      aborted_ = true;
      return;
    }
    if (b_.meets_lower(counts)) visit(bits, counts);
  }

  template <typename Visit>
  void extend(int placed, Mask bits, const Counts& counts, int period, Visit& visit) {
    ++nodes_;
    if (aborted_) return;
    const int v = b_.v;
    if (placed == stop_placed_ && placed < k_) {
      BSeed s;
      s.placed = placed;
      s.period = period;
      s.bits = bits;
      s.counts = counts;
      s.elems = elems_;
      s.gaps = gaps_;
      seeds_->push_back(s);
      return;
    }
    if (placed == k_) {
      const int wrap = v - elems_[k_ - 1];
      const int ref = gaps_[k_ - period];
      if (wrap < ref) return;
      const int p = wrap > ref ? k_ : period;
      if (k_ % p != 0) return;
      leaf(bits, counts, visit);
      return;
    }
    const int prev = elems_[placed - 1];
    for (int x = prev + 1; x < v; ++x) {
      const int gap = x - prev;
      int p = period;
      if (placed == 1) {
        if (k_ * gap > v) break;
        p = 1;
      } else {
        if (x > v - (k_ - placed) * gaps_[1]) break;
        const int ref = gaps_[placed - period];
        if (gap < ref) continue;
        if (gap > ref) p = placed;
      }
      Counts next = counts;
      bool ok = true;
      for (int i = 0; i < placed; ++i) {
        const int h = half_class(x - elems_[i], v) - 1;
        if (++next[h] > b_.upper[h]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      elems_[placed] = x;
      gaps_[placed] = gap;
      extend(placed + 1, bits | (Mask{1} << x), next, p, visit);
    }
  }

  Bounds b_;
  int k_;
  LocalCharge charge_;
  std::array<int, 128> elems_{};
  std::array<int, 129> gaps_{};
  int stop_placed_ = -1;
  std::vector<BSeed>* seeds_ = nullptr;
  std::uint64_t nodes_ = 0;
  std::uint64_t leaves_ = 0;
  bool aborted_ = false;
};

void check_search_modulus(int v) {
  if (v < 3 || v % 2 == 0 || v > kMaxModulus) {
    throw ParameterError("search needs odd v in [3, " + std::to_string(kMaxModulus) +
                         "], got " + std::to_string(v));
  }
}

int seed_depth_a(int half) { return std::min(half, 8) + 1; }
int seed_placed_b(int k) { return std::min(k - 1, 3); }

struct AStage {
  RecordTable table;
  std::uint64_t nodes = 0;
  std::uint64_t leaves = 0;
};

AStage run_a_stage(const Bounds& bounds, int lambda, unsigned jobs, LeafBudget* budget) {
  AStage out{RecordTable(bounds.half)};
  SkewAEnumerator root(bounds, budget);
  const auto seeds = root.seeds(seed_depth_a(bounds.half));
  out.nodes = root.nodes();
  std::vector<RecordTable> parts(seeds.size(), RecordTable(bounds.half));
  std::vector<std::uint64_t> nodes(seeds.size()), leaves(seeds.size());
  run_tasks(seeds.size(), jobs, [&](std::size_t i) {
    SkewAEnumerator e(bounds, budget);
    std::array<std::uint8_t, kMaxHalf> key{};
    e.run(seeds[i], [&](Mask bits, const Counts& c) {
      for (int h = 0; h < bounds.half; ++h) key[h] = static_cast<std::uint8_t>(lambda - c[h]);
      parts[i].push(key.data(), bits);
    });
    nodes[i] = e.nodes();
    leaves[i] = e.leaves();
  });
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    out.table.append(parts[i]);
    out.nodes += nodes[i];
    out.leaves += leaves[i];
  }
  out.table.sort();
  return out;
}

std::vector<SubsetZv> subsets_of(int v, const RecordTable& t) {
  std::vector<SubsetZv> out;
  out.reserve(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out.push_back(SubsetZv::from_mask(v, t.mask(i)));
  std::sort(out.begin(), out.end());
  return out;
}

std::string key_of(const Counts& c, int half) {
  return std::string(reinterpret_cast<const char*>(c.data()), static_cast<std::size_t>(half));
}

// Index from key to the [begin, end) run of equal keys in a sorted table.
using KeyIndex = std::unordered_map<std::string_view, std::pair<std::uint32_t, std::uint32_t>>;

KeyIndex index_sorted(const RecordTable& t) {
  KeyIndex idx;
  idx.reserve(t.size());
  std::size_t i = 0;
  while (i < t.size()) {
    std::size_t j = i + 1;
    while (j < t.size() && t.key(j) == t.key(i)) ++j;
    idx.emplace(t.key(i), std::pair{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
    i = j;
  }
  return idx;
}

using RawPair = std::pair<Mask, Mask>;  // (A, B)

std::vector<SdsPair> to_pairs(const SdsParams& params, std::vector<RawPair> raw) {
  std::vector<SdsPair> out;
  out.reserve(raw.size());
  for (const auto& [a, b] : raw) {
    out.push_back(SdsPair{params, SubsetZv::from_mask(params.v, a), SubsetZv::from_mask(params.v, b)});
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<RawPair> hash_join(const RecordTable& as, const RecordTable& bs) {
  const auto idx = index_sorted(as);
  std::vector<RawPair> out;
  for (std::size_t i = 0; i < bs.size(); ++i) {
    const auto it = idx.find(bs.key(i));
    if (it == idx.end()) continue;
    for (auto a = it->second.first; a < it->second.second; ++a) out.emplace_back(as.mask(a), bs.mask(i));
  }
  return out;
}

// k-way merge over sorted record files.
class MergedRecords {
 public:
  explicit MergedRecords(const std::vector<std::filesystem::path>& files) {
    readers_.reserve(files.size());
    for (const auto& f : files) readers_.emplace_back(f);
    heads_.resize(readers_.size());
    for (std::size_t i = 0; i < readers_.size(); ++i) advance(i);
  }

  bool done() const { return heap_.empty(); }
  const std::string& key() const { return heads_[heap_.top()].first; }
  Mask bits() const { return heads_[heap_.top()].second; }

  void pop() {
    const auto i = heap_.top();
    heap_.pop();
    advance(i);
  }

 private:
  void advance(std::size_t i) {
    if (readers_[i].next(heads_[i].first, heads_[i].second)) heap_.push(i);
  }

  struct Greater {
    const MergedRecords* self;
    bool operator()(std::size_t x, std::size_t y) const {
      const auto& hx = self->heads_[x];
      const auto& hy = self->heads_[y];
      if (auto c = hx.first.compare(hy.first); c != 0) return c > 0;
      if (auto c = mask::lex_compare(hx.second, hy.second); c != 0) return c > 0;
      return x > y;
    }
  };

  std::vector<RecordReader> readers_;
  std::vector<std::pair<std::string, Mask>> heads_;
  std::priority_queue<std::size_t, std::vector<std::size_t>, Greater> heap_{Greater{this}};
};

std::vector<RawPair> merge_join(const std::vector<std::filesystem::path>& a_files,
                                const std::vector<std::filesystem::path>& b_files) {
  MergedRecords as(a_files);
  MergedRecords bs(b_files);
  std::vector<RawPair> out;
  std::vector<Mask> a_group;
  while (!as.done() && !bs.done()) {
    const int c = as.key().compare(bs.key());
    if (c < 0) {
      as.pop();
    } else if (c > 0) {
      bs.pop();
    } else {
      const std::string key = as.key();
      a_group.clear();
      while (!as.done() && as.key() == key) {
        a_group.push_back(as.bits());
        as.pop();
      }
      while (!bs.done() && bs.key() == key) {
        for (Mask a : a_group) out.emplace_back(a, bs.bits());
        bs.pop();
      }
    }
  }
  return out;
}

std::filesystem::path write_partition(const std::filesystem::path& dir, const SdsParams& p,
                                      Side side, std::uint32_t partition, RecordTable& t) {
  t.sort();
  RecordFileHeader h;
  h.v = static_cast<std::uint32_t>(p.v);
  h.k = static_cast<std::uint32_t>(p.k);
  h.lambda = static_cast<std::uint32_t>(p.lambda);
  h.side = side;
  h.partition = partition;
  h.key_len = static_cast<std::uint32_t>(t.key_len());
  h.sorted = true;
  auto path = cache_file_path(dir, p.v, p.k, p.lambda, side, partition);
  RecordWriter w(path, h);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto key = t.key(i);
    w.append({reinterpret_cast<const std::uint8_t*>(key.data()), key.size()}, t.mask(i));
  }
  w.close();
  return path;
}

void require_cache_dir(const SearchOptions& options) {
  if (options.cache_dir.empty()) throw ParameterError("sort-merge join needs a cache directory");
  std::filesystem::create_directories(options.cache_dir);
}

std::uint64_t saturate(const boost::multiprecision::cpp_int& x) {
  if (x > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  return x.convert_to<std::uint64_t>();
}

boost::multiprecision::cpp_int binomial(int n, int k) {
  boost::multiprecision::cpp_int out = 1;
  if (k < 0 || k > n) return 0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

int euler_phi(int n) {
  int out = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    out -= out / p;
  }
  if (n > 1) out -= out / n;
  return out;
}

}  // namespace

std::string to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Completed:
      return "completed";
    case RunStatus::NotAttempted:
      return "not-attempted";
    case RunStatus::BudgetExceeded:
      return "budget-exceeded";
  }
  return "unknown";
}

std::string pack_profile_key(const DifferenceProfile& profile) {
  if (!profile.is_palindromic()) throw ParameterError("profile key must be palindromic");
  const int half = (profile.v - 1) / 2;
  std::string key(static_cast<std::size_t>(half), '\0');
  for (int h = 1; h <= half; ++h) {
    const int c = profile[h];
    if (c < 0 || c > 255) throw ParameterError("profile entry does not fit in a key byte");
    key[static_cast<std::size_t>(h - 1)] = static_cast<char>(c);
  }
  return key;
}

ProfileKeyedRecord a_record(const SubsetZv& a, int lambda) {
  auto key = diff_profile(a);
  for (auto& c : key.counts) {
    if (c > lambda) throw ParameterError("A-record needs P_A(i) <= lambda");
    c = lambda - c;
  }
  return ProfileKeyedRecord{std::move(key), a};
}

ProfileKeyedRecord b_record(const SubsetZv& b) { return ProfileKeyedRecord{diff_profile(b), b}; }

std::vector<SubsetZv> enumerate_skew_A(int v, int lambda, unsigned jobs) {
  check_search_modulus(v);
  if (lambda < 0) return {};
  const auto stage = run_a_stage(Bounds::uniform(v, 0, lambda), lambda, jobs, nullptr);
  return subsets_of(v, stage.table);
}

std::vector<SubsetZv> enumerate_canonical_B(int v, int k, int lambda, unsigned jobs) {
  check_search_modulus(v);
  if (k < 0 || k >= (v - 1) / 2) {
    throw NormalizationError("canonical B enumeration needs 0 <= k < (v-1)/2");
  }
  if (lambda < 0) return {};
  const Bounds bounds = Bounds::uniform(v, 0, lambda);
  CanonicalBEnumerator root(bounds, k, nullptr);
  const auto seeds = root.seeds(seed_placed_b(k));
  std::vector<std::vector<Mask>> parts(seeds.size());
  run_tasks(seeds.size(), jobs, [&](std::size_t i) {
    CanonicalBEnumerator e(bounds, k, nullptr);
    e.run(seeds[i], [&](Mask bits, const Counts&) { parts[i].push_back(bits); });
  });
  std::vector<SubsetZv> out;
  for (const auto& part : parts) {
    for (Mask m : part) out.push_back(SubsetZv::from_mask(v, m));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SdsPair> match_pairs(std::span<const SubsetZv> as, std::span<const SubsetZv> bs,
                                 const SdsParams& params, const SearchOptions& options) {
  const int half = (params.v - 1) / 2;
  RecordTable at(half), bt(half);
  for (const auto& a : as) {
    if (a.modulus() != params.v) throw ParameterError("A-stream modulus mismatch");
    const auto rec = a_record(a, params.lambda);
    at.push(pack_profile_key(rec.key), a.mask());
  }
  for (const auto& b : bs) {
    if (b.modulus() != params.v) throw ParameterError("B-stream modulus mismatch");
    bt.push(pack_profile_key(diff_profile(b)), b.mask());
  }
  at.sort();
  bt.sort();
  if (options.backend == JoinBackend::Hash) return to_pairs(params, hash_join(at, bt));
  require_cache_dir(options);
  const auto a_file = write_partition(options.cache_dir, params, Side::A, 0, at);
  const auto b_file = write_partition(options.cache_dir, params, Side::B, 0, bt);
  return to_pairs(params, merge_join({a_file}, {b_file}));
}

std::uint64_t estimate_leaves(const SdsParams& params) {
  using boost::multiprecision::cpp_int;
  const int v = params.v;
  const int k = params.k;
  cpp_int necklaces = 0;
  if (k == 0) {
    necklaces = 1;
  } else {
    const int g = std::gcd(v, k);
    for (int d = 1; d <= g; ++d) {
      if (g % d == 0) necklaces += euler_phi(d) * binomial(v / d, k / d);
    }
    necklaces /= v;
  }
  return saturate((cpp_int(1) << params.r) + necklaces);
}

ClassificationResult classify(const SdsParams& params, const SearchOptions& options) {
  if (!params.is_skew_normalized()) {
    throw NormalizationError("parameters " + params.to_string() +
                             " are not feasible skew-normalized parameters (need r = (v-1)/2 > k)");
  }
  check_search_modulus(params.v);
  const auto started = std::chrono::steady_clock::now();
  const int v = params.v;
  const int k = params.k;
  const int lambda = params.lambda;
  const int half = (v - 1) / 2;

  ClassificationResult result;
  result.params = params;
  result.estimated_leaves = estimate_leaves(params);
  auto finish = [&](RunStatus status) {
    result.status = status;
    result.count = result.representatives.size();
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
  };
  if (result.estimated_leaves > options.budget) return finish(RunStatus::NotAttempted);

  LeafBudget budget(options.budget);

  // P_B(i) <= k, so P_A(i) >= lambda - k.
  const auto a_bounds = Bounds::uniform(v, lambda - k, lambda);
  auto a_stage = run_a_stage(a_bounds, lambda, options.jobs, &budget);
  const RecordTable& as = a_stage.table;
  result.stats.push_back(StageStats{"skew-A", saturate(boost::multiprecision::cpp_int(1) << half),
                                    a_stage.nodes, as.size()});
  if (budget.exceeded()) return finish(RunStatus::BudgetExceeded);

  // Tighten B bounds with the surviving A profiles: lambda - max P_A <= P_B <= lambda - min P_A.
  Bounds b_bounds = Bounds::uniform(v, 0, lambda);
  if (!as.empty()) {
    for (int h = 0; h < half; ++h) {
      int lo_key = 255, hi_key = 0;
      for (std::size_t i = 0; i < as.size(); ++i) {
        const int key = static_cast<std::uint8_t>(as.key(i)[static_cast<std::size_t>(h)]);
        lo_key = std::min(lo_key, key);
        hi_key = std::max(hi_key, key);
      }
      b_bounds.lower[h] = static_cast<std::uint8_t>(lo_key);
      b_bounds.upper[h] = static_cast<std::uint8_t>(std::min(hi_key, k));
    }
  }

  std::vector<RawPair> raw;
  StageStats b_stats{"canonical-B", saturate(binomial(v, k)), 0, 0};
  StageStats join_stats{"join", 0, 0, 0};

  if (!as.empty()) {
    CanonicalBEnumerator root(b_bounds, k, &budget);
    const auto seeds = root.seeds(seed_placed_b(k));
    b_stats.visited = root.nodes();
    std::vector<std::uint64_t> nodes(seeds.size()), survivors(seeds.size());

    if (options.backend == JoinBackend::Hash) {
      const auto idx = index_sorted(as);
      std::vector<std::vector<RawPair>> matches(seeds.size());
      run_tasks(seeds.size(), options.jobs, [&](std::size_t i) {
        CanonicalBEnumerator e(b_bounds, k, &budget);
        std::string key;
        e.run(seeds[i], [&](Mask bits, const Counts& c) {
          ++survivors[i];
          key.assign(reinterpret_cast<const char*>(c.data()), static_cast<std::size_t>(half));
          const auto it = idx.find(key);
          if (it == idx.end()) return;
          for (auto a = it->second.first; a < it->second.second; ++a) {
            matches[i].emplace_back(as.mask(a), bits);
          }
        });
        nodes[i] = e.nodes();
      });
      for (auto& m : matches) raw.insert(raw.end(), m.begin(), m.end());
    } else {
      require_cache_dir(options);
      std::vector<std::filesystem::path> a_files, b_files;
      a_files.push_back(write_partition(options.cache_dir, params, Side::A, 0, a_stage.table));
      // One B partition per first gap; seeds arrive grouped by it.
      std::size_t begin = 0;
      while (begin < seeds.size()) {
        std::size_t end = begin + 1;
        const int first_gap = seeds[begin].gaps[1];
        while (end < seeds.size() && seeds[end].gaps[1] == first_gap) ++end;
        std::vector<RecordTable> parts(end - begin, RecordTable(half));
        run_tasks(end - begin, options.jobs, [&](std::size_t j) {
          const std::size_t i = begin + j;
          CanonicalBEnumerator e(b_bounds, k, &budget);
          e.run(seeds[i], [&](Mask bits, const Counts& c) {
            ++survivors[i];
            parts[j].push(key_of(c, half), bits);
          });
          nodes[i] = e.nodes();
        });
        RecordTable merged(half);
        for (const auto& p : parts) merged.append(p);
        b_files.push_back(write_partition(options.cache_dir, params, Side::B,
                                          static_cast<std::uint32_t>(std::max(first_gap, 0)), merged));
        begin = end;
      }
      raw = merge_join(a_files, b_files);
    }
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      b_stats.visited += nodes[i];
      b_stats.survivors += survivors[i];
    }
    join_stats.candidates = b_stats.survivors;
    join_stats.visited = b_stats.survivors;
  }
  result.stats.push_back(b_stats);
  if (budget.exceeded()) return finish(RunStatus::BudgetExceeded);

  auto pairs = to_pairs(params, std::move(raw));
  join_stats.survivors = pairs.size();
  result.stats.push_back(join_stats);

  std::map<SdsPair, std::size_t> seen;
  for (const auto& p : pairs) {
    if (seen.emplace(canonical_form(p), result.representatives.size()).second) {
      result.representatives.push_back(p);
    }
  }
  result.stats.push_back(StageStats{"dedup", pairs.size(), pairs.size(), result.representatives.size()});
  return finish(RunStatus::Completed);
}

std::vector<SdsParams> feasible_params(int v_max) {
  std::vector<SdsParams> out;
  for (int v = 3; v <= v_max; v += 2) {
    for (int k = 0; k < (v - 1) / 2; ++k) {
      if (auto p = derive_params(v, k)) out.push_back(*p);
    }
  }
  return out;
}

std::vector<ClassificationResult> classify_all(int v_max, const SearchOptions& options) {
  std::vector<ClassificationResult> out;
  for (const auto& p : feasible_params(v_max)) out.push_back(classify(p, options));
  return out;
}

}  // namespace skewsds
