#include "propus/collider.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <cstring>
#include <iostream>
#include <mutex>
#include <thread>
#include <unordered_set>

#include "propus/common.hpp"

namespace propus::collider {

namespace {

inline void put_le16(std::vector<std::uint8_t>& out, std::uint16_t x) {
  out.push_back(std::uint8_t(x & 0xFF));
  out.push_back(std::uint8_t(x >> 8));
}

inline std::uint64_t le64(const std::uint8_t* p) {
  std::uint64_t x = 0;
  for (int i = 7; i >= 0; --i) x = (x << 8) | p[i];
  return x;
}

inline std::uint32_t le32(const std::uint8_t* p) {
  return std::uint32_t(p[0]) | (std::uint32_t(p[1]) << 8) | (std::uint32_t(p[2]) << 16) |
         (std::uint32_t(p[3]) << 24);
}

}  // namespace

seqcore::ResidueSubset BucketLines::subset_at(std::uint64_t i) const {
  seqcore::ResidueSubset x;
  x.v = v;
  const std::int32_t* row = subsets.data() + i * static_cast<std::uint64_t>(k);
  x.elements.assign(row, row + k);
  return x;
}

BucketLines load_bucket_lines(const std::filesystem::path& paf_path,
                              const std::filesystem::path& subset_path) {
  auto pf = seqcore::read_paf_file(paf_path);
  auto sf = seqcore::read_subset_file(subset_path);
  if (pf.v != sf.v)
    throw DataError(paf_path.string() + " and " + subset_path.string() + " disagree on modulus");
  if (pf.form != seqcore::PafForm::indicator)
    throw DataError(paf_path.string() + ": matching needs indicator PAFs");
  if (pf.lines.size() != sf.subsets.size())
    throw DataError(paf_path.string() + " and " + subset_path.string() +
                    " are not line-aligned");
  if (pf.n != seqcore::folded_len(pf.v))
    throw DataError(paf_path.string() + ": PAF lines are not folded length (v-1)/2");
  BucketLines out;
  out.v = pf.v;
  out.k = sf.k;
  out.n = pf.n;
  out.count = pf.lines.size();
  out.paf.reserve(out.count * static_cast<std::uint64_t>(out.n));
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(out.count);
  for (const auto& l : pf.lines) {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a over the row values
    for (int x : l) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(x));
      h *= 1099511628211ull;
    }
    seen.insert(h);
    out.paf.insert(out.paf.end(), l.begin(), l.end());
  }
  out.distinct_paf = seen.size();
  out.subsets.reserve(out.count * static_cast<std::uint64_t>(out.k));
  for (const auto& s : sf.subsets)
    out.subsets.insert(out.subsets.end(), s.elements.begin(), s.elements.end());
  return out;
}

int suggest_dp_bits(const BucketTripleData& data) {
  double n_b = static_cast<double>(data.b->distinct_paf);
  double n_ad = static_cast<double>(data.a->distinct_paf) *
                static_cast<double>(data.d->distinct_paf);
  double n_min = std::max(1.0, std::min(n_b, n_ad));
  double rho = 2.5 * std::sqrt(n_min);
  int dp = static_cast<int>(std::floor(std::log2(rho))) - 2;
  return std::clamp(dp, 1, 20);
}

BucketTripleData make_triple_data(std::shared_ptr<const BucketLines> a,
                                  std::shared_ptr<const BucketLines> d,
                                  std::shared_ptr<const BucketLines> b) {
  if (!a || !d || !b) throw std::invalid_argument("null bucket");
  if (a->v != d->v || a->v != b->v) throw DataError("bucket moduli differ");
  if (a->count == 0 || d->count == 0 || b->count == 0) throw DataError("empty bucket");
  BucketTripleData t;
  t.v = a->v;
  t.n = a->n;
  t.a = std::move(a);
  t.d = std::move(d);
  t.b = std::move(b);
  return t;
}

WalkPoint f_ad(const BucketTripleData& data, std::uint64_t i, std::uint64_t j) {
  if (i >= data.a->count || j >= data.d->count)
    throw std::invalid_argument("line index out of range");
  auto ra = data.a->paf_row(i);
  auto rd = data.d->paf_row(j);
  WalkPoint p(static_cast<std::size_t>(data.n));
  for (int s = 0; s < data.n; ++s)
    p[static_cast<std::size_t>(s)] = ra[static_cast<std::size_t>(s)] + rd[static_cast<std::size_t>(s)];
  return p;
}

WalkPoint f_b(const BucketTripleData& data, std::uint64_t k, int lambda) {
  if (k >= data.b->count) throw std::invalid_argument("line index out of range");
  auto rb = data.b->paf_row(k);
  WalkPoint p(static_cast<std::size_t>(data.n));
  for (int s = 0; s < data.n; ++s)
    p[static_cast<std::size_t>(s)] = lambda - 2 * rb[static_cast<std::size_t>(s)];
  return p;
}

void serialize_point(const WalkPoint& p, int v, std::vector<std::uint8_t>& out) {
  out.clear();
  out.reserve(2 + 2 * p.size());
  put_le16(out, static_cast<std::uint16_t>(v));
  for (std::int32_t e : p) {
    if (e < -32768 || e > 32767) throw DataError("walk point entry overflows 16 bits");
    put_le16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(e)));
  }
}

Digest digest_point(const WalkPoint& p, int v, DigestAlgo algo, std::uint32_t version) {
  // stack serialization: 2 + 2n + 4 bytes, single SHA-1 block for n <= 24
  // (n <= 21 for every v in range)
  std::uint8_t buf[56];
  std::size_t len = 0;
  if (algo == DigestAlgo::sha1 && p.size() <= 24) {
    buf[len++] = std::uint8_t(v & 0xFF);
    buf[len++] = std::uint8_t(v >> 8);
    for (std::int32_t e : p) {
      if (e < -32768 || e > 32767) throw DataError("walk point entry overflows 16 bits");
      buf[len++] = std::uint8_t(e & 0xFF);
      buf[len++] = std::uint8_t((e >> 8) & 0xFF);
    }
  } else if (algo == DigestAlgo::sha1) {
    thread_local std::vector<std::uint8_t> vbuf;
    serialize_point(p, v, vbuf);
    if (version != 0)
      for (int i = 0; i < 4; ++i) vbuf.push_back(std::uint8_t(version >> (8 * i)));
    return Sha1::hash(vbuf.data(), vbuf.size());
  } else {
    // toy digest: only the entry total, so unequal vectors collide freely
    std::int64_t sum = 0;
    for (std::int32_t e : p) sum += e;
    buf[len++] = std::uint8_t(v & 0xFF);
    buf[len++] = std::uint8_t(v >> 8);
    for (int i = 0; i < 4; ++i) buf[len++] = std::uint8_t(std::uint64_t(sum) >> (8 * i));
  }
  if (version != 0)
    for (int i = 0; i < 4; ++i) buf[len++] = std::uint8_t(version >> (8 * i));
  return Sha1::hash(buf, len);
}

StepRecord next_step(const Digest& d, std::uint64_t n_a, std::uint64_t n_d, std::uint64_t n_b) {
  if (n_a == 0 || n_d == 0 || n_b == 0) throw std::invalid_argument("bucket sizes must be >= 1");
  StepRecord r;
  std::uint64_t u = le64(d.data());
  if (u % 2 == 0) {
    r.family = StepFamily::ad;
    r.i = static_cast<std::uint32_t>(le32(d.data() + 8) % n_a);
    r.j = static_cast<std::uint32_t>(le32(d.data() + 12) % n_d);
  } else {
    r.family = StepFamily::b;
    r.k = static_cast<std::uint32_t>(le32(d.data() + 8) % n_b);
  }
  return r;
}

bool is_distinguished(const Digest& d, int dp_bits) {
  if (dp_bits < 0 || dp_bits > 160) throw std::invalid_argument("dp_bits must be in 0..160");
  int full = dp_bits / 8;
  for (int i = 0; i < full; ++i)
    if (d[static_cast<std::size_t>(i)] != 0) return false;
  int rem = dp_bits % 8;
  if (rem == 0) return true;
  return (d[static_cast<std::size_t>(full)] >> (8 - rem)) == 0;
}

namespace {

// Replay cursor: the full walk state after some number of steps.
struct WalkCursor {
  const BucketTripleData& data;
  const SearchConfig& cfg;
  std::uint32_t version;
  StepRecord rec;
  WalkPoint pt;
  Digest dg;

  WalkCursor(const BucketTripleData& d, const SearchConfig& c, std::uint32_t ver)
      : data(d), cfg(c), version(ver) {}

  void apply(const StepRecord& r) {
    rec = r;
    const int n = data.n;
    pt.resize(static_cast<std::size_t>(n));
    if (r.family == StepFamily::ad) {
      const std::int32_t* ra = data.a->paf.data() + std::uint64_t(r.i) * std::uint64_t(n);
      const std::int32_t* rd = data.d->paf.data() + std::uint64_t(r.j) * std::uint64_t(n);
      for (int s = 0; s < n; ++s) pt[static_cast<std::size_t>(s)] = ra[s] + rd[s];
    } else {
      const std::int32_t* rb = data.b->paf.data() + std::uint64_t(r.k) * std::uint64_t(n);
      for (int s = 0; s < n; ++s) pt[static_cast<std::size_t>(s)] = cfg.lambda - 2 * rb[s];
    }
    dg = digest_point(pt, data.v, cfg.algo, version);
  }

  // Walk start: family and indices from SHA-1 of the seed bytes (salted by
  // the function version so rotated searches start fresh).
  void start(std::uint64_t seed) {
    std::uint8_t bytes[12];
    for (int i = 0; i < 8; ++i) bytes[i] = std::uint8_t(seed >> (8 * i));
    std::size_t len = 8;
    if (version != 0) {
      for (int i = 0; i < 4; ++i) bytes[8 + i] = std::uint8_t(version >> (8 * i));
      len = 12;
    }
    Digest d0 = Sha1::hash(bytes, len);
    apply(next_step(d0, data.a->count, data.d->count, data.b->count));
  }

  void advance() { apply(next_step(dg, data.a->count, data.d->count, data.b->count)); }
};

}  // namespace

WalkResult run_walk(std::uint64_t seed, std::uint16_t worker_id, const SearchConfig& cfg,
                    const BucketTripleData& data, std::uint64_t step_budget,
                    std::uint32_t version) {
  WalkResult res;
  res.trail.start_seed = seed;
  res.trail.worker_id = worker_id;
  const std::uint32_t cap = cfg.effective_max_walk_len();

  WalkCursor cur(data, cfg, version);
  cur.start(seed);
  res.steps = 1;
  std::uint32_t len = 1;
  while (!is_distinguished(cur.dg, cfg.dp_bits)) {
    if (len >= cap || (step_budget != 0 && res.steps >= step_budget)) {
      res.abandoned = true;
      res.trail.length = len;
      res.trail.end_digest = cur.dg;
      return res;
    }
    cur.advance();
    ++len;
    ++res.steps;
  }
  res.trail.length = len;
  res.trail.end_digest = cur.dg;
  return res;
}

// --- trail store -------------------------------------------------------------

std::size_t TrailStore::DigestHasher::operator()(const Digest& d) const {
  std::uint64_t x;
  std::memcpy(&x, d.data(), 8);
  return static_cast<std::size_t>(x);
}

TrailStore::TrailStore(std::size_t capacity, const std::filesystem::path& persist_path)
    : capacity_(capacity), persist_path_(persist_path) {
  if (capacity_ == 0) throw std::invalid_argument("store capacity must be >= 1");
  if (!persist_path.empty()) {
    if (std::filesystem::exists(persist_path)) {
      for (const Trail& t : read_trail_records(persist_path)) insert_impl(t, false);
    }
    persist_.open(persist_path, std::ios::binary | std::ios::app);
    if (!persist_) throw IoError("cannot open trail store " + persist_path.string());
  }
}

void TrailStore::flush() {
  map_.clear();
  order_.clear();
  if (persist_.is_open()) {
    persist_.close();
    persist_.open(persist_path_, std::ios::binary | std::ios::trunc);
    if (!persist_) throw IoError("cannot reset trail store " + persist_path_.string());
  }
}

std::optional<std::pair<Trail, Trail>> TrailStore::insert(const Trail& t) {
  return insert_impl(t, true);
}

std::optional<std::pair<Trail, Trail>> TrailStore::insert_impl(const Trail& t, bool persist) {
  if (persist && persist_.is_open()) {
    write_trail_record(persist_, t);
    if (!persist_) throw IoError("trail store write failed");
  }
  auto it = map_.find(t.end_digest);
  if (it != map_.end()) {
    if (it->second.start_seed == t.start_seed) return std::nullopt;  // self-collision
    // Keep the incoming trail as the new representative. A fixed
    // representative would pin every later pair at this endpoint to the
    // same merge point, and a golden collision it happens to shadow would
    // stay unreachable forever.
    Trail old = it->second;
    it->second = t;
    return std::make_pair(old, t);
  }
  if (map_.size() >= capacity_) {
    if (!warned_) {
      std::cerr << "warning: trail store at capacity " << capacity_
                << ", evicting oldest trails\n";
      warned_ = true;
    }
    map_.erase(order_.front());
    order_.pop_front();
    ++evictions_;
  }
  map_.emplace(t.end_digest, t);
  order_.push_back(t.end_digest);
  return std::nullopt;
}

void write_trail_record(std::ostream& os, const Trail& t) {
  std::uint8_t rec[34];
  for (int i = 0; i < 8; ++i) rec[i] = std::uint8_t(t.start_seed >> (8 * i));
  for (int i = 0; i < 4; ++i) rec[8 + i] = std::uint8_t(t.length >> (8 * i));
  std::memcpy(rec + 12, t.end_digest.data(), 20);
  rec[32] = std::uint8_t(t.worker_id & 0xFF);
  rec[33] = std::uint8_t(t.worker_id >> 8);
  os.write(reinterpret_cast<const char*>(rec), sizeof rec);
}

std::vector<Trail> read_trail_records(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<Trail> out;
  std::uint8_t rec[34];
  while (in.read(reinterpret_cast<char*>(rec), sizeof rec)) {
    Trail t;
    t.start_seed = le64(rec);
    t.length = le32(rec + 8);
    std::memcpy(t.end_digest.data(), rec + 12, 20);
    t.worker_id = std::uint16_t(rec[32]) | (std::uint16_t(rec[33]) << 8);
    out.push_back(t);
  }
  if (in.gcount() != 0) throw DataError(path.string() + ": truncated trail record");
  return out;
}

// --- collision resolution ----------------------------------------------------

ResolveResult resolve_collision(const Trail& ta, const Trail& tb, const SearchConfig& cfg,
                                const BucketTripleData& data, std::uint32_t version) {
  if (ta.start_seed == tb.start_seed)
    throw std::invalid_argument("self-collision is not resolvable");

  WalkCursor ca(data, cfg, version), cb(data, cfg, version);
  ca.start(ta.start_seed);
  cb.start(tb.start_seed);
  std::uint32_t la = ta.length, lb = tb.length;
  while (la > lb) {
    ca.advance();
    --la;
  }
  while (lb > la) {
    cb.advance();
    --lb;
  }

  for (std::uint32_t rem = la; rem >= 1; --rem) {
    if (ca.dg == cb.dg) {
      // merge state reached; classify by the producing steps
      if (ca.rec.family != cb.rec.family && ca.pt == cb.pt) {
        const StepRecord& ad = ca.rec.family == StepFamily::ad ? ca.rec : cb.rec;
        const StepRecord& b = ca.rec.family == StepFamily::b ? ca.rec : cb.rec;
        return {ResolveKind::solution, {ad.i, ad.j, b.k}};
      }
      return {ResolveKind::useless, {}};
    }
    if (rem == 1) break;
    ca.advance();
    cb.advance();
  }
  throw DataError("trail replay diverged from stored endpoints; bucket files corrupt?");
}

sds::PropusQuadruple extract_solution(const SolutionTriple& t, const BucketTripleData& data,
                                      int lambda) {
  sds::PropusQuadruple q;
  q.v = data.v;
  q.a = data.a->subset_at(t.i);
  q.d = data.d->subset_at(t.j);
  q.b = data.b->subset_at(t.k);
  q.c = q.b;
  if (sds::verify_sds(q, lambda) != sds::SdsCheck::ok)
    throw DataError("extracted quadruple fails SDS verification (corrupt bucket files?)");
  if (!sds::propus_check(q))
    throw DataError("extracted quadruple violates the propus constraints");
  return q;
}

// --- engine ------------------------------------------------------------------

namespace {

template <typename T>
class SyncQueue {
 public:
  explicit SyncQueue(std::size_t capacity) : capacity_(capacity) {}

  // false when the queue is closed
  bool push(T item) {
    std::unique_lock<std::mutex> lk(mu_);
    cv_push_.wait(lk, [&] { return closed_ || items_.size() < capacity_; });
    if (closed_) return false;
    items_.push_back(std::move(item));
    cv_pop_.notify_one();
    return true;
  }

  std::optional<T> pop() {
    std::unique_lock<std::mutex> lk(mu_);
    cv_pop_.wait(lk, [&] { return closed_ || !items_.empty(); });
    if (items_.empty()) return std::nullopt;
    T item = std::move(items_.front());
    items_.pop_front();
    cv_push_.notify_one();
    return item;
  }

  void close() {
    std::lock_guard<std::mutex> lk(mu_);
    closed_ = true;
    cv_push_.notify_all();
    cv_pop_.notify_all();
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_push_, cv_pop_;
  std::deque<T> items_;
  std::size_t capacity_;
  bool closed_ = false;
};

}  // namespace

Engine::Engine(BucketTripleData data, SearchConfig cfg)
    : data_(std::move(data)),
      cfg_(std::move(cfg)),
      store_(cfg_.store_capacity, cfg_.store_path),
      next_seed_(cfg_.seed_base) {
  if (data_.n != seqcore::folded_len(data_.v))
    throw DataError("bucket PAF length disagrees with modulus");
  if (cfg_.dp_bits < 0 || cfg_.dp_bits > 160)
    throw std::invalid_argument("dp_bits must be in 0..160");
  if (cfg_.workers < 1) throw std::invalid_argument("workers must be >= 1");
}

bool Engine::handle_collision(const std::pair<Trail, Trail>& pair, const SolutionSink& sink) {
  ++stats_.collisions;
  ResolveResult res = resolve_collision(pair.first, pair.second, cfg_, data_, version_);
  if (res.kind == ResolveKind::useless) {
    ++stats_.useless;
    return true;
  }
  if (found_set_.count(res.triple)) return true;  // already emitted
  sds::PropusQuadruple quad = extract_solution(res.triple, data_, cfg_.lambda);
  found_set_.insert(res.triple);
  found_.push_back(res.triple);
  ++stats_.solutions;
  return sink ? sink(res.triple, quad) : true;
}

bool Engine::run_slice(std::uint64_t slice_steps, std::chrono::steady_clock::time_point deadline,
                       const SolutionSink& sink) {
  std::uint64_t slice_used = 0;
  while (!stopped_) {
    if (cfg_.max_total_steps && stats_.steps >= cfg_.max_total_steps) return false;
    if (slice_steps && slice_used >= slice_steps) return true;
    if (deadline != std::chrono::steady_clock::time_point{} &&
        std::chrono::steady_clock::now() >= deadline)
      return true;

    // run at most to the end of the current function version
    std::uint64_t seg = cfg_.effective_version_steps() - version_steps_used_;
    if (slice_steps) seg = std::min(seg, slice_steps - slice_used);
    if (cfg_.max_total_steps) seg = std::min(seg, cfg_.max_total_steps - stats_.steps);

    std::uint64_t used = cfg_.workers == 1 ? run_segment_single(seg, deadline, sink)
                                           : run_segment_parallel(seg, deadline, sink);
    slice_used += used;
    version_steps_used_ += used;
    stats_.evictions = store_.evictions();
    if (version_steps_used_ >= cfg_.effective_version_steps()) {
      ++version_;
      version_steps_used_ = 0;
      store_.flush();
      ++stats_.versions;
    }
  }
  return false;
}

// Runs walks on the calling thread until the segment budget, deadline, a
// stop, or the global step budget. Returns steps consumed.
std::uint64_t Engine::run_segment_single(std::uint64_t seg_steps,
                                         std::chrono::steady_clock::time_point deadline,
                                         const SolutionSink& sink) {
  std::uint64_t used = 0;
  while (!stopped_) {
    if (used >= seg_steps) break;
    if (cfg_.max_total_steps && stats_.steps >= cfg_.max_total_steps) break;
    if (deadline != std::chrono::steady_clock::time_point{} &&
        std::chrono::steady_clock::now() >= deadline)
      break;

    // exact budgets: a walk may not overrun the global cap, and segment
    // boundaries land on walk boundaries
    std::uint64_t budget = 0;
    if (cfg_.max_total_steps) budget = cfg_.max_total_steps - stats_.steps;

    WalkResult wr = run_walk(next_seed_++, 0, cfg_, data_, budget, version_);
    ++stats_.walks;
    stats_.steps += wr.steps;
    used += wr.steps;
    if (wr.abandoned) {
      ++stats_.abandoned;
      continue;
    }
    if (auto pair = store_.insert(wr.trail)) {
      if (!handle_collision(*pair, sink)) {
        stopped_ = true;
        break;
      }
    }
  }
  return used;
}

std::uint64_t Engine::run_segment_parallel(std::uint64_t seg_steps,
                                           std::chrono::steady_clock::time_point deadline,
                                           const SolutionSink& sink) {
  std::atomic<bool> stop{false};
  std::atomic<std::uint64_t> seed_counter{next_seed_};
  std::atomic<std::uint64_t> steps{stats_.steps};
  std::atomic<std::uint64_t> slice_used{0};
  std::atomic<std::uint64_t> walks{0}, abandoned{0};
  const std::uint64_t slice_steps = seg_steps;

  SyncQueue<Trail> trails(4096);
  SyncQueue<std::pair<Trail, Trail>> pairs(1024);

  std::exception_ptr resolver_error;
  std::mutex state_mu;  // guards found_/found_set_/stats_ solution fields

  auto walker = [&](std::uint16_t wid) {
    while (!stop.load(std::memory_order_relaxed)) {
      if (slice_steps && slice_used.load(std::memory_order_relaxed) >= slice_steps) break;
      if (cfg_.max_total_steps && steps.load(std::memory_order_relaxed) >= cfg_.max_total_steps)
        break;
      if (deadline != std::chrono::steady_clock::time_point{} &&
          std::chrono::steady_clock::now() >= deadline)
        break;
      std::uint64_t seed = seed_counter.fetch_add(1, std::memory_order_relaxed);
      WalkResult wr = run_walk(seed, wid, cfg_, data_, 0, version_);
      walks.fetch_add(1, std::memory_order_relaxed);
      steps.fetch_add(wr.steps, std::memory_order_relaxed);
      slice_used.fetch_add(wr.steps, std::memory_order_relaxed);
      if (wr.abandoned) {
        abandoned.fetch_add(1, std::memory_order_relaxed);
        continue;
      }
      if (!trails.push(wr.trail)) break;
    }
  };

  std::thread store_thread([&] {
    while (auto t = trails.pop()) {
      auto pair = store_.insert(*t);
      if (pair && !pairs.push(*pair)) break;
    }
    pairs.close();
  });

  std::thread resolver_thread([&] {
    while (auto pair = pairs.pop()) {
      if (stop.load(std::memory_order_relaxed)) continue;  // drain only
      try {
        std::lock_guard<std::mutex> lk(state_mu);
        if (!handle_collision(*pair, sink)) {
          stopped_ = true;
          stop.store(true);
          trails.close();  // unblock walkers stuck on a full queue
        }
      } catch (...) {
        resolver_error = std::current_exception();
        stop.store(true);
        trails.close();
        pairs.close();
        break;
      }
    }
  });

  std::vector<std::thread> walker_threads;
  walker_threads.reserve(static_cast<std::size_t>(cfg_.workers));
  for (int w = 0; w < cfg_.workers; ++w)
    walker_threads.emplace_back(walker, static_cast<std::uint16_t>(w));
  for (auto& t : walker_threads) t.join();
  trails.close();
  store_thread.join();
  resolver_thread.join();

  next_seed_ = seed_counter.load();
  stats_.walks += walks.load();
  stats_.abandoned += abandoned.load();
  stats_.steps = steps.load();
  if (resolver_error) std::rethrow_exception(resolver_error);
  return slice_used.load();
}

}  // namespace propus::collider
