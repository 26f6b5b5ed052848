#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "propus/sds.hpp"
#include "propus/seqcore.hpp"
#include "propus/sha1.hpp"

namespace propus::collider {

using Digest = Sha1Digest;

// Point in the 3-way matching space: one folded-PAF-length integer vector,
// reachable as either a line-sum from the A and D files or as the lambda
// complement of a B line. Equal vectors across the two families are
// solutions.
using WalkPoint = std::vector<std::int32_t>;

enum class StepFamily : std::uint8_t { ad, b };

struct StepRecord {
  StepFamily family = StepFamily::ad;
  std::uint32_t i = 0;  // A line (family ad)
  std::uint32_t j = 0;  // D line (family ad)
  std::uint32_t k = 0;  // B line (family b)
};

// Completed random walk: replaying from the seed reproduces it exactly.
struct Trail {
  std::uint64_t start_seed = 0;
  std::uint32_t length = 0;
  Digest end_digest{};
  std::uint16_t worker_id = 0;
};

// sha1 is the search digest; toy_sum hashes only the entry total, forcing
// frequent raw digest collisions between unequal vectors (test hook for the
// useless-collision path).
enum class DigestAlgo { sha1, toy_sum };

// One candidate/PAF file pair, flattened for index access.
struct BucketLines {
  int v = 0;
  int k = 0;
  int n = 0;
  std::uint64_t count = 0;
  std::uint64_t distinct_paf = 0;     // translated blocks repeat PAF lines
  std::vector<std::int32_t> paf;      // count * n
  std::vector<std::int32_t> subsets;  // count * k

  std::span<const std::int32_t> paf_row(std::uint64_t i) const {
    return {paf.data() + i * static_cast<std::uint64_t>(n), static_cast<std::size_t>(n)};
  }
  seqcore::ResidueSubset subset_at(std::uint64_t i) const;
};

BucketLines load_bucket_lines(const std::filesystem::path& paf_path,
                              const std::filesystem::path& subset_path);

// Loaded bucket triple under search. The shared_ptrs let a driver reuse one
// loaded file across several triples.
struct BucketTripleData {
  int v = 0;
  int n = 0;
  std::shared_ptr<const BucketLines> a, d, b;
};

BucketTripleData make_triple_data(std::shared_ptr<const BucketLines> a,
                                  std::shared_ptr<const BucketLines> d,
                                  std::shared_ptr<const BucketLines> b);

// Distinguished-point density tuned to the triple. Walks must usually reach
// a distinguished digest before the deterministic walk cycles; the expected
// rho length is ~2.5*sqrt(N) for N the smaller of the two family image
// sizes, dominated in practice by the distinct f_b lines.
int suggest_dp_bits(const BucketTripleData& data);

struct SearchConfig {
  int lambda = 0;
  int dp_bits = 8;
  std::uint32_t max_walk_len = 0;     // 0 -> 20 * 2^dp_bits
  double time_limit = 0.0;            // seconds; 0 = none (driver enforced)
  int workers = 1;                    // 1 = strictly single-threaded
  std::uint64_t seed_base = 1;
  std::uint64_t max_total_steps = 0;  // 0 = unbounded
  DigestAlgo algo = DigestAlgo::sha1;
  std::size_t store_capacity = 1u << 20;
  std::string store_path;             // empty = in-memory only
  // Steps per walk-function version. One fixed function can strand a golden
  // collision behind a distinguished-point-free cycle; rotating the version
  // re-rolls the functional graph. 0 picks 2048 * 2^dp_bits.
  std::uint64_t version_steps = 0;

  std::uint32_t effective_max_walk_len() const {
    return max_walk_len ? max_walk_len : 20u * (1u << dp_bits);
  }
  std::uint64_t effective_version_steps() const {
    return version_steps ? version_steps : 2048ull << dp_bits;
  }
};

// --- walk primitives --------------------------------------------------------

// Element-wise sum of A line i and D line j.
WalkPoint f_ad(const BucketTripleData& data, std::uint64_t i, std::uint64_t j);
// Element-wise lambda - 2 * (B line k).
WalkPoint f_b(const BucketTripleData& data, std::uint64_t k, int lambda);

// Canonical serialization hashed by digest_point: v as LE u16, then each
// entry as LE i16; nonzero function versions append the version as LE u32.
void serialize_point(const WalkPoint& p, int v, std::vector<std::uint8_t>& out);
Digest digest_point(const WalkPoint& p, int v, DigestAlgo algo, std::uint32_t version = 0);

// Bytes 0..7 LE decide the family (even -> ad); bytes 8..11 and 12..15 LE
// pick the line indices mod the bucket sizes.
StepRecord next_step(const Digest& d, std::uint64_t n_a, std::uint64_t n_d, std::uint64_t n_b);

// Leading dp_bits bits of the digest are all zero.
bool is_distinguished(const Digest& d, int dp_bits);

struct WalkResult {
  Trail trail;
  bool abandoned = false;     // hit the length cap or the step budget
  std::uint64_t steps = 0;
};

// Deterministic function of (seed, config, buckets, version). step_budget
// (0 = none) aborts mid-walk, flagged abandoned.
WalkResult run_walk(std::uint64_t seed, std::uint16_t worker_id, const SearchConfig& cfg,
                    const BucketTripleData& data, std::uint64_t step_budget = 0,
                    std::uint32_t version = 0);

// --- trail store -------------------------------------------------------------

// Map end_digest -> latest trail seen, FIFO eviction at capacity. With a
// persist path every accepted insert is appended as a fixed 34-byte record
// (seed LE64, length LE32, digest[20], worker LE16); reopening replays the
// log through the same insert path.
class TrailStore {
 public:
  explicit TrailStore(std::size_t capacity, const std::filesystem::path& persist_path = {});

  // Returns the (stored, incoming) pair when an end-digest collision with a
  // different seed appears; the incoming trail replaces the stored one so
  // later pairs at this endpoint resolve against fresh walks. Repeated
  // seeds are dropped.
  std::optional<std::pair<Trail, Trail>> insert(const Trail& t);

  std::size_t size() const { return map_.size(); }
  std::uint64_t evictions() const { return evictions_; }

  // Drops all trails; with persistence, truncates the log file to match.
  // Used on walk-function rotation: digests from different versions are
  // incomparable.
  void flush();

 private:
  std::optional<std::pair<Trail, Trail>> insert_impl(const Trail& t, bool persist);

  struct DigestHasher {
    std::size_t operator()(const Digest& d) const;
  };
  std::unordered_map<Digest, Trail, DigestHasher> map_;
  std::deque<Digest> order_;
  std::size_t capacity_;
  std::filesystem::path persist_path_;
  std::ofstream persist_;
  std::uint64_t evictions_ = 0;
  bool warned_ = false;
};

void write_trail_record(std::ostream& os, const Trail& t);
std::vector<Trail> read_trail_records(const std::filesystem::path& path);

// --- collision resolution ----------------------------------------------------

struct SolutionTriple {
  std::uint32_t i = 0, j = 0, k = 0;
  auto operator<=>(const SolutionTriple&) const = default;
};

enum class ResolveKind { solution, useless };

struct ResolveResult {
  ResolveKind kind = ResolveKind::useless;
  SolutionTriple triple;
};

// Replays both trails, aligns lengths, walks them in lockstep to the merge
// point, and inspects the two producing steps. Cross-family merges with
// equal vectors are solutions. Throws DataError when honest replay cannot
// reproduce the recorded collision (bucket-file corruption).
ResolveResult resolve_collision(const Trail& ta, const Trail& tb, const SearchConfig& cfg,
                                const BucketTripleData& data, std::uint32_t version = 0);

// Line lookup + full SDS re-verification; never trusts the hash path.
// Throws DataError when the assembled quadruple fails verification.
sds::PropusQuadruple extract_solution(const SolutionTriple& t, const BucketTripleData& data,
                                      int lambda);

// --- search engine -----------------------------------------------------------

struct SearchStats {
  std::uint64_t walks = 0;
  std::uint64_t abandoned = 0;
  std::uint64_t steps = 0;
  std::uint64_t collisions = 0;
  std::uint64_t useless = 0;
  std::uint64_t solutions = 0;
  std::uint64_t evictions = 0;
  std::uint64_t versions = 0;  // function rotations performed
};

// Return false to stop the search.
using SolutionSink = std::function<bool(const SolutionTriple&, const sds::PropusQuadruple&)>;

// Collision search over one bucket triple. Roles per the process topology:
// walkers produce trails, the store detects end-digest collisions, the
// resolver replays and verifies. workers == 1 runs all three roles
// round-robin on the calling thread with a deterministic transcript;
// workers >= 2 spawns that many walker threads plus a store thread and a
// resolver thread.
class Engine {
 public:
  Engine(BucketTripleData data, SearchConfig cfg);

  // Runs until the slice budget (0 = none), the global step budget, the
  // deadline, or a sink stop. Returns false when the engine is done for
  // good (budget exhausted or sink stop), true when more work remains.
  bool run_slice(std::uint64_t slice_steps, std::chrono::steady_clock::time_point deadline,
                 const SolutionSink& sink);

  const SearchStats& stats() const { return stats_; }
  const std::vector<SolutionTriple>& found() const { return found_; }
  std::uint64_t next_seed() const { return next_seed_; }

 private:
  // Segment runners execute at most seg_steps within the current function
  // version and return the steps consumed.
  std::uint64_t run_segment_single(std::uint64_t seg_steps,
                                   std::chrono::steady_clock::time_point deadline,
                                   const SolutionSink& sink);
  std::uint64_t run_segment_parallel(std::uint64_t seg_steps,
                                     std::chrono::steady_clock::time_point deadline,
                                     const SolutionSink& sink);
  // Returns false when the sink asked to stop.
  bool handle_collision(const std::pair<Trail, Trail>& pair, const SolutionSink& sink);

  BucketTripleData data_;
  SearchConfig cfg_;
  TrailStore store_;
  SearchStats stats_;
  std::vector<SolutionTriple> found_;
  std::set<SolutionTriple> found_set_;
  std::uint64_t next_seed_;
  std::uint32_t version_ = 0;
  std::uint64_t version_steps_used_ = 0;
  bool stopped_ = false;
};

}  // namespace propus::collider
