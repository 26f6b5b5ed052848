#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "propus/seqcore.hpp"

namespace propus::candgen {

// One candidate file to generate: all size-k subsets of Z_v (symmetric ones
// only when `symmetric`), kept when their max nonzero-frequency PSD stays
// under psd_bound.
struct CandidateFileSpec {
  int v = 0;
  int k = 0;
  bool symmetric = false;
  double psd_bound = std::numeric_limits<double>::infinity();
};

void validate(const CandidateFileSpec& spec);

// A symmetric subset is {0 if k odd} plus whole negation pairs {j, v-j},
// so size-k symmetric subsets exist iff floor(k/2) <= (v-1)/2 and, for the
// plain case, k <= v.
bool feasible(const CandidateFileSpec& spec);

// max_{s != 0} psd(x, s) <= bound + 1e-6.
bool psd_filter(const seqcore::ResidueSubset& x, double bound);

// Every size-k subset in lexicographic order of element lists; callback
// returns false to stop early. Infeasible specs yield nothing.
void enumerate_subsets(int v, int k, bool symmetric,
                       const std::function<bool(const seqcore::ResidueSubset&)>& fn);

// PSD-filtered stream.
void enumerate_candidates(const CandidateFileSpec& spec,
                          const std::function<bool(const seqcore::ResidueSubset&)>& fn);

struct EmitStats {
  std::uint64_t kept = 0;
  std::uint64_t rejected = 0;
  std::filesystem::path subset_path;
  std::filesystem::path paf_path;
};

// Writes <prefix>.sub and <prefix>.paf, line-aligned, PAFs in folded
// indicator form.
EmitStats emit_files(const CandidateFileSpec& spec, const std::filesystem::path& out_prefix);

// One subfile of a PAF file, keyed by the first folded PAF value.
struct Bucket {
  std::string source;  // informational: "A", "D", "B"
  int lead = 0;
  std::uint64_t count = 0;
  std::filesystem::path paf_path;
  std::filesystem::path subset_path;
};

// Partitions a PAF file (and its aligned subset file) into
// <prefix>.lead<value>.paf / .sub, streaming. Buckets come back sorted by
// lead.
std::vector<Bucket> bucket_split(const std::filesystem::path& paf_path,
                                 const std::filesystem::path& subset_path,
                                 const std::filesystem::path& out_prefix,
                                 const std::string& source = {});

// Rediscovers buckets previously written with `out_prefix`.
std::vector<Bucket> discover_buckets(const std::filesystem::path& out_prefix,
                                     const std::string& source = {});

struct BucketTriple {
  Bucket a, d, b;
};

// All triples with lead_a + lead_d + 2*lead_b == lambda.
std::vector<BucketTriple> bucket_triples(const std::vector<Bucket>& a,
                                         const std::vector<Bucket>& d,
                                         const std::vector<Bucket>& b, int lambda);

}  // namespace propus::candgen
