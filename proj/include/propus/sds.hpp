#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "propus/seqcore.hpp"

namespace propus::sds {

// Parameter tuple (v; k1,k2,k3,k4; lambda).
struct SdsParams {
  int v = 0;
  std::array<int, 4> k{};
  int lambda = 0;
};

struct ParamCheck {
  bool counting = false;     // sum k_i(k_i - 1) == lambda * (v - 1)
  bool feasibility = false;  // sum (v - 2 k_i)^2 == 4 v
  bool ok() const { return counting && feasibility; }
  explicit operator bool() const { return ok(); }
};

ParamCheck validate_params(const SdsParams& p);

// Four blocks with GP-array roles: A symmetric, B == C.
struct PropusQuadruple {
  int v = 0;
  seqcore::ResidueSubset a, b, c, d;
};

enum class SdsCheck { ok, cardinality_mismatch, paf_mismatch };

// True SDS iff the indicator PAFs of the four blocks sum to lambda at every
// nonzero shift (folded range suffices).
SdsCheck verify_sds(const std::array<seqcore::ResidueSubset, 4>& blocks, const SdsParams& p);
SdsCheck verify_sds(const PropusQuadruple& q, int lambda);

bool propus_check(const PropusQuadruple& q);

// Block orderings used by published solution listings.
enum class OrderingTag { bcad, adbc, da_paley };

std::string to_string(OrderingTag t);
OrderingTag tag_from_string(const std::string& s);

// One solution as listed: blocks in listing order, roles fixed by the tag.
// da_paley records carry [D, A] and take B = C = quadratic_residues(v).
struct SolutionRecord {
  OrderingTag tag = OrderingTag::adbc;
  int v = 0;
  int lambda = 0;
  std::vector<seqcore::ResidueSubset> blocks;
};

// Reorders blocks into roles (A,B,C,D); throws DataError when the blocks are
// inconsistent with the tag (claimed-symmetric A fails symmetry, or B != C).
PropusQuadruple canonicalize(const SolutionRecord& r);

// Solution/fixture file: records of the form
//   tag=<BCAD|ADBC|DA_PALEY> v=<int> lambda=<int>
// followed by one block line each (4 lines; 2 for DA_PALEY), space-separated
// integers, "-" for an empty block. '#' lines and blank lines between
// records are ignored.
std::vector<SolutionRecord> read_solution_file(const std::filesystem::path& path);
void write_solution_record(std::ostream& os, const SolutionRecord& r);
void append_solution(const std::filesystem::path& path, const PropusQuadruple& q, int lambda);

}  // namespace propus::sds
