#pragma once

// Test-only helper: micro search instances with one known (planted) solution,
// built from the first published v=23 solution plus lead-matched decoy
// candidates.

#include <algorithm>
#include <filesystem>
#include <memory>
#include <vector>

#include "propus/candgen.hpp"
#include "propus/collider.hpp"
#include "propus/sds.hpp"
#include "propus/seqcore.hpp"

namespace propus_test {

using propus::seqcore::ResidueSubset;

inline propus::collider::BucketLines to_bucket_lines(int v, int k,
                                                     const std::vector<ResidueSubset>& subs) {
  propus::collider::BucketLines bl;
  bl.v = v;
  bl.k = k;
  bl.n = propus::seqcore::folded_len(v);
  bl.count = subs.size();
  std::vector<std::vector<int>> rows;
  for (const auto& s : subs) {
    auto paf = propus::seqcore::paf_vector(s, propus::seqcore::PafForm::indicator).values;
    bl.paf.insert(bl.paf.end(), paf.begin(), paf.end());
    bl.subsets.insert(bl.subsets.end(), s.elements.begin(), s.elements.end());
    rows.push_back(std::move(paf));
  }
  std::sort(rows.begin(), rows.end());
  bl.distinct_paf = std::unique(rows.begin(), rows.end()) - rows.begin();
  return bl;
}

struct PlantedInstance {
  propus::collider::BucketTripleData data;
  propus::collider::SolutionTriple triple;
  int lambda = 0;
  std::vector<ResidueSubset> a_subs, d_subs, b_subs;
};

// Collects the planted block plus decoys of the same cardinality and lead
// value, in lexicographic order, capped at per_bucket lines.
inline std::vector<ResidueSubset> gather_bucket(int v, int k, bool symmetric,
                                                const ResidueSubset& planted,
                                                std::size_t per_bucket) {
  int lead = propus::seqcore::paf_indicator(planted, 1);
  std::vector<ResidueSubset> out{planted};
  propus::candgen::enumerate_subsets(v, k, symmetric, [&](const ResidueSubset& x) {
    if (out.size() >= per_bucket) return false;
    if (propus::seqcore::paf_indicator(x, 1) == lead && !(x == planted)) out.push_back(x);
    return true;
  });
  std::sort(out.begin(), out.end(), [](const ResidueSubset& a, const ResidueSubset& b) {
    return a.elements < b.elements;
  });
  return out;
}

inline PlantedInstance make_planted(const std::filesystem::path& fixture_file,
                                    std::size_t record_index, std::size_t per_bucket) {
  auto recs = propus::sds::read_solution_file(fixture_file);
  const auto& rec = recs.at(record_index);
  auto q = propus::sds::canonicalize(rec);
  int v = q.v;

  PlantedInstance inst;
  inst.lambda = rec.lambda;
  inst.a_subs = gather_bucket(v, q.a.k(), true, q.a, per_bucket);
  inst.d_subs = gather_bucket(v, q.d.k(), false, q.d, per_bucket);
  inst.b_subs = gather_bucket(v, q.b.k(), false, q.b, per_bucket);

  auto index_of = [](const std::vector<ResidueSubset>& subs, const ResidueSubset& x) {
    return std::uint32_t(std::find(subs.begin(), subs.end(), x) - subs.begin());
  };
  inst.triple = {index_of(inst.a_subs, q.a), index_of(inst.d_subs, q.d),
                 index_of(inst.b_subs, q.b)};

  inst.data = propus::collider::make_triple_data(
      std::make_shared<const propus::collider::BucketLines>(to_bucket_lines(v, q.a.k(), inst.a_subs)),
      std::make_shared<const propus::collider::BucketLines>(to_bucket_lines(v, q.d.k(), inst.d_subs)),
      std::make_shared<const propus::collider::BucketLines>(to_bucket_lines(v, q.b.k(), inst.b_subs)));
  return inst;
}

inline PlantedInstance make_planted_v23(const std::filesystem::path& fixtures,
                                        std::size_t per_bucket) {
  return make_planted(fixtures / "sds_v23.txt", 0, per_bucket);
}

// Writes the instance as bucket files for CLI-level runs; returns the three
// .paf paths (siblings get .sub).
inline std::array<std::filesystem::path, 3> write_planted_buckets(
    const PlantedInstance& inst, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  auto write_one = [&](const std::vector<ResidueSubset>& subs, int k, const char* stem) {
    propus::seqcore::SubsetFile sf{23, k, subs};
    propus::seqcore::PafFile pf{23, propus::seqcore::PafForm::indicator, 11, {}};
    for (const auto& s : subs)
      pf.lines.push_back(
          propus::seqcore::paf_vector(s, propus::seqcore::PafForm::indicator).values);
    fs::path sub = dir / (std::string(stem) + ".sub");
    fs::path paf = dir / (std::string(stem) + ".paf");
    propus::seqcore::write_subset_file(sub, sf);
    propus::seqcore::write_paf_file(paf, pf);
    return paf;
  };
  return {write_one(inst.a_subs, 9, "pa"), write_one(inst.d_subs, 8, "pd"),
          write_one(inst.b_subs, 10, "pb")};
}

}  // namespace propus_test
