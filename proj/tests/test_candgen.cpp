#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <set>

#include "propus/candgen.hpp"
#include "propus/common.hpp"
#include "propus/sds.hpp"

using namespace propus;
using namespace propus::candgen;
using propus::seqcore::ResidueSubset;

namespace {

const std::filesystem::path kFixtures = PROPUS_FIXTURE_DIR;

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * std::uint64_t(n - k + i) / std::uint64_t(i);
  return r;
}

std::vector<ResidueSubset> collect(int v, int k, bool symmetric) {
  std::vector<ResidueSubset> out;
  enumerate_subsets(v, k, symmetric, [&](const ResidueSubset& x) {
    out.push_back(x);
    return true;
  });
  return out;
}

// Independent generator: walk the full power set bit by bit.
std::vector<ResidueSubset> brute_force(int v, int k, bool symmetric) {
  std::vector<ResidueSubset> out;
  for (std::uint32_t mask = 0; mask < (1u << v); ++mask) {
    if (int(__builtin_popcount(mask)) != k) continue;
    std::vector<int> e;
    for (int j = 0; j < v; ++j)
      if (mask & (1u << j)) e.push_back(j);
    auto x = seqcore::make_subset(v, std::move(e));
    if (symmetric && !seqcore::is_symmetric_subset(x)) continue;
    out.push_back(std::move(x));
  }
  std::sort(out.begin(), out.end(),
            [](const ResidueSubset& a, const ResidueSubset& b) { return a.elements < b.elements; });
  return out;
}

}  // namespace

TEST_CASE("symmetric enumeration counts") {
  CHECK(collect(23, 9, true).size() == 330);    // C(11,4)
  CHECK(binomial(11, 4) == 330);
  CHECK(collect(29, 13, true).size() == 3003);  // C(14,6)
  CHECK(binomial(14, 6) == 3003);
  CHECK(collect(5, 0, false).size() == 1);
  CHECK(collect(5, 0, true).size() == 1);
}

TEST_CASE("pair-count formula over a grid") {
  for (int v : {7, 11, 15}) {
    for (int k = 0; k <= v; ++k) {
      auto got = collect(v, k, true).size();
      std::uint64_t want = binomial((v - 1) / 2, k / 2);
      if (k / 2 > (v - 1) / 2) want = 0;
      CHECK_MESSAGE(got == want, "v=", v, " k=", k);
    }
  }
}

TEST_CASE("enumeration matches brute force for small v") {
  for (int v : {5, 9, 13}) {
    for (int k : {0, 1, 2, 3, v / 2, v - 1}) {
      for (bool symmetric : {false, true}) {
        auto a = collect(v, k, symmetric);
        auto b = brute_force(v, k, symmetric);
        REQUIRE_MESSAGE(a.size() == b.size(), "v=", v, " k=", k, " sym=", symmetric);
        CHECK(a == b);  // includes lexicographic order
      }
    }
  }
}

TEST_CASE("enumeration is lexicographic") {
  auto xs = collect(23, 9, true);
  for (std::size_t i = 1; i < xs.size(); ++i) CHECK(xs[i - 1].elements < xs[i].elements);
}

TEST_CASE("infeasible specs yield empty streams") {
  CHECK(collect(7, 9, false).empty());  // k > v
  CHECK(collect(5, 7, true).empty());
  CHECK(collect(7, 7, true).size() == 1);              // the full set is symmetric
  CHECK(collect(5, 4, true).size() == binomial(2, 2));  // both pairs, no 0
  CHECK(collect(5, 5, true).size() == binomial(2, 2));  // {0} + both pairs
}

TEST_CASE("psd filter never rejects published solution blocks") {
  for (const char* name : {"sds_v23.txt", "sds_v29.txt", "sds_v43.txt"}) {
    for (const auto& rec : sds::read_solution_file(kFixtures / name)) {
      auto q = sds::canonicalize(rec);
      double v4 = 4.0 * rec.v;
      CHECK(psd_filter(q.a, v4));
      CHECK(psd_filter(q.d, v4));
      CHECK(psd_filter(q.b, 2.0 * rec.v));
    }
  }
}

TEST_CASE("psd filter accepts the full set (zero spectrum)") {
  // all entries -1: psd vanishes at nonzero frequencies
  CHECK(psd_filter(ResidueSubset{5, {0, 1, 2, 3, 4}}, 1.0));
}

TEST_CASE("emitted files are line-aligned") {
  namespace fs = std::filesystem;
  auto dir = fs::temp_directory_path() / "propus_candgen_emit";
  fs::create_directories(dir);

  CandidateFileSpec spec{11, 4, false, 30.0};
  auto stats = emit_files(spec, dir / "c11");
  CHECK(stats.kept + stats.rejected == binomial(11, 4));
  CHECK(stats.kept > 0);

  auto sf = seqcore::read_subset_file(stats.subset_path);
  auto pf = seqcore::read_paf_file(stats.paf_path);
  REQUIRE(sf.subsets.size() == stats.kept);
  REQUIRE(pf.lines.size() == stats.kept);
  CHECK(pf.n == 5);
  for (std::size_t i = 0; i < sf.subsets.size(); ++i) {
    CHECK(seqcore::paf_vector(sf.subsets[i], seqcore::PafForm::indicator).values == pf.lines[i]);
    CHECK(psd_filter(sf.subsets[i], spec.psd_bound));
  }
  fs::remove_all(dir);
}

TEST_CASE("bucket split partitions by lead") {
  namespace fs = std::filesystem;
  auto dir = fs::temp_directory_path() / "propus_candgen_bucket";
  fs::create_directories(dir);

  // {0,1,2} and its translate share PAF (2,1,0); {0,1,3} has PAF (1,1,1)
  seqcore::SubsetFile sf{7, 3, {{7, {0, 1, 2}}, {7, {1, 2, 3}}, {7, {0, 1, 3}}}};
  seqcore::PafFile pf{7, seqcore::PafForm::indicator, 3, {{2, 1, 0}, {2, 1, 0}, {1, 1, 1}}};
  seqcore::write_subset_file(dir / "x.sub", sf);
  seqcore::write_paf_file(dir / "x.paf", pf);

  auto buckets = bucket_split(dir / "x.paf", dir / "x.sub", dir / "x", "D");
  REQUIRE(buckets.size() == 2);
  CHECK(buckets[0].lead == 1);
  CHECK(buckets[0].count == 1);
  CHECK(buckets[1].lead == 2);
  CHECK(buckets[1].count == 2);

  // partition property: concatenated bucket lines equal the input multiset,
  // and each bucket stays aligned with its sibling subset file
  std::multiset<std::vector<int>> all_lines;
  std::uint64_t total = 0;
  for (const auto& b : buckets) {
    auto bp = seqcore::read_paf_file(b.paf_path);
    auto bs = seqcore::read_subset_file(b.subset_path);
    REQUIRE(bp.lines.size() == bs.subsets.size());
    for (std::size_t i = 0; i < bp.lines.size(); ++i) {
      CHECK(bp.lines[i][0] == b.lead);
      CHECK(seqcore::paf_vector(bs.subsets[i], seqcore::PafForm::indicator).values ==
            bp.lines[i]);
      all_lines.insert(bp.lines[i]);
      ++total;
    }
  }
  CHECK(total == 3);
  std::multiset<std::vector<int>> input_lines(pf.lines.begin(), pf.lines.end());
  CHECK(all_lines == input_lines);

  auto rediscovered = discover_buckets(dir / "x", "D");
  REQUIRE(rediscovered.size() == 2);
  CHECK(rediscovered[0].lead == 1);
  CHECK(rediscovered[1].count == 2);

  fs::remove_all(dir);
}

TEST_CASE("bucket split edge cases") {
  namespace fs = std::filesystem;
  auto dir = fs::temp_directory_path() / "propus_candgen_bucket2";
  fs::create_directories(dir);

  // headers only -> no buckets
  seqcore::write_subset_file(dir / "e.sub", {7, 3, {}});
  seqcore::write_paf_file(dir / "e.paf", {7, seqcore::PafForm::indicator, 3, {}});
  CHECK(bucket_split(dir / "e.paf", dir / "e.sub", dir / "e").empty());

  // malformed line reported with its number
  {
    std::ofstream paf(dir / "bad.paf");
    paf << "v=7 form=indicator n=3\n2 1 0\nbogus line\n";
    std::ofstream sub(dir / "bad.sub");
    sub << "v=7 k=3\n0 1 2\n0 1 3\n";
  }
  try {
    bucket_split(dir / "bad.paf", dir / "bad.sub", dir / "bad");
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find(":3") != std::string::npos);
  }

  // misaligned files
  {
    std::ofstream paf(dir / "mis.paf");
    paf << "v=7 form=indicator n=3\n2 1 0\n2 0 1\n";
    std::ofstream sub(dir / "mis.sub");
    sub << "v=7 k=3\n0 1 2\n";
  }
  CHECK_THROWS_AS(bucket_split(dir / "mis.paf", dir / "mis.sub", dir / "mis"), DataError);

  fs::remove_all(dir);
}

TEST_CASE("bucket triples obey the lead identity") {
  auto mk = [](int lead) {
    Bucket b;
    b.lead = lead;
    return b;
  };
  std::vector<Bucket> a = {mk(5), mk(3)}, d = {mk(6), mk(8)}, b = {mk(4), mk(5)};
  auto triples = bucket_triples(a, d, b, 19);
  // 5+6+2*4, 3+6+2*5 and 3+8+2*4 hit 19; the other five combinations miss
  REQUIRE(triples.size() == 3);
  for (const auto& t : triples) CHECK(t.a.lead + t.d.lead + 2 * t.b.lead == 19);
  CHECK(bucket_triples(a, d, b, 100).empty());
}

TEST_CASE("fixture solutions satisfy the lead identity") {
  for (const char* name : {"sds_v23.txt", "sds_v29.txt"}) {
    for (const auto& rec : sds::read_solution_file(kFixtures / name)) {
      auto q = sds::canonicalize(rec);
      int la = seqcore::paf_indicator(q.a, 1);
      int ld = seqcore::paf_indicator(q.d, 1);
      int lb = seqcore::paf_indicator(q.b, 1);
      CHECK(la + ld + 2 * lb == rec.lambda);
    }
  }
}
