#include "propus/candgen.hpp"

#include <algorithm>
#include <complex>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>

#include "propus/common.hpp"

namespace propus::candgen {

namespace {

// Root-of-unity table reused across candidates of the same modulus; the
// enumeration loops call psd_filter millions of times.
struct PsdEvaluator {
  int v = 0;
  std::vector<std::complex<double>> omega;

  void prepare(int new_v) {
    if (v == new_v) return;
    v = new_v;
    omega.resize(static_cast<std::size_t>(v));
    for (int t = 0; t < v; ++t)
      omega[static_cast<std::size_t>(t)] =
          std::polar(1.0, 2.0 * std::numbers::pi * t / v);
  }

  // max over s in 1..v-1; aborts early past the bound.
  bool within_bound(const seqcore::ResidueSubset& x, double bound) const {
    const double limit = bound + 1e-6;
    for (int s = 1; s <= (v - 1) / 2; ++s) {  // psd(s) == psd(v-s)
      std::complex<double> acc{0.0, 0.0};
      int t = 0;
      std::size_t next = 0;
      for (int j = 0; j < v; ++j) {
        double e = 1.0;
        if (next < x.elements.size() && x.elements[next] == j) {
          e = -1.0;
          ++next;
        }
        acc += e * omega[static_cast<std::size_t>(t)];
        t += s;
        if (t >= v) t -= v;
      }
      if (std::norm(acc) > limit) return false;
    }
    return true;
  }
};

thread_local PsdEvaluator tl_psd;

int pair_count(int k) { return k / 2; }

}  // namespace

void validate(const CandidateFileSpec& spec) {
  if (spec.v < 1 || spec.v % 2 == 0)
    throw std::invalid_argument("modulus must be odd and positive");
  if (spec.k < 0) throw std::invalid_argument("cardinality must be nonnegative");
  if (!(spec.psd_bound > 0))
    throw std::invalid_argument("psd bound must be positive");
}

bool feasible(const CandidateFileSpec& spec) {
  if (spec.k > spec.v) return false;
  if (spec.symmetric && pair_count(spec.k) > (spec.v - 1) / 2) return false;
  return true;
}

bool psd_filter(const seqcore::ResidueSubset& x, double bound) {
  if (!(bound > 0)) throw std::invalid_argument("psd bound must be positive");
  seqcore::validate(x);
  tl_psd.prepare(x.v);
  return tl_psd.within_bound(x, bound);
}

namespace {

// Lexicographic k-combinations of {0..m-1} via callback.
bool for_each_combination(int m, int k, const std::function<bool(const std::vector<int>&)>& fn) {
  if (k > m || k < 0) return true;
  std::vector<int> c(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = i;
  while (true) {
    if (!fn(c)) return false;
    int i = k - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == m - (k - i)) --i;
    if (i < 0) return true;
    ++c[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace

void enumerate_subsets(int v, int k, bool symmetric,
                       const std::function<bool(const seqcore::ResidueSubset&)>& fn) {
  CandidateFileSpec spec{v, k, symmetric, std::numeric_limits<double>::infinity()};
  validate(spec);
  if (!feasible(spec)) {
    std::cerr << "warning: no size-" << k << (symmetric ? " symmetric" : "")
              << " subsets of Z_" << v << "; empty enumeration\n";
    return;
  }
  if (!symmetric) {
    for_each_combination(v, k, [&](const std::vector<int>& c) {
      return fn(seqcore::ResidueSubset{v, c});
    });
    return;
  }

  // Symmetric: {0} forced in iff k odd, plus floor(k/2) negation pairs
  // {j, v-j}, 1 <= j <= (v-1)/2. Lexicographic order over the pair choices
  // equals lexicographic order of the element lists.
  const int m = (v - 1) / 2;
  const bool with_zero = k % 2 == 1;
  seqcore::ResidueSubset x;
  x.v = v;
  for_each_combination(m, pair_count(k), [&](const std::vector<int>& c) {
    x.elements.clear();
    if (with_zero) x.elements.push_back(0);
    for (int idx : c) x.elements.push_back(idx + 1);
    for (auto it = c.rbegin(); it != c.rend(); ++it) x.elements.push_back(v - (*it + 1));
    return fn(x);
  });
}

void enumerate_candidates(const CandidateFileSpec& spec,
                          const std::function<bool(const seqcore::ResidueSubset&)>& fn) {
  validate(spec);
  enumerate_subsets(spec.v, spec.k, spec.symmetric, [&](const seqcore::ResidueSubset& x) {
    if (!psd_filter(x, spec.psd_bound)) return true;
    return fn(x);
  });
}

EmitStats emit_files(const CandidateFileSpec& spec, const std::filesystem::path& out_prefix) {
  validate(spec);
  EmitStats stats;
  stats.subset_path = out_prefix;
  stats.subset_path += ".sub";
  stats.paf_path = out_prefix;
  stats.paf_path += ".paf";

  std::ofstream subs(stats.subset_path);
  if (!subs) throw IoError("cannot write " + stats.subset_path.string());
  std::ofstream pafs(stats.paf_path);
  if (!pafs) throw IoError("cannot write " + stats.paf_path.string());

  seqcore::write_subset_header(subs, spec.v, spec.k);
  seqcore::write_paf_header(pafs, spec.v, seqcore::PafForm::indicator,
                            seqcore::folded_len(spec.v));

  enumerate_subsets(spec.v, spec.k, spec.symmetric, [&](const seqcore::ResidueSubset& x) {
    if (!psd_filter(x, spec.psd_bound)) {
      ++stats.rejected;
      return true;
    }
    ++stats.kept;
    seqcore::write_subset_line(subs, x);
    seqcore::write_paf_line(pafs, seqcore::paf_vector(x, seqcore::PafForm::indicator).values);
    return true;
  });
  if (!subs || !pafs) throw IoError("write failed under prefix " + out_prefix.string());
  return stats;
}

namespace {

std::filesystem::path bucket_path(const std::filesystem::path& prefix, int lead,
                                  const char* ext) {
  std::filesystem::path p = prefix;
  p += ".lead" + std::to_string(lead) + ext;
  return p;
}

}  // namespace

std::vector<Bucket> bucket_split(const std::filesystem::path& paf_path,
                                 const std::filesystem::path& subset_path,
                                 const std::filesystem::path& out_prefix,
                                 const std::string& source) {
  std::ifstream pafs(paf_path);
  if (!pafs) throw IoError("cannot open " + paf_path.string());
  std::ifstream subs(subset_path);
  if (!subs) throw IoError("cannot open " + subset_path.string());

  std::string paf_header, sub_header;
  if (!std::getline(pafs, paf_header) || !std::getline(subs, sub_header))
    throw DataError("missing header in bucket input files");

  struct Out {
    std::ofstream paf, sub;
    std::uint64_t count = 0;
  };
  std::map<int, Out> outs;

  // Lockstep over content lines; blank lines are ignored in both inputs so
  // alignment is by content position.
  auto next_content = [](std::ifstream& in, std::string& line, std::size_t& no) {
    while (std::getline(in, line)) {
      ++no;
      if (!line.empty()) return true;
    }
    return false;
  };

  std::string paf_line, sub_line;
  std::size_t lineno = 1, sub_lineno = 1;
  while (next_content(pafs, paf_line, lineno)) {
    if (!next_content(subs, sub_line, sub_lineno))
      throw DataError(subset_path.string() + ": fewer lines than " + paf_path.string());
    int lead = 0;
    if (paf_line == "-") {
      throw DataError(paf_path.string() + ":" + std::to_string(lineno) +
                      ": cannot bucket zero-length PAF lines");
    }
    try {
      std::size_t used = 0;
      lead = std::stoi(paf_line, &used);
      if (used == 0) throw std::invalid_argument("empty");
    } catch (const std::exception&) {
      throw DataError(paf_path.string() + ":" + std::to_string(lineno) + ": malformed line");
    }
    auto it = outs.find(lead);
    if (it == outs.end()) {
      it = outs.emplace(lead, Out{}).first;
      auto pp = bucket_path(out_prefix, lead, ".paf");
      auto sp = bucket_path(out_prefix, lead, ".sub");
      it->second.paf.open(pp);
      it->second.sub.open(sp);
      if (!it->second.paf || !it->second.sub)
        throw IoError("cannot write bucket files under " + out_prefix.string());
      it->second.paf << paf_header << "\n";
      it->second.sub << sub_header << "\n";
    }
    it->second.paf << paf_line << "\n";
    it->second.sub << sub_line << "\n";
    ++it->second.count;
  }
  if (next_content(subs, sub_line, sub_lineno))
    throw DataError(subset_path.string() + ": more lines than " + paf_path.string());

  std::vector<Bucket> buckets;
  for (auto& [lead, out] : outs) {
    if (!out.paf || !out.sub) throw IoError("bucket write failed under " + out_prefix.string());
    buckets.push_back(Bucket{source, lead, out.count, bucket_path(out_prefix, lead, ".paf"),
                             bucket_path(out_prefix, lead, ".sub")});
  }
  return buckets;
}

std::vector<Bucket> discover_buckets(const std::filesystem::path& out_prefix,
                                     const std::string& source) {
  std::vector<Bucket> buckets;
  auto dir = out_prefix.parent_path();
  if (dir.empty()) dir = ".";
  std::string stem = out_prefix.filename().string() + ".lead";
  if (!std::filesystem::is_directory(dir)) return buckets;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string name = entry.path().filename().string();
    if (name.rfind(stem, 0) != 0 || name.size() < stem.size() + 5) continue;
    if (name.substr(name.size() - 4) != ".paf") continue;
    std::string mid = name.substr(stem.size(), name.size() - stem.size() - 4);
    int lead;
    try {
      std::size_t used = 0;
      lead = std::stoi(mid, &used);
      if (used != mid.size()) continue;
    } catch (const std::exception&) {
      continue;
    }
    std::filesystem::path sub = entry.path();
    sub.replace_extension(".sub");
    if (!std::filesystem::exists(sub)) continue;
    // count data lines
    std::ifstream in(entry.path());
    std::string line;
    std::uint64_t count = 0;
    bool first = true;
    while (std::getline(in, line)) {
      if (first) {
        first = false;
        continue;
      }
      if (!line.empty()) ++count;
    }
    buckets.push_back(Bucket{source, lead, count, entry.path(), sub});
  }
  std::sort(buckets.begin(), buckets.end(),
            [](const Bucket& x, const Bucket& y) { return x.lead < y.lead; });
  return buckets;
}

std::vector<BucketTriple> bucket_triples(const std::vector<Bucket>& a,
                                         const std::vector<Bucket>& d,
                                         const std::vector<Bucket>& b, int lambda) {
  std::vector<BucketTriple> out;
  for (const auto& ba : a)
    for (const auto& bd : d)
      for (const auto& bb : b)
        if (ba.lead + bd.lead + 2 * bb.lead == lambda) out.push_back({ba, bd, bb});
  return out;
}

}  // namespace propus::candgen
