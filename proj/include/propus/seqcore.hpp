#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

namespace propus::seqcore {

// Subset of Z_v; elements strictly increasing in [0, v). v odd throughout.
struct ResidueSubset {
  int v = 0;
  std::vector<int> elements;

  int k() const { return static_cast<int>(elements.size()); }
  bool contains(int e) const;
  bool operator==(const ResidueSubset&) const = default;
};

// +-1 sequence of length v. -1 entries mark subset membership.
struct PmSequence {
  int v = 0;
  std::vector<int> entries;
};

enum class PafForm { indicator, pm };

// Folded periodic autocorrelation profile, shifts 1..(v-1)/2.
// PAF(s) == PAF(v-s), so the folded half carries everything.
struct PafVector {
  int v = 0;
  PafForm form = PafForm::indicator;
  std::vector<int> values;
};

// (v-1)/2 for odd v.
int folded_len(int v);

// Throws std::invalid_argument on malformed subsets.
void validate(const ResidueSubset& x);

// Sorts, validates, returns.
ResidueSubset make_subset(int v, std::vector<int> elements);

PmSequence subset_to_pm_sequence(const ResidueSubset& x);
ResidueSubset pm_sequence_to_subset(const PmSequence& s);

// X == -X (mod v) as sets; equivalently the circulant of X is symmetric.
bool is_symmetric_subset(const ResidueSubset& x);

// |X n (X+s)| for 1 <= s <= v-1.
int paf_indicator(const ResidueSubset& x, int shift);

// sum_j x_j * x_{(j+s) mod v}. Identity: paf_pm = v - 4*(k - paf_indicator).
int paf_pm(const PmSequence& x, int shift);

PafVector paf_vector(const ResidueSubset& x, PafForm form);

// |sum_j x_j w^{j*s}|^2 with w = exp(2*pi*i/v), 0 <= s < v.
double psd(const PmSequence& x, int freq);

// {j^2 mod p : 1 <= j < p} for odd prime p. A (p,(p-1)/2,(p-3)/4)
// difference set when p = 3 (mod 4).
ResidueSubset quadratic_residues(int p);

// --- text formats ---------------------------------------------------------
// Subset file:  header "v=<int> k=<int>", then one subset per line as
// space-separated increasing integers; a lone "-" denotes the empty subset.
// PAF file:     header "v=<int> form=<indicator|pm> n=<int>", then one line
// of n integers per candidate, line-aligned with the sibling subset file.

struct SubsetFile {
  int v = 0;
  int k = 0;
  std::vector<ResidueSubset> subsets;
};

struct PafFile {
  int v = 0;
  PafForm form = PafForm::indicator;
  int n = 0;
  std::vector<std::vector<int>> lines;
};

void write_subset_header(std::ostream& os, int v, int k);
void write_subset_line(std::ostream& os, const ResidueSubset& x);
void write_paf_header(std::ostream& os, int v, PafForm form, int n);
void write_paf_line(std::ostream& os, const std::vector<int>& values);

SubsetFile read_subset_file(const std::filesystem::path& path);
PafFile read_paf_file(const std::filesystem::path& path);
void write_subset_file(const std::filesystem::path& path, const SubsetFile& f);
void write_paf_file(const std::filesystem::path& path, const PafFile& f);

}  // namespace propus::seqcore
