#include "propus/seqcore.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "propus/common.hpp"

namespace propus::seqcore {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

std::vector<int> parse_int_line(const std::string& line, const std::string& where) {
  std::vector<int> out;
  if (line == "-") return out;  // empty-subset placeholder
  std::istringstream ss(line);
  int x;
  while (ss >> x) out.push_back(x);
  if (!ss.eof()) throw DataError("malformed integer line at " + where);
  return out;
}

}  // namespace

bool ResidueSubset::contains(int e) const {
  return std::binary_search(elements.begin(), elements.end(), e);
}

int folded_len(int v) {
  require(v >= 1 && v % 2 == 1, "modulus must be odd and positive");
  return (v - 1) / 2;
}

void validate(const ResidueSubset& x) {
  require(x.v >= 1 && x.v % 2 == 1, "modulus must be odd and positive");
  int prev = -1;
  for (int e : x.elements) {
    require(e > prev, "elements must be strictly increasing");
    require(e >= 0 && e < x.v, "element out of range [0, v)");
    prev = e;
  }
}

ResidueSubset make_subset(int v, std::vector<int> elements) {
  std::sort(elements.begin(), elements.end());
  ResidueSubset x{v, std::move(elements)};
  validate(x);
  return x;
}

PmSequence subset_to_pm_sequence(const ResidueSubset& x) {
  validate(x);
  PmSequence s{x.v, std::vector<int>(static_cast<std::size_t>(x.v), 1)};
  for (int e : x.elements) s.entries[static_cast<std::size_t>(e)] = -1;
  return s;
}

ResidueSubset pm_sequence_to_subset(const PmSequence& s) {
  ResidueSubset x;
  x.v = s.v;
  for (int j = 0; j < s.v; ++j) {
    int e = s.entries[static_cast<std::size_t>(j)];
    require(e == 1 || e == -1, "sequence entries must be +1 or -1");
    if (e == -1) x.elements.push_back(j);
  }
  validate(x);
  return x;
}

bool is_symmetric_subset(const ResidueSubset& x) {
  validate(x);
  for (int e : x.elements)
    if (!x.contains((x.v - e) % x.v)) return false;
  return true;
}

int paf_indicator(const ResidueSubset& x, int shift) {
  validate(x);
  require(shift >= 1 && shift <= x.v - 1, "shift must be in 1..v-1");
  int count = 0;
  for (int e : x.elements)
    if (x.contains((e + shift) % x.v)) ++count;
  return count;
}

int paf_pm(const PmSequence& x, int shift) {
  require(x.v >= 1 && static_cast<int>(x.entries.size()) == x.v, "bad sequence");
  require(shift >= 1 && shift <= x.v - 1, "shift must be in 1..v-1");
  int acc = 0;
  for (int j = 0; j < x.v; ++j)
    acc += x.entries[static_cast<std::size_t>(j)] *
           x.entries[static_cast<std::size_t>((j + shift) % x.v)];
  return acc;
}

PafVector paf_vector(const ResidueSubset& x, PafForm form) {
  validate(x);
  int n = folded_len(x.v);
  PafVector out{x.v, form, {}};
  out.values.reserve(static_cast<std::size_t>(n));
  if (form == PafForm::indicator) {
    for (int s = 1; s <= n; ++s) out.values.push_back(paf_indicator(x, s));
  } else {
    PmSequence seq = subset_to_pm_sequence(x);
    for (int s = 1; s <= n; ++s) out.values.push_back(paf_pm(seq, s));
  }
  return out;
}

double psd(const PmSequence& x, int freq) {
  require(x.v >= 1 && static_cast<int>(x.entries.size()) == x.v, "bad sequence");
  require(freq >= 0 && freq < x.v, "frequency must be in 0..v-1");
  std::complex<double> acc{0.0, 0.0};
  const double w = 2.0 * std::numbers::pi * freq / x.v;
  for (int j = 0; j < x.v; ++j)
    acc += double(x.entries[static_cast<std::size_t>(j)]) *
           std::polar(1.0, w * j);
  return std::norm(acc);
}

ResidueSubset quadratic_residues(int p) {
  require(p >= 3 && p % 2 == 1, "p must be an odd prime");
  for (int d = 3; 1LL * d * d <= p; d += 2)
    require(p % d != 0, "p must be an odd prime");
  std::vector<char> seen(static_cast<std::size_t>(p), 0);
  for (long long j = 1; j < p; ++j) seen[static_cast<std::size_t>((j * j) % p)] = 1;
  ResidueSubset x;
  x.v = p;
  for (int r = 0; r < p; ++r)
    if (seen[static_cast<std::size_t>(r)]) x.elements.push_back(r);
  return x;
}

// --- text formats -----------------------------------------------------------

void write_subset_header(std::ostream& os, int v, int k) {
  os << "v=" << v << " k=" << k << "\n";
}

void write_subset_line(std::ostream& os, const ResidueSubset& x) {
  if (x.elements.empty()) {
    os << "-\n";
    return;
  }
  for (std::size_t i = 0; i < x.elements.size(); ++i) {
    if (i) os << ' ';
    os << x.elements[i];
  }
  os << "\n";
}

void write_paf_header(std::ostream& os, int v, PafForm form, int n) {
  os << "v=" << v << " form=" << (form == PafForm::indicator ? "indicator" : "pm")
     << " n=" << n << "\n";
}

void write_paf_line(std::ostream& os, const std::vector<int>& values) {
  if (values.empty()) {
    os << "-\n";
    return;
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os << ' ';
    os << values[i];
  }
  os << "\n";
}

namespace {

// Parses "key=value" tokens from a header line.
std::string header_field(const std::string& line, const std::string& key,
                         const std::string& path) {
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) {
    if (tok.rfind(key + "=", 0) == 0) return tok.substr(key.size() + 1);
  }
  throw DataError(path + ": missing header field '" + key + "'");
}

int header_int(const std::string& line, const std::string& key, const std::string& path) {
  try {
    return std::stoi(header_field(line, key, path));
  } catch (const std::exception&) {
    throw DataError(path + ": bad integer for header field '" + key + "'");
  }
}

}  // namespace

SubsetFile read_subset_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw DataError(path.string() + ": empty file");
  SubsetFile f;
  f.v = header_int(line, "v", path.string());
  f.k = header_int(line, "k", path.string());
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto vals = parse_int_line(line, path.string() + ":" + std::to_string(lineno));
    auto x = make_subset(f.v, std::move(vals));
    if (x.k() != f.k)
      throw DataError(path.string() + ":" + std::to_string(lineno) +
                      ": subset cardinality does not match header");
    f.subsets.push_back(std::move(x));
  }
  return f;
}

PafFile read_paf_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw DataError(path.string() + ": empty file");
  PafFile f;
  f.v = header_int(line, "v", path.string());
  f.n = header_int(line, "n", path.string());
  std::string form = header_field(line, "form", path.string());
  if (form == "indicator")
    f.form = PafForm::indicator;
  else if (form == "pm")
    f.form = PafForm::pm;
  else
    throw DataError(path.string() + ": unknown PAF form '" + form + "'");
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto vals = parse_int_line(line, path.string() + ":" + std::to_string(lineno));
    if (static_cast<int>(vals.size()) != f.n)
      throw DataError(path.string() + ":" + std::to_string(lineno) +
                      ": expected " + std::to_string(f.n) + " values");
    f.lines.push_back(std::move(vals));
  }
  return f;
}

void write_subset_file(const std::filesystem::path& path, const SubsetFile& f) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  write_subset_header(out, f.v, f.k);
  for (const auto& x : f.subsets) write_subset_line(out, x);
  if (!out) throw IoError("write failed: " + path.string());
}

void write_paf_file(const std::filesystem::path& path, const PafFile& f) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  write_paf_header(out, f.v, f.form, f.n);
  for (const auto& l : f.lines) write_paf_line(out, l);
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace propus::seqcore
