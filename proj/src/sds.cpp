#include "propus/sds.hpp"

#include <fstream>
#include <sstream>

#include "propus/common.hpp"

namespace propus::sds {

ParamCheck validate_params(const SdsParams& p) {
  long long counting = 0, feas = 0;
  for (int ki : p.k) {
    counting += 1LL * ki * (ki - 1);
    long long t = p.v - 2LL * ki;
    feas += t * t;
  }
  ParamCheck r;
  r.counting = counting == 1LL * p.lambda * (p.v - 1);
  r.feasibility = feas == 4LL * p.v;
  return r;
}

SdsCheck verify_sds(const std::array<seqcore::ResidueSubset, 4>& blocks, const SdsParams& p) {
  for (int i = 0; i < 4; ++i) {
    if (blocks[static_cast<std::size_t>(i)].v != p.v ||
        blocks[static_cast<std::size_t>(i)].k() != p.k[static_cast<std::size_t>(i)])
      return SdsCheck::cardinality_mismatch;
  }
  int n = seqcore::folded_len(p.v);
  for (int s = 1; s <= n; ++s) {
    int sum = 0;
    for (const auto& x : blocks) sum += seqcore::paf_indicator(x, s);
    if (sum != p.lambda) return SdsCheck::paf_mismatch;
  }
  return SdsCheck::ok;
}

SdsCheck verify_sds(const PropusQuadruple& q, int lambda) {
  SdsParams p{q.v, {q.a.k(), q.b.k(), q.c.k(), q.d.k()}, lambda};
  return verify_sds({q.a, q.b, q.c, q.d}, p);
}

bool propus_check(const PropusQuadruple& q) {
  return seqcore::is_symmetric_subset(q.a) && q.b == q.c;
}

std::string to_string(OrderingTag t) {
  switch (t) {
    case OrderingTag::bcad: return "BCAD";
    case OrderingTag::adbc: return "ADBC";
    case OrderingTag::da_paley: return "DA_PALEY";
  }
  throw std::invalid_argument("bad ordering tag");
}

OrderingTag tag_from_string(const std::string& s) {
  if (s == "BCAD") return OrderingTag::bcad;
  if (s == "ADBC") return OrderingTag::adbc;
  if (s == "DA_PALEY") return OrderingTag::da_paley;
  throw DataError("unknown ordering tag '" + s + "'");
}

PropusQuadruple canonicalize(const SolutionRecord& r) {
  PropusQuadruple q;
  q.v = r.v;
  std::size_t expect = r.tag == OrderingTag::da_paley ? 2 : 4;
  if (r.blocks.size() != expect)
    throw DataError("record with tag " + to_string(r.tag) + " must have " +
                    std::to_string(expect) + " blocks");
  for (const auto& x : r.blocks)
    if (x.v != r.v) throw DataError("block modulus differs from record modulus");

  switch (r.tag) {
    case OrderingTag::bcad:
      q.b = r.blocks[0];
      q.c = r.blocks[1];
      q.a = r.blocks[2];
      q.d = r.blocks[3];
      break;
    case OrderingTag::adbc:
      q.a = r.blocks[0];
      q.d = r.blocks[1];
      q.b = r.blocks[2];
      q.c = r.blocks[3];
      break;
    case OrderingTag::da_paley:
      q.d = r.blocks[0];
      q.a = r.blocks[1];
      q.b = seqcore::quadratic_residues(r.v);
      q.c = q.b;
      break;
  }
  if (!seqcore::is_symmetric_subset(q.a))
    throw DataError("block in A role is not symmetric");
  if (!(q.b == q.c)) throw DataError("blocks in B and C roles differ");
  return q;
}

namespace {

seqcore::ResidueSubset parse_block_line(const std::string& line, int v,
                                        const std::string& where) {
  std::vector<int> vals;
  if (line != "-" && !line.empty()) {
    std::istringstream ss(line);
    int x;
    while (ss >> x) vals.push_back(x);
    if (!ss.eof()) throw DataError("malformed block line at " + where);
  }
  try {
    return seqcore::make_subset(v, std::move(vals));
  } catch (const std::invalid_argument& e) {
    throw DataError(where + ": " + e.what());
  }
}

}  // namespace

std::vector<SolutionRecord> read_solution_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<SolutionRecord> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("tag=", 0) != 0)
      throw DataError(path.string() + ":" + std::to_string(lineno) +
                      ": expected record header");
    SolutionRecord rec;
    std::istringstream hs(line);
    std::string tok;
    std::string tag_s;
    bool have_v = false, have_lambda = false;
    try {
      while (hs >> tok) {
        if (tok.rfind("tag=", 0) == 0) tag_s = tok.substr(4);
        else if (tok.rfind("v=", 0) == 0) { rec.v = std::stoi(tok.substr(2)); have_v = true; }
        else if (tok.rfind("lambda=", 0) == 0) { rec.lambda = std::stoi(tok.substr(7)); have_lambda = true; }
        else throw DataError(path.string() + ":" + std::to_string(lineno) +
                             ": unknown header token '" + tok + "'");
      }
    } catch (const std::invalid_argument&) {
      throw DataError(path.string() + ":" + std::to_string(lineno) + ": bad header integer");
    }
    if (tag_s.empty() || !have_v || !have_lambda)
      throw DataError(path.string() + ":" + std::to_string(lineno) + ": incomplete header");
    rec.tag = tag_from_string(tag_s);
    std::size_t nblocks = rec.tag == OrderingTag::da_paley ? 2 : 4;
    for (std::size_t b = 0; b < nblocks; ++b) {
      if (!std::getline(in, line))
        throw DataError(path.string() + ": truncated record at line " + std::to_string(lineno));
      ++lineno;
      rec.blocks.push_back(parse_block_line(line, rec.v,
                                            path.string() + ":" + std::to_string(lineno)));
    }
    records.push_back(std::move(rec));
  }
  return records;
}

void write_solution_record(std::ostream& os, const SolutionRecord& r) {
  os << "tag=" << to_string(r.tag) << " v=" << r.v << " lambda=" << r.lambda << "\n";
  for (const auto& x : r.blocks) seqcore::write_subset_line(os, x);
  os << "\n";
}

void append_solution(const std::filesystem::path& path, const PropusQuadruple& q, int lambda) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw IoError("cannot append to " + path.string());
  SolutionRecord r{OrderingTag::adbc, q.v, lambda, {q.a, q.d, q.b, q.c}};
  write_solution_record(out, r);
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace propus::sds
