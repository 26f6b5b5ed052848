// Command-line front end for the propus toolkit: candidate enumeration,
// bucket preprocessing, collision search, SDS verification, GP assembly and
// rendering.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "propus/candgen.hpp"
#include "propus/collider.hpp"
#include "propus/common.hpp"
#include "propus/gparray.hpp"
#include "propus/sds.hpp"
#include "propus/seqcore.hpp"

namespace {

namespace fs = std::filesystem;
using namespace propus;
using Clock = std::chrono::steady_clock;

constexpr int kExitOk = 0;
constexpr int kExitNoResult = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitData = 4;

// ---------------------------------------------------------------- enumerate

struct EnumerateArgs {
  int v = 0;
  int k = 0;
  bool symmetric = false;
  double psd_bound = std::numeric_limits<double>::infinity();
  std::string out_prefix;
};

int cmd_enumerate(const EnumerateArgs& a) {
  candgen::CandidateFileSpec spec{a.v, a.k, a.symmetric, a.psd_bound};
  std::string prefix = a.out_prefix;
  if (prefix.empty()) {
    prefix = "cand-v" + std::to_string(a.v) + "-k" + std::to_string(a.k);
    if (a.symmetric) prefix += "-sym";
  }
  auto stats = candgen::emit_files(spec, prefix);
  std::uint64_t total = stats.kept + stats.rejected;
  std::cout << "wrote " << stats.kept << " candidates to " << stats.subset_path.string()
            << " (PAFs in " << stats.paf_path.string() << ")\n";
  std::cout << "psd filter rejected " << stats.rejected << " of " << total;
  if (total > 0)
    std::cout << " (" << std::fixed << std::setprecision(2)
              << 100.0 * double(stats.rejected) / double(total) << "%)";
  std::cout << "\n";
  return kExitOk;
}

// ------------------------------------------------------------------- bucket

struct BucketArgs {
  std::string paf, subsets, out_prefix, source;
};

int cmd_bucket(const BucketArgs& a) {
  auto buckets = candgen::bucket_split(a.paf, a.subsets, a.out_prefix, a.source);
  std::uint64_t total = 0;
  for (const auto& b : buckets) {
    std::cout << "lead=" << b.lead << " lines=" << b.count << " -> "
              << b.paf_path.string() << "\n";
    total += b.count;
  }
  std::cout << buckets.size() << " buckets, " << total << " lines\n";
  return kExitOk;
}

// ------------------------------------------------------------------- search

struct SearchArgs {
  int lambda = 0;
  int dp_bits = -1;  // -1: pick per triple from the bucket shape
  std::uint32_t max_walk_len = 0;
  int workers = 1;
  double time_limit = 0.0;
  std::string bucket_a, bucket_d, bucket_b;
  std::string store_path;
  std::uint64_t seed_base = 1;
  std::uint64_t max_steps = 0;
  bool stop_after_first = false;
  std::string out = "solutions.txt";
};

bool is_paf_file(const std::string& p) {
  return p.size() > 4 && p.substr(p.size() - 4) == ".paf" && fs::is_regular_file(p);
}

candgen::Bucket single_bucket(const std::string& paf, const std::string& source) {
  fs::path pp(paf);
  fs::path sp = pp;
  sp.replace_extension(".sub");
  if (!fs::exists(sp)) throw IoError("missing sibling subset file " + sp.string());
  return candgen::Bucket{source, 0, 0, pp, sp};
}

int cmd_search(const SearchArgs& a) {
  const auto t0 = Clock::now();
  const auto deadline = a.time_limit > 0.0
                            ? t0 + std::chrono::duration_cast<Clock::duration>(
                                       std::chrono::duration<double>(a.time_limit))
                            : Clock::time_point{};

  bool fa = is_paf_file(a.bucket_a), fd = is_paf_file(a.bucket_d), fb = is_paf_file(a.bucket_b);
  std::vector<candgen::BucketTriple> triples;
  if (fa && fd && fb) {
    triples.push_back({single_bucket(a.bucket_a, "A"), single_bucket(a.bucket_d, "D"),
                       single_bucket(a.bucket_b, "B")});
  } else if (!fa && !fd && !fb) {
    auto ba = candgen::discover_buckets(a.bucket_a, "A");
    auto bd = candgen::discover_buckets(a.bucket_d, "D");
    auto bb = candgen::discover_buckets(a.bucket_b, "B");
    triples = candgen::bucket_triples(ba, bd, bb, a.lambda);
    std::sort(triples.begin(), triples.end(), [](const auto& x, const auto& y) {
      return std::tuple(x.a.lead, x.d.lead, x.b.lead) < std::tuple(y.a.lead, y.d.lead, y.b.lead);
    });
  } else {
    throw std::invalid_argument(
        "--bucket-a/-d/-b must be either all .paf files or all bucket prefixes");
  }
  if (triples.empty()) {
    std::cout << "no lambda-compatible bucket triples to search\n";
    return kExitNoResult;
  }

  // start fresh so reruns produce identical bytes
  {
    std::ofstream out(a.out, std::ios::trunc);
    if (!out) throw IoError("cannot write " + a.out);
  }

  std::map<std::string, std::shared_ptr<const collider::BucketLines>> cache;
  auto load = [&cache](const candgen::Bucket& b) {
    auto key = b.paf_path.string();
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto lines = std::make_shared<const collider::BucketLines>(
        collider::load_bucket_lines(b.paf_path, b.subset_path));
    cache.emplace(key, lines);
    return lines;
  };

  struct Task {
    candgen::BucketTriple meta;
    std::unique_ptr<collider::Engine> engine;
    bool active = true;
  };
  std::vector<Task> tasks;
  tasks.reserve(triples.size());
  for (auto& t : triples) tasks.push_back({t, nullptr, true});

  std::uint64_t solutions = 0;
  bool stop = false;
  collider::SolutionSink sink = [&](const collider::SolutionTriple& t,
                                    const sds::PropusQuadruple& q) {
    sds::append_solution(a.out, q, a.lambda);
    ++solutions;
    std::cout << "solution: lines (" << t.i << ", " << t.j << ", " << t.k << "), v=" << q.v
              << " blocks |A|=" << q.a.k() << " |B|=" << q.b.k() << " |D|=" << q.d.k() << "\n";
    if (a.stop_after_first) {
      stop = true;
      return false;
    }
    return true;
  };

  const std::uint64_t step_quantum = 1u << 16;

  auto total_steps = [&tasks] {
    std::uint64_t s = 0;
    for (const auto& t : tasks)
      if (t.engine) s += t.engine->stats().steps;
    return s;
  };

  bool any_active = true;
  while (any_active && !stop) {
    if (deadline != Clock::time_point{} && Clock::now() >= deadline) break;
    if (a.max_steps && total_steps() >= a.max_steps) break;
    any_active = false;
    for (auto& task : tasks) {
      if (stop) break;
      if (!task.active) continue;
      if (deadline != Clock::time_point{} && Clock::now() >= deadline) break;

      if (!task.engine) {
        auto la = load(task.meta.a), ld = load(task.meta.d), lb = load(task.meta.b);
        if (la->count == 0 || ld->count == 0 || lb->count == 0) {
          std::cerr << "skipping triple with an empty bucket (leads " << task.meta.a.lead << "/"
                    << task.meta.d.lead << "/" << task.meta.b.lead << ")\n";
          task.active = false;
          continue;
        }
        auto data = collider::make_triple_data(std::move(la), std::move(ld), std::move(lb));
        collider::SearchConfig cfg;
        cfg.lambda = a.lambda;
        cfg.dp_bits = a.dp_bits >= 0 ? a.dp_bits : collider::suggest_dp_bits(data);
        cfg.max_walk_len = a.max_walk_len;
        cfg.workers = a.workers;
        cfg.seed_base = a.seed_base;
        if (!a.store_path.empty()) {
          cfg.store_path = a.store_path;
          if (triples.size() > 1)
            cfg.store_path += ".a" + std::to_string(task.meta.a.lead) + "d" +
                              std::to_string(task.meta.d.lead) + "b" +
                              std::to_string(task.meta.b.lead);
        }
        task.engine = std::make_unique<collider::Engine>(std::move(data), cfg);
      }

      // step-bounded slices keep the rotation fair across triples and keep
      // single-threaded runs deterministic
      std::uint64_t slice_steps = step_quantum * std::uint64_t(a.workers);
      if (a.max_steps) {
        std::uint64_t used = total_steps();
        if (used >= a.max_steps) break;
        slice_steps = std::min<std::uint64_t>(slice_steps, a.max_steps - used);
      }
      task.active = task.engine->run_slice(slice_steps, deadline, sink);
      any_active = any_active || task.active;
    }
  }

  collider::SearchStats total;
  for (const auto& t : tasks) {
    if (!t.engine) continue;
    const auto& s = t.engine->stats();
    total.walks += s.walks;
    total.abandoned += s.abandoned;
    total.steps += s.steps;
    total.collisions += s.collisions;
    total.useless += s.useless;
    total.solutions += s.solutions;
    total.evictions += s.evictions;
    total.versions += s.versions;
  }
  double elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
  std::cout << "searched " << tasks.size() << " triple(s): walks=" << total.walks
            << " steps=" << total.steps << " collisions=" << total.collisions
            << " useless=" << total.useless << " solutions=" << total.solutions
            << " abandoned=" << total.abandoned << " rotations=" << total.versions
            << " elapsed=" << std::fixed << std::setprecision(1) << elapsed << "s\n";
  if (solutions == 0) {
    std::cout << "no solutions found\n";
    return kExitNoResult;
  }
  std::cout << "solutions written to " << a.out << "\n";
  return kExitOk;
}

// ------------------------------------------------------------------- verify

struct RecordCheck {
  bool canonical = false;
  bool params = false;
  bool sds_ok = false;
  bool propus_ok = false;
  bool hadamard = false;
  bool symmetric = false;
  int order = 0;
  std::string note;
  bool pass() const {
    return canonical && params && sds_ok && propus_ok && hadamard && symmetric;
  }
};

RecordCheck check_record(const sds::SolutionRecord& rec) {
  RecordCheck c;
  sds::PropusQuadruple q;
  try {
    q = sds::canonicalize(rec);
    c.canonical = true;
  } catch (const DataError& e) {
    c.note = e.what();
    return c;
  }
  sds::SdsParams params{rec.v, {q.a.k(), q.b.k(), q.c.k(), q.d.k()}, rec.lambda};
  c.params = sds::validate_params(params).ok();
  c.sds_ok = sds::verify_sds(q, rec.lambda) == sds::SdsCheck::ok;
  c.propus_ok = sds::propus_check(q);
  auto circ = [](const seqcore::ResidueSubset& x) {
    return gparray::circulant(seqcore::subset_to_pm_sequence(x));
  };
  auto h = gparray::assemble_gp(circ(q.a), circ(q.b), circ(q.c), circ(q.d));
  c.order = h.order;
  c.hadamard = gparray::verify_hadamard(h);
  c.symmetric = gparray::verify_symmetric(h);
  return c;
}

int check_records_table(const std::vector<std::pair<std::string, sds::SolutionRecord>>& recs) {
  int fails = 0;
  std::size_t idx = 0;
  for (const auto& [label, rec] : recs) {
    ++idx;
    RecordCheck c = check_record(rec);
    std::cout << std::left << std::setw(4) << idx << std::setw(18) << label << " tag="
              << std::setw(9) << sds::to_string(rec.tag) << " v=" << std::setw(4) << rec.v
              << " order=" << std::setw(5) << c.order << (c.pass() ? " PASS" : " FAIL");
    if (!c.pass()) {
      std::cout << " [";
      if (!c.canonical) std::cout << " canonicalize:" << c.note;
      if (c.canonical && !c.params) std::cout << " params";
      if (c.canonical && !c.sds_ok) std::cout << " sds";
      if (c.canonical && !c.propus_ok) std::cout << " propus";
      if (c.canonical && !c.hadamard) std::cout << " hadamard";
      if (c.canonical && !c.symmetric) std::cout << " symmetric";
      std::cout << " ]";
      ++fails;
    }
    std::cout << "\n";
  }
  std::cout << (recs.size() - std::size_t(fails)) << "/" << recs.size() << " records passed\n";
  return fails == 0 ? kExitOk : kExitData;
}

int cmd_verify(const std::string& input) {
  auto records = sds::read_solution_file(input);
  if (records.empty()) {
    std::cout << "no records in " << input << "\n";
    return kExitNoResult;
  }
  std::vector<std::pair<std::string, sds::SolutionRecord>> recs;
  for (auto& r : records) recs.emplace_back(fs::path(input).filename().string(), std::move(r));
  return check_records_table(recs);
}

int cmd_check_fixtures(const std::string& dir) {
  const std::vector<std::pair<std::string, std::size_t>> expected = {
      {"sds_v23.txt", 4}, {"sds_v29.txt", 15}, {"sds_v43.txt", 1}};
  std::vector<std::pair<std::string, sds::SolutionRecord>> recs;
  bool count_ok = true;
  for (const auto& [name, want] : expected) {
    auto records = sds::read_solution_file(fs::path(dir) / name);
    if (records.size() != want) {
      std::cerr << name << ": expected " << want << " records, found " << records.size() << "\n";
      count_ok = false;
    }
    for (auto& r : records) recs.emplace_back(name, std::move(r));
  }
  int rc = check_records_table(recs);
  if (!count_ok) return kExitData;
  return rc;
}

// --------------------------------------------------------- assemble / render

gparray::SquareMatrix assemble_record(const std::string& input, std::size_t record_1based) {
  auto records = sds::read_solution_file(input);
  if (record_1based < 1 || record_1based > records.size())
    throw std::invalid_argument("--record out of range; file has " +
                                std::to_string(records.size()) + " records");
  auto q = sds::canonicalize(records[record_1based - 1]);
  auto circ = [](const seqcore::ResidueSubset& x) {
    return gparray::circulant(seqcore::subset_to_pm_sequence(x));
  };
  return gparray::assemble_gp(circ(q.a), circ(q.b), circ(q.c), circ(q.d));
}

int cmd_assemble(const std::string& input, std::size_t record, const std::string& out) {
  auto h = assemble_record(input, record);
  gparray::write_matrix_text(out, h);
  std::cout << "wrote order-" << h.order << " matrix to " << out << "\n";
  return kExitOk;
}

int cmd_render(const std::string& input, std::size_t record, const std::string& matrix,
               const std::string& out, int scale) {
  gparray::SquareMatrix h;
  if (!matrix.empty())
    h = gparray::read_matrix_text(matrix);
  else if (!input.empty())
    h = assemble_record(input, record);
  else
    throw std::invalid_argument("render needs --input or --matrix");
  gparray::render_image(h, out, scale);
  std::cout << "rendered order-" << h.order << " matrix to " << out << " (scale " << scale
            << ")\n";
  return kExitOk;
}

// -------------------------------------------------------------------- paley

int cmd_paley(int p, const std::string& out) {
  auto x = seqcore::quadratic_residues(p);
  if (!out.empty()) {
    seqcore::SubsetFile f{x.v, x.k(), {x}};
    seqcore::write_subset_file(out, f);
    std::cout << "wrote " << out << "\n";
  } else {
    for (std::size_t i = 0; i < x.elements.size(); ++i)
      std::cout << x.elements[i] << (i + 1 < x.elements.size() ? ' ' : '\n');
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"search and verification toolkit for GP-array (propus) symmetric Hadamard matrices"};
  app.require_subcommand(1);
  std::function<int()> action;

  // enumerate
  auto ea = std::make_shared<EnumerateArgs>();
  auto* enumerate = app.add_subcommand(
      "enumerate", "generate a PSD-filtered candidate file and its PAF file");
  enumerate->add_option("--v", ea->v, "modulus (odd)")->required();
  enumerate->add_option("--k", ea->k, "subset cardinality")->required();
  enumerate->add_flag("--symmetric", ea->symmetric, "symmetric subsets only");
  enumerate->add_option("--psd-bound", ea->psd_bound, "max PSD at nonzero frequencies");
  enumerate->add_option("--out-prefix", ea->out_prefix, "output prefix for .sub/.paf");
  enumerate->callback([ea, &action] { action = [ea] { return cmd_enumerate(*ea); }; });

  // bucket
  auto ba = std::make_shared<BucketArgs>();
  auto* bucket =
      app.add_subcommand("bucket", "split candidate/PAF files into per-lead subfiles");
  bucket->add_option("--paf", ba->paf, "PAF file")->required();
  bucket->add_option("--subsets", ba->subsets, "aligned subset file")->required();
  bucket->add_option("--out-prefix", ba->out_prefix, "bucket file prefix")->required();
  bucket->add_option("--source", ba->source, "label: A, D or B");
  bucket->callback([ba, &action] { action = [ba] { return cmd_bucket(*ba); }; });

  // search
  auto sa = std::make_shared<SearchArgs>();
  auto* search = app.add_subcommand(
      "search", "collision search for matching (A, D, B) line triples");
  search->add_option("--lambda", sa->lambda, "target PAF sum")->required();
  search->add_option("--dp-bits", sa->dp_bits,
                     "distinguished-point zero bits; -1 picks per bucket triple");
  search->add_option("--max-walk-len", sa->max_walk_len, "walk length cap (0: 20*2^dp)");
  search->add_option("--workers", sa->workers, "walker count; 1 = deterministic single-thread");
  search->add_option("--time-limit", sa->time_limit, "seconds, 0 = unlimited");
  search->add_option("--bucket-a", sa->bucket_a, "A bucket prefix or single .paf file")->required();
  search->add_option("--bucket-d", sa->bucket_d, "D bucket prefix or single .paf file")->required();
  search->add_option("--bucket-b", sa->bucket_b, "B bucket prefix or single .paf file")->required();
  search->add_option("--store-path", sa->store_path, "persist trails to this path (prefix)");
  search->add_option("--seed-base", sa->seed_base, "first walk seed");
  search->add_option("--max-steps", sa->max_steps, "total step budget, 0 = unlimited");
  search->add_flag("--stop-after-first", sa->stop_after_first, "stop at the first solution");
  search->add_option("--out", sa->out, "solution file (fixture format, tag=ADBC)");
  search->callback([sa, &action] { action = [sa] { return cmd_search(*sa); }; });

  // verify
  auto verify_input = std::make_shared<std::string>();
  auto* verify = app.add_subcommand("verify", "verify records in a solution file");
  verify->add_option("--input", *verify_input, "solution/fixture file")->required();
  verify->callback(
      [verify_input, &action] { action = [verify_input] { return cmd_verify(*verify_input); }; });

  // check-fixtures
  auto fixtures_dir = std::make_shared<std::string>("fixtures");
  auto* checkf = app.add_subcommand("check-fixtures",
                                    "verify the shipped solution fixtures end to end");
  checkf->add_option("--fixtures-dir", *fixtures_dir, "fixture directory");
  checkf->callback([fixtures_dir, &action] {
    action = [fixtures_dir] { return cmd_check_fixtures(*fixtures_dir); };
  });

  // assemble
  auto as_in = std::make_shared<std::string>();
  auto as_rec = std::make_shared<std::size_t>(1);
  auto as_out = std::make_shared<std::string>();
  auto* assemble =
      app.add_subcommand("assemble", "assemble a GP array from a solution record");
  assemble->add_option("--input", *as_in, "solution/fixture file")->required();
  assemble->add_option("--record", *as_rec, "1-based record index");
  assemble->add_option("--out", *as_out, "matrix text output")->required();
  assemble->callback([as_in, as_rec, as_out, &action] {
    action = [as_in, as_rec, as_out] { return cmd_assemble(*as_in, *as_rec, *as_out); };
  });

  // render
  auto rn_in = std::make_shared<std::string>();
  auto rn_rec = std::make_shared<std::size_t>(1);
  auto rn_matrix = std::make_shared<std::string>();
  auto rn_out = std::make_shared<std::string>();
  auto rn_scale = std::make_shared<int>(1);
  auto* render = app.add_subcommand("render", "render a matrix as a PPM image");
  render->add_option("--input", *rn_in, "solution/fixture file");
  render->add_option("--record", *rn_rec, "1-based record index");
  render->add_option("--matrix", *rn_matrix, "matrix text file (alternative input)");
  render->add_option("--out", *rn_out, "PPM output path")->required();
  render->add_option("--scale", *rn_scale, "pixels per entry");
  render->callback([rn_in, rn_rec, rn_matrix, rn_out, rn_scale, &action] {
    action = [rn_in, rn_rec, rn_matrix, rn_out, rn_scale] {
      return cmd_render(*rn_in, *rn_rec, *rn_matrix, *rn_out, *rn_scale);
    };
  });

  // paley
  auto pp = std::make_shared<int>(0);
  auto p_out = std::make_shared<std::string>();
  auto* paley = app.add_subcommand("paley", "quadratic-residue difference set mod p");
  paley->add_option("--p", *pp, "odd prime")->required();
  paley->add_option("--out", *p_out, "write as a subset file");
  paley->callback(
      [pp, p_out, &action] { action = [pp, p_out] { return cmd_paley(*pp, *p_out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    return action();
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
}
