#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "propus/common.hpp"
#include "propus/gparray.hpp"
#include "propus/sds.hpp"

using namespace propus;
using namespace propus::gparray;
using propus::seqcore::PmSequence;
using propus::seqcore::ResidueSubset;

namespace {

const std::filesystem::path kFixtures = PROPUS_FIXTURE_DIR;

SquareMatrix from_rows(const std::vector<std::vector<int>>& rows) {
  SquareMatrix m(int(rows.size()));
  for (int i = 0; i < m.order; ++i)
    for (int j = 0; j < m.order; ++j) m.at(i, j) = rows[i][j];
  return m;
}

SquareMatrix circ_of(const ResidueSubset& x) {
  return circulant(seqcore::subset_to_pm_sequence(x));
}

SquareMatrix assemble_quadruple(const sds::PropusQuadruple& q) {
  return assemble_gp(circ_of(q.a), circ_of(q.b), circ_of(q.c), circ_of(q.d));
}

PmSequence random_pm(std::mt19937& rng, int v) {
  PmSequence s{v, {}};
  for (int j = 0; j < v; ++j) s.entries.push_back(rng() % 2 ? 1 : -1);
  return s;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("circulant layout") {
  CHECK(circulant(PmSequence{1, {1}}) == from_rows({{1}}));
  CHECK(circulant(PmSequence{3, {1, -1, 1}}) ==
        from_rows({{1, -1, 1}, {1, 1, -1}, {-1, 1, 1}}));
}

TEST_CASE("circulant of a symmetric subset is symmetric") {
  ResidueSubset a_block{23, {0, 2, 3, 6, 10, 13, 17, 20, 21}};
  CHECK(verify_symmetric(circ_of(a_block)));

  // and a non-palindromic-negation row is not
  CHECK_FALSE(verify_symmetric(circ_of(ResidueSubset{5, {0, 1}})));
}

TEST_CASE("back identity") {
  CHECK(back_identity(1) == from_rows({{1}}));
  CHECK(back_identity(2) == from_rows({{0, 1}, {1, 0}}));
  auto r3 = back_identity(3);
  CHECK(multiply(r3, r3) == from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  CHECK(transpose(r3) == r3);
}

TEST_CASE("conjugation by R transposes circulants") {
  std::mt19937 rng(11);
  for (int iter = 0; iter < 30; ++iter) {
    int v = 2 * int(rng() % 12) + 3;
    auto x = circulant(random_pm(rng, v));
    auto r = back_identity(v);
    CHECK(multiply(multiply(r, x), r) == transpose(x));
    auto xr = multiply(x, r);
    CHECK(transpose(xr) == xr);  // XR is symmetric for circulant X
  }
}

TEST_CASE("order-4 GP array") {
  auto one = circulant(PmSequence{1, {1}});
  auto h = assemble_gp(one, one, one, one);
  CHECK(h == from_rows({{1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, -1, 1}, {1, -1, 1, -1}}));
  CHECK(verify_hadamard(h));
  CHECK(verify_symmetric(h));
}

TEST_CASE("assembly order mismatch rejected") {
  auto one = circulant(PmSequence{1, {1}});
  auto three = circulant(PmSequence{3, {1, 1, 1}});
  CHECK_THROWS_AS(assemble_gp(one, one, one, three), std::invalid_argument);
}

TEST_CASE("fixture assemblies are symmetric Hadamard matrices") {
  auto recs = sds::read_solution_file(kFixtures / "sds_v23.txt");
  auto h = assemble_quadruple(sds::canonicalize(recs[0]));
  CHECK(h.order == 92);
  CHECK(verify_hadamard(h));
  CHECK(verify_symmetric(h));

  auto recs43 = sds::read_solution_file(kFixtures / "sds_v43.txt");
  auto h43 = assemble_quadruple(sds::canonicalize(recs43[0]));
  CHECK(h43.order == 172);
  CHECK(verify_hadamard(h43));
  CHECK(verify_symmetric(h43));

  // breaking condition (ii) on real data: plug D into the C slot
  auto q = sds::canonicalize(recs[0]);
  auto broken = assemble_gp(circ_of(q.a), circ_of(q.b), circ_of(q.d), circ_of(q.d));
  CHECK_FALSE(verify_symmetric(broken));
}

TEST_CASE("hadamard verification") {
  CHECK_FALSE(verify_hadamard(from_rows({{1, 1}, {1, 1}})));
  SquareMatrix z(2);
  CHECK_THROWS_AS(verify_hadamard(z), std::invalid_argument);
}

TEST_CASE("render matches the committed golden image") {
  namespace fs = std::filesystem;
  auto dir = fs::temp_directory_path() / "propus_gparray_test";
  fs::create_directories(dir);

  auto one = circulant(PmSequence{1, {1}});
  auto h = assemble_gp(one, one, one, one);
  render_image(h, dir / "gp4.ppm");
  CHECK(slurp(dir / "gp4.ppm") == slurp(kFixtures / "golden_gp4.ppm"));

  // symmetric matrix renders identically to its transpose
  auto recs = sds::read_solution_file(kFixtures / "sds_v23.txt");
  auto h92 = assemble_quadruple(sds::canonicalize(recs[0]));
  render_image(h92, dir / "h.ppm");
  render_image(transpose(h92), dir / "ht.ppm");
  CHECK(slurp(dir / "h.ppm") == slurp(dir / "ht.ppm"));

  // scale factor repeats pixels
  render_image(h, dir / "gp4x3.ppm", 3);
  auto bytes = slurp(dir / "gp4x3.ppm");
  CHECK(bytes.rfind("P6\n12 12\n255\n", 0) == 0);
  CHECK(bytes.size() == 13 + 12 * 12 * 3);

  fs::remove_all(dir);
}

TEST_CASE("matrix text round trip") {
  namespace fs = std::filesystem;
  auto dir = fs::temp_directory_path() / "propus_gparray_text";
  fs::create_directories(dir);

  auto recs = sds::read_solution_file(kFixtures / "sds_v23.txt");
  auto h = assemble_quadruple(sds::canonicalize(recs[2]));
  write_matrix_text(dir / "h.txt", h);
  CHECK(read_matrix_text(dir / "h.txt") == h);
  fs::remove_all(dir);
}
