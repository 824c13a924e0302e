#include <filesystem>
#include <fstream>

#include <unistd.h>

#include "doctest.h"
#include "dgft/errors.hpp"
#include "dgft/graph.hpp"
#include "dgft/io.hpp"
#include "test_support.hpp"

using namespace dgft;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("dgft_io_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

void write(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

}  // namespace

TEST_CASE("matrix market round trip on generated graphs") {
  TempDir dir;
  for (const Digraph& g : {gen_mblock_cyclic({3, 5, 4, true}), gen_random(17, 0.4, 3),
                           gen_directed_torus(4, 3)}) {
    write_matrix_market(g, dir.path / "g.mtx");
    const Digraph back = read_matrix_market(dir.path / "g.mtx");
    CHECK(back.adjacency() == g.adjacency());
  }
}

TEST_CASE("matrix market uses 1-based indices") {
  TempDir dir;
  write_matrix_market(gen_directed_path(2), dir.path / "p.mtx");
  std::ifstream in(dir.path / "p.mtx");
  std::string header, size, entry;
  std::getline(in, header);
  std::getline(in, size);
  std::getline(in, entry);
  CHECK(header == "%%MatrixMarket matrix coordinate real general");
  CHECK(size == "2 2 1");
  CHECK(entry == "2 1 1");
}

TEST_CASE("hand-written matrix market file") {
  TempDir dir;
  write(dir.path / "h.mtx",
        "%%MatrixMarket matrix coordinate real general\n"
        "% three edges: 1->2, 2->3, 3->1 with distinct weights\n"
        "3 3 3\n"
        "2 1 0.5\n"
        "3 2 2\n"
        "1 3 1.25\n");
  const Digraph g = read_matrix_market(dir.path / "h.mtx");
  Matrix expected = Matrix::Zero(3, 3);
  expected(1, 0) = 0.5;
  expected(2, 1) = 2.0;
  expected(0, 2) = 1.25;
  CHECK(g.adjacency() == expected);
}

TEST_CASE("matrix market errors") {
  TempDir dir;
  const auto p = dir.path / "bad.mtx";
  write(p, "%%MatrixMarket matrix array real general\n2 2\n1\n0\n0\n1\n");
  CHECK_THROWS_AS(read_matrix_market(p), IoError);
  write(p, "%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1.0\n");
  CHECK_THROWS_AS(read_matrix_market(p), IoError);
  write(p, "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 2 1.0\n");
  CHECK_THROWS_AS(read_matrix_market(p), IoError);
  write(p, "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 2 1.0\n1 2 3.0\n");
  CHECK_THROWS_AS(read_matrix_market(p), IoError);
  write(p, "%%MatrixMarket matrix coordinate real general\n2 3 1\n1 2 1.0\n");
  CHECK_THROWS_AS(read_matrix_market(p), IoError);
  write(p, "%%MatrixMarket matrix coordinate real general\n2 2 1\n1 2 -1.0\n");
  CHECK_THROWS_AS(read_matrix_market(p), ValidationError);
  CHECK_THROWS_AS(read_matrix_market(dir.path / "missing.mtx"), IoError);
}

TEST_CASE("complex matrix market round trip") {
  TempDir dir;
  CMatrix m(2, 2);
  m << Complex(1.0, -0.5), Complex(0.0, 0.0), Complex(0.1, 1e-300), Complex(-3.0, 2.0);
  write_matrix_market(m, dir.path / "c.mtx");
  CHECK(read_matrix_market_complex(dir.path / "c.mtx") == m);
  CHECK_THROWS_AS(read_matrix_market_real(dir.path / "c.mtx"), IoError);
}

TEST_CASE("signal csv round trip") {
  TempDir dir;
  const GraphSignal x = random_signal(31, 8);
  write_signal_csv(x, dir.path / "x.csv");
  CHECK(read_signal_csv(dir.path / "x.csv", 31).values() == x.values());

  const GraphSignal zero(Vector::Zero(4));
  write_signal_csv(zero, dir.path / "z.csv");
  CHECK(read_signal_csv(dir.path / "z.csv", 4).values() == Vector::Zero(4));
}

TEST_CASE("hand-written signal csv in any row order") {
  TempDir dir;
  write(dir.path / "s.csv", "node_id,value\n2,-1.5\n0,3\n1,0.25\n");
  const Vector v = read_signal_csv(dir.path / "s.csv", 3).values();
  CHECK(v(0) == 3.0);
  CHECK(v(1) == 0.25);
  CHECK(v(2) == -1.5);
}

TEST_CASE("signal csv errors") {
  TempDir dir;
  const auto p = dir.path / "s.csv";
  write(p, "node_id,value\n0,1\n2,1\n");
  CHECK_THROWS_AS(read_signal_csv(p, 3), IoError);  // missing node 1
  write(p, "node_id,value\n0,1\n0,2\n1,1\n");
  CHECK_THROWS_AS(read_signal_csv(p, 2), IoError);  // duplicate
  write(p, "id,val\n0,1\n");
  CHECK_THROWS_AS(read_signal_csv(p, 1), IoError);
  write(p, "node_id,value\n0,abc\n");
  CHECK_THROWS_AS(read_signal_csv(p, 1), IoError);
  write(p, "node_id,value\n-1,1\n");
  CHECK_THROWS_AS(read_signal_csv(p, 1), IoError);
}

TEST_CASE("signal csv of the wrong length") {
  TempDir dir;
  const auto p = dir.path / "s.csv";
  write(p, "node_id,value\n5,1\n");
  CHECK_THROWS_AS(read_signal_csv(p, 1), DimensionError);
  write(p, "node_id,value\n0,1\n1,2\n");
  CHECK_THROWS_AS(read_signal_csv(p, 3), DimensionError);
}

TEST_CASE("format_double is shortest round trip") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-17, 6.02214076e23, 1.0}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(1.0) == "1");
}
