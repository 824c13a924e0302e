#include "dgft/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "dgft/errors.hpp"

namespace dgft {

namespace fs = std::filesystem;

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

double parse_double(std::string_view token, const fs::path& path, std::size_t line) {
  double v = 0.0;
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw IoError(path.string() + ":" + std::to_string(line) + ": bad number '" +
                  std::string(token) + "'");
  }
  return v;
}

long long parse_int(std::string_view token, const fs::path& path, std::size_t line) {
  long long v = 0;
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw IoError(path.string() + ":" + std::to_string(line) + ": bad integer '" +
                  std::string(token) + "'");
  }
  return v;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void close_out(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

struct MmEntry {
  Index row;
  Index col;
  Complex value;
};

struct MmData {
  Index rows = 0;
  Index cols = 0;
  bool complex = false;
  std::vector<MmEntry> entries;
};

MmData read_mm(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");

  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw IoError(path.string() + ": empty file");
  const auto header = split_ws(lower(line));
  if (header.size() != 5 || header[0] != "%%matrixmarket" || header[1] != "matrix" ||
      header[2] != "coordinate") {
    throw IoError(path.string() + ": expected '%%MatrixMarket matrix coordinate <field> general'");
  }
  MmData data;
  if (header[3] == "complex") {
    data.complex = true;
  } else if (header[3] != "real" && header[3] != "integer") {
    throw IoError(path.string() + ": unsupported field '" + header[3] + "'");
  }
  if (header[4] != "general") {
    throw IoError(path.string() + ": unsupported symmetry '" + header[4] + "'");
  }

  bool have_size = false;
  long long expected = 0;
  std::set<std::pair<Index, Index>> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '%') continue;
    const auto tok = split_ws(line);
    if (tok.empty()) continue;
    if (!have_size) {
      if (tok.size() != 3) throw IoError(path.string() + ": malformed size line");
      data.rows = parse_int(tok[0], path, line_no);
      data.cols = parse_int(tok[1], path, line_no);
      expected = parse_int(tok[2], path, line_no);
      if (data.rows < 1 || data.cols < 1 || expected < 0) {
        throw IoError(path.string() + ": invalid matrix dimensions");
      }
      have_size = true;
      continue;
    }
    const std::size_t want = data.complex ? 4 : 3;
    if (tok.size() != want) {
      throw IoError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                    std::to_string(want) + " fields");
    }
    const long long r = parse_int(tok[0], path, line_no);
    const long long c = parse_int(tok[1], path, line_no);
    if (r < 1 || r > data.rows || c < 1 || c > data.cols) {
      throw IoError(path.string() + ":" + std::to_string(line_no) + ": index (" +
                    std::to_string(r) + "," + std::to_string(c) + ") out of bounds");
    }
    if (!seen.emplace(r - 1, c - 1).second) {
      throw IoError(path.string() + ":" + std::to_string(line_no) + ": duplicate entry");
    }
    const double re = parse_double(tok[2], path, line_no);
    const double im = data.complex ? parse_double(tok[3], path, line_no) : 0.0;
    data.entries.push_back({static_cast<Index>(r - 1), static_cast<Index>(c - 1), {re, im}});
  }
  if (!have_size) throw IoError(path.string() + ": missing size line");
  if (static_cast<long long>(data.entries.size()) != expected) {
    throw IoError(path.string() + ": header promises " + std::to_string(expected) +
                  " entries, found " + std::to_string(data.entries.size()));
  }
  return data;
}

template <typename Mat>
void write_mm(const Mat& m, const fs::path& path, bool complex) {
  std::ofstream out = open_out(path);
  std::ostringstream body;
  Index nnz = 0;
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      const Complex v = m(i, j);
      if (v == Complex(0.0)) continue;
      ++nnz;
      body << (i + 1) << ' ' << (j + 1) << ' ' << format_double(v.real());
      if (complex) body << ' ' << format_double(v.imag());
      body << '\n';
    }
  }
  out << "%%MatrixMarket matrix coordinate " << (complex ? "complex" : "real") << " general\n"
      << m.rows() << ' ' << m.cols() << ' ' << nnz << '\n'
      << body.str();
  close_out(out, path);
}

}  // namespace

std::string format_double(double v) {
  if (v == 0.0) return "0";  // folds -0
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_matrix_market(const Matrix& m, const fs::path& path) { write_mm(m, path, false); }
void write_matrix_market(const CMatrix& m, const fs::path& path) { write_mm(m, path, true); }

Matrix read_matrix_market_real(const fs::path& path) {
  const MmData data = read_mm(path);
  if (data.complex) throw IoError(path.string() + ": expected a real matrix");
  Matrix m = Matrix::Zero(data.rows, data.cols);
  for (const auto& e : data.entries) m(e.row, e.col) = e.value.real();
  return m;
}

CMatrix read_matrix_market_complex(const fs::path& path) {
  const MmData data = read_mm(path);
  CMatrix m = CMatrix::Zero(data.rows, data.cols);
  for (const auto& e : data.entries) m(e.row, e.col) = e.value;
  return m;
}

void write_matrix_market(const Digraph& g, const fs::path& path) {
  write_matrix_market(g.adjacency(), path);
}

Digraph read_matrix_market(const fs::path& path) {
  Matrix m = read_matrix_market_real(path);
  if (m.rows() != m.cols()) {
    throw IoError(path.string() + ": graph adjacency must be square");
  }
  return Digraph(std::move(m));
}

void write_signal_csv(const GraphSignal& x, const fs::path& path) {
  std::ofstream out = open_out(path);
  out << "node_id,value\n";
  for (Index i = 0; i < x.size(); ++i) out << i << ',' << format_double(x.values()(i)) << '\n';
  close_out(out, path);
}

GraphSignal read_signal_csv(const fs::path& path, Index n) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line)) throw IoError(path.string() + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "node_id,value") throw IoError(path.string() + ": expected header 'node_id,value'");

  Vector values = Vector::Zero(n);
  std::vector<bool> filled(static_cast<std::size_t>(n), false);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw IoError(path.string() + ":" + std::to_string(line_no) + ": expected two columns");
    }
    const long long id = parse_int(std::string_view(line).substr(0, comma), path, line_no);
    if (id < 0) {
      throw IoError(path.string() + ":" + std::to_string(line_no) + ": negative node id");
    }
    if (id >= n) {
      throw DimensionError(path.string() + ":" + std::to_string(line_no) + ": node id " +
                           std::to_string(id) + " but the graph has " + std::to_string(n) +
                           " nodes");
    }
    if (filled[id]) {
      throw IoError(path.string() + ": duplicate node id " + std::to_string(id));
    }
    filled[id] = true;
    values(id) = parse_double(std::string_view(line).substr(comma + 1), path, line_no);
  }
  const auto covered = std::count(filled.begin(), filled.end(), true);
  for (Index i = 0; i < n; ++i) {
    if (filled[i]) continue;
    // a clean prefix 0..k-1 is a shorter signal rather than a malformed file
    if (i == covered) {
      throw DimensionError(path.string() + ": signal has " + std::to_string(covered) +
                           " nodes but the graph has " + std::to_string(n));
    }
    throw IoError(path.string() + ": missing node id " + std::to_string(i));
  }
  return GraphSignal(std::move(values));
}

void write_basis(const GftBasis& basis, const fs::path& csv_path, const fs::path& vectors_path) {
  std::ofstream out = open_out(csv_path);
  out << "rank,eig_real,eig_imag,frequency\n";
  for (Index k = 0; k < basis.size(); ++k) {
    out << k << ',' << format_double(basis.eigenvalues(k).real()) << ','
        << format_double(basis.eigenvalues(k).imag()) << ','
        << format_double(basis.frequencies(k)) << '\n';
  }
  close_out(out, csv_path);
  if (basis.is_real()) {
    write_matrix_market(Matrix(basis.vectors.real()), vectors_path);
  } else {
    write_matrix_market(basis.vectors, vectors_path);
  }
}

void write_spectrum_csv(const CVector& spectrum, const GftBasis& basis, const fs::path& path) {
  if (spectrum.size() != basis.size()) {
    throw DimensionError("spectrum length does not match basis size");
  }
  std::ofstream out = open_out(path);
  out << "rank,coeff_real,coeff_imag,eig_real,eig_imag,frequency\n";
  for (Index k = 0; k < spectrum.size(); ++k) {
    out << k << ',' << format_double(spectrum(k).real()) << ','
        << format_double(spectrum(k).imag()) << ','
        << format_double(basis.eigenvalues(k).real()) << ','
        << format_double(basis.eigenvalues(k).imag()) << ','
        << format_double(basis.frequencies(k)) << '\n';
  }
  close_out(out, path);
}

void write_values_csv(const Vector& values, const fs::path& path) {
  std::ofstream out = open_out(path);
  out << "rank,value\n";
  for (Index k = 0; k < values.size(); ++k) out << k << ',' << format_double(values(k)) << '\n';
  close_out(out, path);
}

void write_text(const fs::path& path, const std::string& contents) {
  std::ofstream out = open_out(path);
  out << contents;
  close_out(out, path);
}

}  // namespace dgft
