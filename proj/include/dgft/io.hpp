#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dgft/basis.hpp"
#include "dgft/graph.hpp"
#include "dgft/types.hpp"

namespace dgft {

// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

// Matrix Market coordinate format, 1-based indices. Real matrices are written
// as `real general`, complex ones as `complex general`; only nonzero entries
// are stored, in column-major order.
void write_matrix_market(const Matrix& m, const std::filesystem::path& path);
void write_matrix_market(const CMatrix& m, const std::filesystem::path& path);
Matrix read_matrix_market_real(const std::filesystem::path& path);
CMatrix read_matrix_market_complex(const std::filesystem::path& path);

void write_matrix_market(const Digraph& g, const std::filesystem::path& path);
Digraph read_matrix_market(const std::filesystem::path& path);

// Two-column `node_id,value` CSV with a header row and 0-based node ids.
// Reading throws DimensionError for an id >= n or a file holding only ids
// 0..k-1 with k < n; any other gap or a bad row is an IoError.
void write_signal_csv(const GraphSignal& x, const std::filesystem::path& path);
GraphSignal read_signal_csv(const std::filesystem::path& path, Index n);

// `rank,eig_real,eig_imag,frequency` plus the vectors as Matrix Market
// (complex general for InFlow/Schur/Adjacency, real general otherwise).
void write_basis(const GftBasis& basis, const std::filesystem::path& csv_path,
                 const std::filesystem::path& vectors_path);

// `rank,coeff_real,coeff_imag,eig_real,eig_imag,frequency`
void write_spectrum_csv(const CVector& spectrum, const GftBasis& basis,
                        const std::filesystem::path& path);

// `rank,value`
void write_values_csv(const Vector& values, const std::filesystem::path& path);

// Writes `contents` verbatim, throwing IoError on failure.
void write_text(const std::filesystem::path& path, const std::string& contents);

}  // namespace dgft
