#include "dgft/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "dgft/errors.hpp"

namespace dgft {

namespace {

void validate_square(const Matrix& a, const NumericPolicy& policy,
                     const char* what) {
  if (a.rows() != a.cols() || a.rows() < 1) {
    throw DimensionError(std::string(what) + ": expected a non-empty square matrix, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
  if (static_cast<std::size_t>(a.rows()) > policy.max_dimension) {
    throw DimensionError(std::string(what) + ": dimension " + std::to_string(a.rows()) +
                         " exceeds the configured limit " +
                         std::to_string(policy.max_dimension));
  }
  if (!is_finite(a)) {
    throw ValidationError(std::string(what) + ": matrix has non-finite entries");
  }
}

// First index whose magnitude is within a relative 1e-10 of the maximum.
template <typename Vec>
Index pivot_index(const Vec& v) {
  double peak = 0.0;
  for (Index i = 0; i < v.size(); ++i) peak = std::max(peak, std::abs(v(i)));
  const double bar = peak * (1.0 - 1e-10);
  for (Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) >= bar) return i;
  }
  return 0;
}

// Tarjan's algorithm on the digraph with an edge j -> i for every nonzero
// off-diagonal a(i, j). Components come out sinks first, which is exactly the
// order that makes the permuted matrix block upper triangular.
std::vector<std::vector<Index>> scc_blocks(const Matrix& a) {
  const Index n = a.rows();
  std::vector<std::vector<Index>> out_edges(n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      if (i != j && a(i, j) != 0.0) out_edges[j].push_back(i);
    }
  }

  constexpr Index kUnvisited = -1;
  std::vector<Index> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<Index> stack;
  std::vector<std::vector<Index>> blocks;
  Index counter = 0;

  struct Frame {
    Index node;
    std::size_t next_edge;
  };

  for (Index root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!call.empty()) {
      Frame& f = call.back();
      const Index v = f.node;
      if (f.next_edge < out_edges[v].size()) {
        const Index w = out_edges[v][f.next_edge++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<Index> block;
        Index w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          block.push_back(w);
        } while (w != v);
        std::sort(block.begin(), block.end());
        blocks.push_back(std::move(block));
      }
      call.pop_back();
      if (!call.empty()) {
        const Index parent = call.back().node;
        low[parent] = std::min(low[parent], low[v]);
      }
    }
  }
  return blocks;
}

void swap_adjacent(ComplexSchurFactors& f, Index k) {
  CMatrix& t = f.triangular;
  const Index n = t.rows();
  const Complex t11 = t(k, k);
  const Complex t22 = t(k + 1, k + 1);
  const Complex t12 = t(k, k + 1);
  // (t12, t22 - t11) is the eigenvector of the 2x2 block for t22.
  const Complex x0 = t12;
  const Complex x1 = t22 - t11;
  const double nrm = std::hypot(std::abs(x0), std::abs(x1));
  if (nrm == 0.0) return;
  const Complex c = x0 / nrm;
  const Complex s = x1 / nrm;
  Eigen::Matrix2cd g;
  g << c, -std::conj(s), s, std::conj(c);

  t.block(0, k, k + 2, 2) = t.block(0, k, k + 2, 2) * g;
  t.block(k, k, 2, n - k) = g.adjoint() * t.block(k, k, 2, n - k);
  f.unitary.middleCols(k, 2) = f.unitary.middleCols(k, 2) * g;
  t(k + 1, k) = 0.0;
  t(k, k) = t22;
  t(k + 1, k + 1) = t11;
}

}  // namespace

Matrix SvdFactors::reconstruct() const {
  return left_vectors * singular_values.asDiagonal() * right_vectors.transpose();
}

CMatrix ComplexSchurFactors::reconstruct() const {
  return unitary * triangular * unitary.adjoint();
}

std::string_view to_string(EigenOrder order) {
  switch (order) {
    case EigenOrder::ByFrequency: return "by-frequency";
    case EigenOrder::ByModulusDesc: return "by-modulus-desc";
    case EigenOrder::None: return "none";
  }
  return "none";
}

EigenOrder parse_eigen_order(std::string_view name) {
  if (name == "by-frequency") return EigenOrder::ByFrequency;
  if (name == "by-modulus-desc") return EigenOrder::ByModulusDesc;
  if (name == "none") return EigenOrder::None;
  throw ValidationError("unknown eigenvalue ordering '" + std::string(name) + "'");
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double orthogonality_error(const Matrix& q) {
  return max_abs(Matrix(q.transpose() * q - Matrix::Identity(q.cols(), q.cols())));
}

double unitarity_error(const CMatrix& u) {
  return max_abs(CMatrix(u.adjoint() * u - CMatrix::Identity(u.cols(), u.cols())));
}

double strictly_lower_max(const CMatrix& t) {
  double worst = 0.0;
  for (Index j = 0; j < t.cols(); ++j) {
    for (Index i = j + 1; i < t.rows(); ++i) worst = std::max(worst, std::abs(t(i, j)));
  }
  return worst;
}

double off_diagonal_norm(const CMatrix& t) {
  CMatrix off = t;
  off.diagonal().setZero();
  return off.norm();
}

bool is_finite(const Matrix& m) { return m.allFinite(); }

void fix_sign(Eigen::Ref<Vector> v) {
  if (v.size() == 0) return;
  if (v(pivot_index(v)) < 0.0) v = -v;
}

Complex pivot_phase(const Eigen::Ref<const CVector>& v) {
  if (v.size() == 0) return 1.0;
  const Complex p = v(pivot_index(v));
  const double mag = std::abs(p);
  if (mag == 0.0) return 1.0;
  return std::conj(p) / mag;
}

SvdFactors svd(const Matrix& a, const NumericPolicy& policy) {
  validate_square(a, policy, "svd");
  Eigen::BDCSVD<Matrix> dec(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SvdFactors f{dec.matrixU(), dec.singularValues(), dec.matrixV()};
  for (Index k = 0; k < f.left_vectors.cols(); ++k) {
    auto u = f.left_vectors.col(k);
    if (u(pivot_index(u)) < 0.0) {
      u = -u;
      f.right_vectors.col(k) = -f.right_vectors.col(k);
    }
  }

  const double scale = std::max(1.0, a.norm());
  const double residual = (f.reconstruct() - a).norm();
  if (residual > policy.tol(1e-10) * scale) {
    throw NumericalError("svd: reconstruction check failed", residual / scale);
  }
  return f;
}

SymEigFactors sym_eig(const Matrix& s, const NumericPolicy& policy) {
  validate_square(s, policy, "sym_eig");
  const double asym = max_abs(Matrix(s - s.transpose()));
  if (asym > policy.tol(1e-8) * s.norm()) {
    throw ValidationError("sym_eig: matrix is not symmetric (max asymmetry " +
                          std::to_string(asym) + ")");
  }
  const Matrix sym = 0.5 * (s + s.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> dec(sym);
  if (dec.info() != Eigen::Success) {
    throw NumericalError("sym_eig: eigensolver did not converge", 0.0);
  }
  SymEigFactors f{dec.eigenvectors().rowwise().reverse(), dec.eigenvalues().reverse()};
  for (Index k = 0; k < f.vectors.cols(); ++k) fix_sign(f.vectors.col(k));
  return f;
}

void reorder_schur(ComplexSchurFactors& f, EigenOrder order) {
  if (order == EigenOrder::None) return;
  CMatrix& t = f.triangular;
  const Index n = t.rows();
  double rho = 0.0;
  for (Index i = 0; i < n; ++i) rho = std::max(rho, std::abs(t(i, i)));
  const double thresh = 1e-10 * std::max(1.0, rho);

  auto key = [&](Complex z) {
    return order == EigenOrder::ByFrequency ? std::abs(rho - z) : -std::abs(z);
  };
  // Ties on the primary key fall back to imaginary part, then real part, both
  // descending, so conjugate pairs come out positive-imaginary first.
  auto before = [&](Complex a, Complex b) {
    const double ka = key(a), kb = key(b);
    if (ka < kb - thresh) return true;
    if (kb < ka - thresh) return false;
    if (a.imag() > b.imag() + thresh) return true;
    if (a.imag() < b.imag() - thresh) return false;
    return a.real() > b.real() + thresh;
  };

  for (Index i = 1; i < n; ++i) {
    for (Index j = i; j > 0 && before(t(j, j), t(j - 1, j - 1)); --j) {
      if (std::abs(t(j, j) - t(j - 1, j - 1)) <= 1e-12) break;
      swap_adjacent(f, j - 1);
    }
  }
  f.eigenvalues = t.diagonal();
}

ComplexSchurFactors schur_complex(const Matrix& a, EigenOrder order,
                                  const NumericPolicy& policy) {
  validate_square(a, policy, "schur_complex");
  const Index n = a.rows();

  const auto blocks = scc_blocks(a);
  std::vector<Index> perm;
  perm.reserve(n);
  for (const auto& b : blocks) perm.insert(perm.end(), b.begin(), b.end());

  CMatrix permuted(n, n);
  for (Index c = 0; c < n; ++c) {
    for (Index r = 0; r < n; ++r) permuted(r, c) = a(perm[r], perm[c]);
  }

  CMatrix z = CMatrix::Zero(n, n);
  CMatrix diag_blocks = CMatrix::Zero(n, n);
  Index offset = 0;
  for (const auto& b : blocks) {
    const Index m = static_cast<Index>(b.size());
    if (m == 1) {
      z(offset, offset) = 1.0;
      diag_blocks(offset, offset) = permuted(offset, offset);
    } else {
      Eigen::ComplexSchur<CMatrix> dec(permuted.block(offset, offset, m, m), true);
      if (dec.info() != Eigen::Success) {
        throw NumericalError("schur_complex: QR iteration did not converge", 0.0);
      }
      z.block(offset, offset, m, m) = dec.matrixU();
      diag_blocks.block(offset, offset, m, m) =
          dec.matrixT().triangularView<Eigen::Upper>();
    }
    offset += m;
  }

  ComplexSchurFactors f;
  f.triangular = z.adjoint() * permuted * z;
  offset = 0;
  for (const auto& b : blocks) {
    const Index m = static_cast<Index>(b.size());
    f.triangular.block(offset, offset, m, m) = diag_blocks.block(offset, offset, m, m);
    offset += m;
  }
  f.triangular.triangularView<Eigen::StrictlyLower>().setZero();

  f.unitary.resize(n, n);
  for (Index r = 0; r < n; ++r) f.unitary.row(perm[r]) = z.row(r);

  reorder_schur(f, order);

  for (Index k = 0; k < n; ++k) {
    const Complex d = pivot_phase(f.unitary.col(k));
    if (d == Complex(1.0)) continue;
    const Complex diag = f.triangular(k, k);
    f.unitary.col(k) *= d;
    f.triangular.row(k) *= std::conj(d);
    f.triangular.col(k) *= d;
    f.triangular(k, k) = diag;
  }
  f.eigenvalues = f.triangular.diagonal();

  const double scale = std::max(1.0, a.norm());
  const double residual = (f.reconstruct() - a.cast<Complex>()).norm();
  if (residual > policy.tol(1e-9) * scale) {
    throw NumericalError("schur_complex: reconstruction check failed after reordering",
                         residual / scale);
  }
  const double unit_err = unitarity_error(f.unitary);
  if (unit_err > policy.tol(1e-10)) {
    throw NumericalError("schur_complex: unitary factor lost orthogonality", unit_err);
  }
  return f;
}

Matrix psd_sqrt(const Matrix& s, const NumericPolicy& policy) {
  const SymEigFactors eig = sym_eig(s, policy);
  const double norm = s.norm();
  const double smallest = eig.values.size() ? eig.values.minCoeff() : 0.0;
  if (smallest < -policy.tol(1e-10) * norm) {
    throw ValidationError("psd_sqrt: matrix is indefinite (smallest eigenvalue " +
                          std::to_string(smallest) + ")");
  }
  const Vector roots = eig.values.cwiseMax(0.0).cwiseSqrt();
  const Matrix r = eig.vectors * roots.asDiagonal() * eig.vectors.transpose();
  Matrix out = 0.5 * (r + r.transpose());

  const double scale = std::max(1.0, norm);
  const double residual = (out * out - s).norm();
  if (residual > policy.tol(1e-9) * scale) {
    throw NumericalError("psd_sqrt: R*R does not reproduce the input", residual / scale);
  }
  return out;
}

double spectral_radius(const Matrix& a, const NumericPolicy& policy) {
  const ComplexSchurFactors f = schur_complex(a, EigenOrder::None, policy);
  return f.eigenvalues.cwiseAbs().maxCoeff();
}

}  // namespace dgft
