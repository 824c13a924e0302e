#pragma once

// Diffusion on a digraph, adjacency total variation, spectral localization
// metrics and the M-block cyclic diffusion experiment.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "dgft/basis.hpp"
#include "dgft/graph.hpp"
#include "dgft/polar_gft.hpp"

namespace dgft {

enum class DiffusionOperator { Raw, RowNormalized };

std::string_view to_string(DiffusionOperator op);

struct DiffusionTrace {
  Index node_count = 0;
  std::vector<int> steps;
  std::vector<GraphSignal> snapshots;  // snapshots[i] = A^steps[i] x0
  DiffusionOperator op = DiffusionOperator::Raw;
};

// Steps must be strictly ascending and start at 0. Uses repeated
// matrix-vector products; the row-normalized operator is D_in^{-1} A.
DiffusionTrace diffuse(const Digraph& g, const GraphSignal& x0, const std::vector<int>& steps,
                       DiffusionOperator op);

// ||v - A v / rho||_1 with the complex l1 norm. Throws if rho == 0.
double adjacency_tv(const Digraph& g, const CVector& v, double spectral_radius);
double adjacency_tv(const Digraph& g, const CVector& v, const NumericPolicy& policy = {});

std::vector<CVector> spectrum_of(const DiffusionTrace& trace, const GftBasis& basis);

// |x_hat_i|^2 / ||x_hat||^2, or all zeros for a zero spectrum.
Vector energy_profile(const CVector& spectrum);

struct Localization {
  double entropy = 0.0;     // -sum p ln p, in [0, ln n]
  double top_decile = 0.0;  // energy in the ceil(n/10) largest coefficients
  Index peak_rank = -1;     // argmax p in basis order, -1 for a zero spectrum
  bool zero_energy = false;
};

Localization localization(const CVector& spectrum);
Localization localization_of_profile(const Vector& profile);

struct LocalizationRow {
  std::string basis;
  int step = 0;
  Localization value;
};

struct LocalizationReport {
  Index basis_size = 0;
  std::uint64_t seed = 0;
  std::vector<LocalizationRow> rows;
};

LocalizationReport localization_report(BasisKind kind, const DiffusionTrace& trace,
                                       const std::vector<CVector>& spectra);

struct StructureReport {
  double q_off_pattern = 0.0;   // ||Q off block-cyclic support||_F / ||Q||_F
  double p_off_block = 0.0;     // ||P off block diagonal||_F / ||P||_F
  double f_off_block = 0.0;
  double threshold = 1e-8;

  bool passed() const {
    return q_off_pattern <= threshold && p_off_block <= threshold && f_off_block <= threshold;
  }
};

StructureReport mblock_structure_check(const Digraph& g, const PolarFactors& pf,
                                       const MBlockSpec& spec, const NumericPolicy& policy = {});

struct ExperimentConfig {
  MBlockSpec spec;
  std::vector<std::uint64_t> seeds;
  std::vector<int> steps{0, 1, 5, 20, 100};
};

struct CriterionCheck {
  std::string name;
  bool applicable = true;
  bool passed = false;
  std::string detail;
};

struct ExperimentReport {
  ExperimentConfig config;
  Index node_count = 0;
  std::vector<LocalizationReport> per_seed;
  // Seed-averaged rows: mean entropy and top-decile energy, peak of the mean
  // energy profile.
  std::vector<LocalizationRow> mean_rows;
  std::vector<DiffusionTrace> traces;
  StructureReport structure;
  std::vector<CriterionCheck> checks;

  bool all_passed() const;
};

// Generates the graph, builds the in-link, in-flow and adjacency (GST) bases,
// diffuses one iid N(0,1) signal per seed and evaluates the localization
// thresholds:
//   (a) in-link mean entropy at the last step <= 85% of step 0
//   (b) the same for the in-flow basis
//   (c) in-flow peak rank of the mean energy profile at the last step inside
//       the middle 80% of the frequency ordering
//   (d) adjacency entropy drop strictly below the in-flow entropy drop
ExperimentReport run_mbcg_experiment(const ExperimentConfig& config,
                                     const NumericPolicy& policy = {});

// localization.csv, structure.csv at the top level; per-seed
// seed_<s>/localization.csv and seed_<s>/trace.csv.
void write_experiment(const ExperimentReport& report, const std::filesystem::path& out_dir);

}  // namespace dgft
