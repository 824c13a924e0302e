#include "dgft/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "dgft/errors.hpp"
#include "dgft/io.hpp"
#include "dgft/schur_gft.hpp"

namespace dgft {

namespace fs = std::filesystem;

namespace {

std::string fixed(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

double off_support_ratio(const Matrix& m, const std::function<bool(Index, Index)>& allowed) {
  double off = 0.0;
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (!allowed(i, j)) off += m(i, j) * m(i, j);
    }
  }
  const double total = m.norm();
  return total == 0.0 ? 0.0 : std::sqrt(off) / total;
}

}  // namespace

std::string_view to_string(DiffusionOperator op) {
  return op == DiffusionOperator::Raw ? "raw" : "row-normalized";
}

DiffusionTrace diffuse(const Digraph& g, const GraphSignal& x0, const std::vector<int>& steps,
                       DiffusionOperator op) {
  require_same_size(g, x0);
  if (steps.empty() || steps.front() != 0) {
    throw ValidationError("diffuse: step list must start at 0");
  }
  for (std::size_t i = 1; i < steps.size(); ++i) {
    if (steps[i] <= steps[i - 1]) throw ValidationError("diffuse: steps must be strictly ascending");
  }

  Matrix a = g.adjacency();
  if (op == DiffusionOperator::RowNormalized) {
    for (Index i = 0; i < a.rows(); ++i) {
      const double in_degree = a.row(i).sum();
      if (in_degree <= 0.0) {
        throw ValidationError("diffuse: node " + std::to_string(i) +
                              " has zero in-degree; row normalization is undefined");
      }
      a.row(i) /= in_degree;
    }
  }

  DiffusionTrace trace{g.size(), steps, {}, op};
  Vector y = x0.values();
  int k = 0;
  for (int target : steps) {
    for (; k < target; ++k) y = a * y;
    trace.snapshots.emplace_back(y);
  }
  return trace;
}

double adjacency_tv(const Digraph& g, const CVector& v, double spectral_radius) {
  if (v.size() != g.size()) throw DimensionError("adjacency_tv: vector length mismatch");
  if (!(spectral_radius > 0.0)) {
    throw ValidationError(
        "adjacency_tv: spectral radius is zero; use the unnormalized ||v - A v||_1 variant");
  }
  const CVector av = g.adjacency().cast<Complex>() * v;
  return (v - av / spectral_radius).cwiseAbs().sum();
}

double adjacency_tv(const Digraph& g, const CVector& v, const NumericPolicy& policy) {
  return adjacency_tv(g, v, spectral_radius(g.adjacency(), policy));
}

std::vector<CVector> spectrum_of(const DiffusionTrace& trace, const GftBasis& basis) {
  if (basis.size() != trace.node_count) {
    throw DimensionError("spectrum_of: basis size " + std::to_string(basis.size()) +
                         " does not match trace size " + std::to_string(trace.node_count));
  }
  std::vector<CVector> out;
  out.reserve(trace.snapshots.size());
  for (const auto& s : trace.snapshots) out.push_back(basis.analyze(s.values()));
  return out;
}

Vector energy_profile(const CVector& spectrum) {
  Vector p = spectrum.cwiseAbs2();
  const double total = p.sum();
  if (total > 0.0) p /= total;
  return p;
}

Localization localization_of_profile(const Vector& p) {
  const Index n = p.size();
  Localization out;
  const double total = p.sum();
  if (n == 0 || total <= 0.0) {
    out.entropy = n > 0 ? std::log(static_cast<double>(n)) : 0.0;
    out.zero_energy = true;
    return out;
  }
  for (Index i = 0; i < n; ++i) {
    if (p(i) > 0.0) out.entropy -= p(i) * std::log(p(i));
  }
  out.entropy = std::clamp(out.entropy, 0.0, std::log(static_cast<double>(n)));

  std::vector<double> sorted(p.data(), p.data() + n);
  const auto top = static_cast<std::size_t>((n + 9) / 10);
  std::partial_sort(sorted.begin(), sorted.begin() + top, sorted.end(), std::greater<>());
  for (std::size_t i = 0; i < top; ++i) out.top_decile += sorted[i];
  out.top_decile = std::clamp(out.top_decile, 0.0, 1.0);
  p.maxCoeff(&out.peak_rank);
  return out;
}

Localization localization(const CVector& spectrum) {
  return localization_of_profile(energy_profile(spectrum));
}

LocalizationReport localization_report(BasisKind kind, const DiffusionTrace& trace,
                                       const std::vector<CVector>& spectra) {
  if (spectra.size() != trace.steps.size()) {
    throw DimensionError("localization_report: one spectrum per recorded step is required");
  }
  LocalizationReport r;
  r.basis_size = trace.node_count;
  for (std::size_t i = 0; i < spectra.size(); ++i) {
    r.rows.push_back({std::string(to_string(kind)), trace.steps[i], localization(spectra[i])});
  }
  return r;
}

StructureReport mblock_structure_check(const Digraph& g, const PolarFactors& pf,
                                       const MBlockSpec& spec, const NumericPolicy& policy) {
  spec.validate();
  if (g.size() != spec.node_count()) {
    throw ValidationError("mblock_structure_check: graph has " + std::to_string(g.size()) +
                          " nodes but a balanced spec of " + std::to_string(spec.blocks) + "x" +
                          std::to_string(spec.nodes_per_block) + " needs " +
                          std::to_string(spec.node_count()));
  }
  const Index m = spec.blocks;
  auto same_block = [&](Index i, Index j) { return spec.block_of(i) == spec.block_of(j); };
  auto next_block = [&](Index i, Index j) {
    return spec.block_of(i) == (spec.block_of(j) + 1) % m;
  };
  StructureReport r;
  r.threshold = policy.tol(1e-8);
  r.q_off_pattern = off_support_ratio(pf.q, next_block);
  r.p_off_block = off_support_ratio(pf.p, same_block);
  r.f_off_block = off_support_ratio(pf.f, same_block);
  return r;
}

bool ExperimentReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CriterionCheck& c) { return !c.applicable || c.passed; });
}

ExperimentReport run_mbcg_experiment(const ExperimentConfig& config, const NumericPolicy& policy) {
  if (config.seeds.empty()) throw ValidationError("experiment needs at least one seed");
  const Digraph g = gen_mblock_cyclic(config.spec);
  const PolarFactors pf = polar_decompose(g, policy);
  const GftBasis inlink = common_inlink_basis(pf);
  const GftBasis inflow = inflow_basis(pf, policy);
  GftBasis adjacency = gst_build(g, EigenOrder::ByFrequency, policy).basis;
  adjacency.kind = BasisKind::Adjacency;
  const std::vector<const GftBasis*> bases{&adjacency, &inlink, &inflow};
  const auto op =
      config.spec.normalize ? DiffusionOperator::RowNormalized : DiffusionOperator::Raw;

  ExperimentReport report;
  report.config = config;
  report.node_count = g.size();
  report.structure = mblock_structure_check(g, pf, config.spec, policy);

  const std::size_t n_steps = config.steps.size();
  const double n_seeds = static_cast<double>(config.seeds.size());
  // [basis][step]
  std::vector<std::vector<Vector>> mean_profile(
      bases.size(), std::vector<Vector>(n_steps, Vector::Zero(g.size())));
  std::vector<std::vector<double>> mean_entropy(bases.size(), std::vector<double>(n_steps, 0.0));
  std::vector<std::vector<double>> mean_decile(bases.size(), std::vector<double>(n_steps, 0.0));

  for (std::uint64_t seed : config.seeds) {
    const GraphSignal x = random_signal(g.size(), seed);
    DiffusionTrace trace = diffuse(g, x, config.steps, op);
    LocalizationReport per_seed;
    per_seed.basis_size = g.size();
    per_seed.seed = seed;
    for (std::size_t b = 0; b < bases.size(); ++b) {
      const auto spectra = spectrum_of(trace, *bases[b]);
      for (std::size_t s = 0; s < n_steps; ++s) {
        const Vector p = energy_profile(spectra[s]);
        const Localization loc = localization_of_profile(p);
        per_seed.rows.push_back({std::string(to_string(bases[b]->kind)), config.steps[s], loc});
        mean_profile[b][s] += p / n_seeds;
        mean_entropy[b][s] += loc.entropy / n_seeds;
        mean_decile[b][s] += loc.top_decile / n_seeds;
      }
    }
    report.per_seed.push_back(std::move(per_seed));
    report.traces.push_back(std::move(trace));
  }

  for (std::size_t b = 0; b < bases.size(); ++b) {
    for (std::size_t s = 0; s < n_steps; ++s) {
      Localization loc = localization_of_profile(mean_profile[b][s]);
      loc.entropy = mean_entropy[b][s];
      loc.top_decile = mean_decile[b][s];
      report.mean_rows.push_back({std::string(to_string(bases[b]->kind)), config.steps[s], loc});
    }
  }

  const bool applicable = n_steps >= 2;
  const std::size_t last = n_steps - 1;
  const int last_step = config.steps[last];
  auto drop_check = [&](std::size_t b, const char* name) {
    const double h0 = mean_entropy[b][0];
    const double h1 = mean_entropy[b][last];
    CriterionCheck c{name, applicable, h1 <= 0.85 * h0,
                     "mean entropy " + fixed(h0) + " -> " + fixed(h1) + " at k=" +
                         std::to_string(last_step) + " (limit " + fixed(0.85 * h0) + ")"};
    return c;
  };
  report.checks.push_back(drop_check(1, "inlink_entropy_drop"));
  report.checks.push_back(drop_check(2, "inflow_entropy_drop"));

  {
    const Index n = g.size();
    const Index lo = n / 10;
    const Index hi = (9 * n + 9) / 10 - 1;
    Index peak = -1;
    mean_profile[2][last].maxCoeff(&peak);
    report.checks.push_back({"inflow_mid_frequency_peak", applicable, peak >= lo && peak <= hi,
                             "peak rank " + std::to_string(peak) + " of " + std::to_string(n) +
                                 " (middle band " + std::to_string(lo) + ".." +
                                 std::to_string(hi) + ")"});
  }
  {
    const double adj_drop = mean_entropy[0][0] - mean_entropy[0][last];
    const double flow_drop = mean_entropy[2][0] - mean_entropy[2][last];
    report.checks.push_back({"adjacency_drop_below_inflow", applicable, adj_drop < flow_drop,
                             "adjacency drop " + fixed(adj_drop) + " vs inflow drop " +
                                 fixed(flow_drop)});
  }
  return report;
}

void write_experiment(const ExperimentReport& report, const fs::path& out_dir) {
  auto write_rows = [](const std::vector<LocalizationRow>& rows, const fs::path& path) {
    std::ostringstream out;
    out << "basis,step,entropy,top_decile,peak_rank\n";
    for (const auto& r : rows) {
      out << r.basis << ',' << r.step << ',' << format_double(r.value.entropy) << ','
          << format_double(r.value.top_decile) << ',' << r.value.peak_rank << '\n';
    }
    write_text(path, out.str());
  };

  write_rows(report.mean_rows, out_dir / "localization.csv");

  std::ostringstream structure;
  structure << "factor,residual\n"
            << "Q," << format_double(report.structure.q_off_pattern) << '\n'
            << "P," << format_double(report.structure.p_off_block) << '\n'
            << "F," << format_double(report.structure.f_off_block) << '\n';
  write_text(out_dir / "structure.csv", structure.str());

  for (std::size_t i = 0; i < report.per_seed.size(); ++i) {
    const fs::path dir = out_dir / ("seed_" + std::to_string(report.per_seed[i].seed));
    write_rows(report.per_seed[i].rows, dir / "localization.csv");
    std::ostringstream trace;
    trace << "step,node_id,value\n";
    const DiffusionTrace& t = report.traces[i];
    for (std::size_t s = 0; s < t.steps.size(); ++s) {
      const Vector& v = t.snapshots[s].values();
      for (Index node = 0; node < v.size(); ++node) {
        trace << t.steps[s] << ',' << node << ',' << format_double(v(node)) << '\n';
      }
    }
    write_text(dir / "trace.csv", trace.str());
  }
}

}  // namespace dgft
