#include <charconv>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dgft/analysis.hpp"
#include "dgft/errors.hpp"
#include "dgft/io.hpp"
#include "dgft/polar_gft.hpp"
#include "dgft/schur_gft.hpp"
#include "dgft/symmetrize.hpp"

namespace fs = std::filesystem;
using namespace dgft;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  std::string profile = "default";

  NumericPolicy policy() const {
    return profile == "strict" ? NumericPolicy::strict() : NumericPolicy::standard();
  }
  fs::path resolve(const std::string& p) const {
    const fs::path path(p);
    return path.is_absolute() ? path : fs::path(out_dir) / path;
  }
};

struct GenArgs {
  std::string family;
  Index n = 10;
  Index rows = 10;
  Index cols = 10;
  int blocks = 4;
  int per_block = 25;
  bool raw = false;
  double density = 0.1;
  std::string out = "graph.mtx";
};

struct DecomposeArgs {
  std::string in;
  std::string what;
  std::string order = "by-frequency";
};

struct GftArgs {
  std::string in;
  std::string basis;
  std::string signal;
  std::string order = "by-frequency";
  std::string out = "spectrum.csv";
};

struct DiffuseArgs {
  std::string in;
  std::string signal;
  std::string ks = "0,1,5,20,100";
  std::string op = "raw";
  std::string out = "trace.csv";
};

struct ExperimentArgs {
  int blocks = 4;
  int per_block = 25;
  std::uint64_t weight_seed = 1;
  int seeds = 20;
  std::string ks = "0,1,5,20,100";
  bool raw = false;
};

std::vector<int> parse_steps(const std::string& text) {
  std::vector<int> steps;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string item = text.substr(pos, comma - pos);
    int v = 0;
    const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || end != item.data() + item.size() || v < 0)
      throw CLI::ValidationError("--ks", "expected comma-separated non-negative integers, got '" + text + "'");
    steps.push_back(v);
    pos = comma + 1;
  }
  return steps;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

bool is_normal(const Digraph& g, const NumericPolicy& policy) {
  const double scale = std::max(1.0, g.adjacency().squaredNorm());
  return g.normality_residual() <= policy.tol(1e-10) * scale;
}

int cmd_gen(const Globals& gl, const GenArgs& a) {
  const auto policy = gl.policy();
  Digraph g = [&] {
    if (a.family == "cycle") return gen_directed_cycle(a.n);
    if (a.family == "path") return gen_directed_path(a.n);
    if (a.family == "torus") return gen_directed_torus(a.rows, a.cols);
    if (a.family == "mbcg") return gen_mblock_cyclic({a.blocks, a.per_block, gl.seed, !a.raw});
    return gen_random(a.n, a.density, gl.seed);
  }();
  const fs::path out = gl.resolve(a.out);
  write_matrix_market(g, out);
  std::cout << "n=" << g.size() << " nnz=" << g.edge_count()
            << " normal=" << yes_no(is_normal(g, policy)) << " out=" << out.string() << "\n";
  return 0;
}

int cmd_decompose(const Globals& gl, const DecomposeArgs& a) {
  const auto policy = gl.policy();
  const Digraph g = read_matrix_market(a.in);
  const fs::path dir(gl.out_dir);
  if (a.what == "polar") {
    const PolarFactors pf = polar_decompose(g, policy);
    write_matrix_market(pf.p, dir / "P.mtx");
    write_matrix_market(pf.q, dir / "Q.mtx");
    write_matrix_market(pf.f, dir / "F.mtx");
    write_values_csv(pf.svd.singular_values, dir / "singular_values.csv");
    const GftBasis bases[] = {common_inlink_basis(pf), common_outlink_basis(pf),
                              inflow_basis(pf, policy)};
    for (const auto& b : bases) {
      const std::string name(to_string(b.kind));
      write_basis(b, dir / (name + "_basis.csv"), dir / (name + "_vectors.mtx"));
    }
    const double scale = std::max(1.0, g.adjacency().norm());
    std::cout << "polar: n=" << g.size()
              << " pq_residual=" << format_double((pf.p * pf.q - g.adjacency()).norm() / scale)
              << " qf_residual=" << format_double((pf.q * pf.f - g.adjacency()).norm() / scale)
              << " q_orthogonality=" << format_double(orthogonality_error(pf.q)) << "\n";
  } else if (a.what == "schur") {
    const GstTransform t = gst_build(g, parse_eigen_order(a.order), policy);
    write_matrix_market(t.factors.unitary, dir / "U.mtx");
    write_matrix_market(t.factors.triangular, dir / "T.mtx");
    write_basis(t.basis, dir / "eigenvalues.csv", dir / "schur_vectors.mtx");
    write_values_csv(t.tv_scores, dir / "tv.csv");
    std::cout << "schur: n=" << g.size() << " order=" << to_string(t.order)
              << " spectral_radius=" << format_double(t.spectral_radius)
              << " unitarity=" << format_double(unitarity_error(t.factors.unitary))
              << " lower_max=" << format_double(strictly_lower_max(t.factors.triangular))
              << (t.unnormalized_tv ? " tv=unnormalized" : "") << "\n";
    if (t.unnormalized_tv)
      std::cerr << "warning: spectral radius is zero, TV scores use A without scaling\n";
  } else {
    for (const auto& s : {bibliographic_coupling(g), co_citation(g), bibliometric(g)}) {
      const std::string name(to_string(s.kind));
      write_matrix_market(s.matrix, dir / (name + ".mtx"));
      write_values_csv(sym_eig(s.matrix, policy).values, dir / (name + "_eigenvalues.csv"));
    }
    std::cout << "symmetrize: n=" << g.size() << " wrote B_in, C_out, bibliometric\n";
  }
  return 0;
}

int cmd_gft(const Globals& gl, const GftArgs& a) {
  const auto policy = gl.policy();
  const Digraph g = read_matrix_market(a.in);
  const GraphSignal x = read_signal_csv(a.signal, g.size());
  GftBasis basis;
  if (a.basis == "schur") {
    basis = gst_build(g, parse_eigen_order(a.order), policy).basis;
  } else {
    const PolarFactors pf = polar_decompose(g, policy);
    if (a.basis == "p") basis = common_inlink_basis(pf);
    else if (a.basis == "f") basis = common_outlink_basis(pf);
    else basis = inflow_basis(pf, policy);
  }
  const CVector spectrum = basis.analyze(x.values());
  const fs::path out = gl.resolve(a.out);
  write_spectrum_csv(spectrum, basis, out);
  const double nx = x.values().norm();
  const double err = std::abs(spectrum.norm() - nx) / std::max(1.0, nx);
  const bool ok = err <= policy.tol(1e-10);
  std::cout << "gft: basis=" << to_string(basis.kind) << " signal_norm=" << format_double(nx)
            << " spectrum_norm=" << format_double(spectrum.norm())
            << " parseval=" << (ok ? "ok" : "FAILED") << " out=" << out.string() << "\n";
  if (!ok) {
    std::cerr << "error: Parseval check failed, relative error " << format_double(err) << "\n";
    return 3;
  }
  return 0;
}

int cmd_diffuse(const Globals& gl, const DiffuseArgs& a) {
  const Digraph g = read_matrix_market(a.in);
  const GraphSignal x = a.signal.empty() ? random_signal(g.size(), gl.seed)
                                         : read_signal_csv(a.signal, g.size());
  const auto op = a.op == "raw" ? DiffusionOperator::Raw : DiffusionOperator::RowNormalized;
  const DiffusionTrace t = diffuse(g, x, parse_steps(a.ks), op);
  std::string csv = "step,node_id,value\n";
  for (std::size_t s = 0; s < t.steps.size(); ++s)
    for (Index i = 0; i < t.node_count; ++i)
      csv += std::to_string(t.steps[s]) + "," + std::to_string(i) + "," +
             format_double(t.snapshots[s].values()(i)) + "\n";
  const fs::path out = gl.resolve(a.out);
  write_text(out, csv);
  std::cout << "diffuse: n=" << g.size() << " steps=" << t.steps.size()
            << " operator=" << to_string(op) << " out=" << out.string() << "\n";
  return 0;
}

int cmd_experiment(const Globals& gl, const ExperimentArgs& a) {
  ExperimentConfig cfg;
  cfg.spec = {a.blocks, a.per_block, a.weight_seed, !a.raw};
  for (int s = 0; s < a.seeds; ++s) cfg.seeds.push_back(gl.seed + static_cast<std::uint64_t>(s));
  cfg.steps = parse_steps(a.ks);
  const ExperimentReport r = run_mbcg_experiment(cfg, gl.policy());
  write_experiment(r, gl.out_dir);
  std::cout << "experiment: n=" << r.node_count << " seeds=" << cfg.seeds.size()
            << " steps=" << cfg.steps.size() << " out=" << gl.out_dir << "\n";
  std::cout << (r.structure.passed() ? "PASS" : "FAIL") << " block_structure q="
            << format_double(r.structure.q_off_pattern)
            << " p=" << format_double(r.structure.p_off_block)
            << " f=" << format_double(r.structure.f_off_block) << "\n";
  for (const auto& c : r.checks) {
    const char* tag = !c.applicable ? "SKIP" : (c.passed ? "PASS" : "FAIL");
    std::cout << tag << " " << c.name << " " << c.detail << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Directed graph Fourier transforms: polar and Schur bases, diffusion analysis"};
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();

  Globals gl;
  app.add_option("--seed", gl.seed, "RNG seed for generators and signals");
  app.add_option("--out-dir", gl.out_dir, "Directory for output files");
  app.add_option("--tolerance-profile", gl.profile, "Numerical tolerances (strict halves them)")
      ->check(CLI::IsMember({"default", "strict"}));

  GenArgs ga;
  auto* gen = app.add_subcommand("gen", "Generate a graph as Matrix Market");
  gen->add_option("--family", ga.family, "Graph family")
      ->required()
      ->check(CLI::IsMember({"cycle", "path", "torus", "mbcg", "random"}));
  gen->add_option("--n", ga.n, "Node count for cycle, path and random")->check(CLI::PositiveNumber);
  gen->add_option("--rows", ga.rows, "Torus rows")->check(CLI::PositiveNumber);
  gen->add_option("--cols", ga.cols, "Torus columns")->check(CLI::PositiveNumber);
  gen->add_option("--blocks", ga.blocks, "M-block cyclic: number of blocks")->check(CLI::Range(2, 1 << 20));
  gen->add_option("--per-block", ga.per_block, "M-block cyclic: nodes per block")->check(CLI::PositiveNumber);
  gen->add_flag("--raw", ga.raw, "M-block cyclic: keep raw weights instead of row-normalizing");
  gen->add_option("--density", ga.density, "Random: edge probability")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--out", ga.out, "Output file, relative paths go under --out-dir");

  DecomposeArgs da;
  auto* dec = app.add_subcommand("decompose", "Write polar factors, Schur factors or symmetrizations");
  dec->add_option("--in", da.in, "Input graph (Matrix Market)")->required();
  dec->add_option("--what", da.what, "Decomposition")
      ->required()
      ->check(CLI::IsMember({"polar", "schur", "symmetrize"}));
  dec->add_option("--order", da.order, "Schur eigenvalue ordering")
      ->check(CLI::IsMember({"by-frequency", "by-modulus-desc", "none"}));

  GftArgs fa;
  auto* gft = app.add_subcommand("gft", "Transform a signal into a graph Fourier basis");
  gft->add_option("--in", fa.in, "Input graph (Matrix Market)")->required();
  gft->add_option("--basis", fa.basis, "p = common in-link, f = common out-link, q = in-flow, schur")
      ->required()
      ->check(CLI::IsMember({"p", "f", "q", "schur"}));
  gft->add_option("--signal", fa.signal, "Signal CSV (node_id,value)")->required();
  gft->add_option("--order", fa.order, "Schur eigenvalue ordering")
      ->check(CLI::IsMember({"by-frequency", "by-modulus-desc", "none"}));
  gft->add_option("--out", fa.out, "Spectrum CSV, relative paths go under --out-dir");

  DiffuseArgs fu;
  auto* dif = app.add_subcommand("diffuse", "Diffuse a signal and write the trace");
  dif->add_option("--in", fu.in, "Input graph (Matrix Market)")->required();
  dif->add_option("--signal", fu.signal, "Signal CSV; empty draws an iid N(0,1) signal from --seed");
  dif->add_option("--ks", fu.ks, "Comma-separated ascending steps starting at 0");
  dif->add_option("--operator", fu.op, "Diffusion operator")
      ->check(CLI::IsMember({"raw", "row-normalized"}));
  dif->add_option("--out", fu.out, "Trace CSV, relative paths go under --out-dir");

  ExperimentArgs ea;
  auto* exp = app.add_subcommand("experiment", "M-block cyclic diffusion localization experiment");
  exp->add_option("--blocks", ea.blocks, "Number of blocks")->check(CLI::Range(2, 1 << 20));
  exp->add_option("--per-block", ea.per_block, "Nodes per block")->check(CLI::PositiveNumber);
  exp->add_option("--weight-seed", ea.weight_seed, "Seed for the edge weights");
  exp->add_option("--seeds", ea.seeds, "Number of signal seeds, starting at --seed")->check(CLI::PositiveNumber);
  exp->add_option("--ks", ea.ks, "Comma-separated ascending steps starting at 0");
  exp->add_flag("--raw", ea.raw, "Use raw weights and the raw diffusion operator");

  try {
    app.parse(argc, argv);
    if (*gen) return cmd_gen(gl, ga);
    if (*dec) return cmd_decompose(gl, da);
    if (*gft) return cmd_gft(gl, fa);
    if (*dif) return cmd_diffuse(gl, fu);
    return cmd_experiment(gl, ea);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
