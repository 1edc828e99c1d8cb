#include "ncdyn/cli/command.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "ncdyn/cli/codec.hpp"
#include "ncdyn/cli/report.hpp"
#include "ncdyn/cpdyn.hpp"
#include "ncdyn/dilation.hpp"
#include "ncdyn/eigenlists.hpp"
#include "ncdyn/error.hpp"
#include "ncdyn/freeprod.hpp"
#include "ncdyn/moments.hpp"
#include "ncdyn/offwhite.hpp"
#include "ncdyn/prodsys.hpp"
#include "ncdyn/random.hpp"

namespace ncdyn::cli {

std::string Command::name() const {
  std::string s;
  for (const auto& p : path) s += (s.empty() ? "" : " ") + p;
  return s;
}

const std::string& Command::get(const std::string& flag) const {
  auto it = args.find(flag);
  if (it == args.end()) throw CliError(ExitCode::Usage, name() + ": missing --" + flag);
  return it->second;
}

namespace {

struct Flag {
  const char* name;
  bool required;
  const char* help;
};

struct Sub {
  std::vector<std::string> path;
  const char* help;
  std::vector<Flag> flags;
  bool needs_child = false;
};

const std::vector<Sub>& command_table() {
  static const std::vector<Sub> table = {
      {{"eig"}, "eigenvalues (nonincreasing) and eigenvectors of a Hermitian matrix", {{"matrix", true, "matrix JSON file"}}},
      {{"interaction-bound"}, "tensor-square l1 lower bound for past/future eigenvalue lists",
       {{"minus", true, "comma-separated list"}, {"plus", true, "comma-separated list"}}},
      {{"cp"}, "completely positive maps and GKLS semigroups", {}, true},
      {{"cp", "stationary"}, "stationary state of a generator",
       {{"spectrum", false, "build the generator from this eigenvalue list"}, {"gen", false, "generator JSON file"}}},
      {{"cp", "evolve"}, "P_t = exp(tL) as an n^2 x n^2 action", {{"gen", true, "generator JSON file"}, {"t", true, "time >= 0"}}},
      {{"cp", "choi"}, "Choi matrix of a Kraus map", {{"map", true, "map JSON file"}}},
      {{"moments"}, "moment polynomial [t_1..t_k; a_1..a_k]",
       {{"gen", false, "generator JSON file"}, {"map", false, "discrete semigroup phi^n from a map JSON file"},
        {"times", true, "comma-separated times"}, {"mats", true, "JSON array of matrices"}}},
      {{"dilate"}, "minimal Stinespring dilation", {{"map", false, "map JSON file"}}},
      {{"dilate", "expect"}, "exhaustive Kraus-word expectation at integer times",
       {{"map", true, "unital map JSON file"}, {"times", true, "nondecreasing integers"}, {"mats", true, "JSON array of matrices"}}},
      {{"freeprod"}, "section algebra over distinct-neighbor words", {}, true},
      {{"freeprod", "mul"}, "convolution product", {{"lhs", true, "section JSON"}, {"rhs", true, "section JSON"}}},
      {{"freeprod", "star"}, "involution", {{"section", true, "section JSON"}}},
      {{"freeprod", "shift"}, "time shift sigma_t", {{"section", true, "section JSON"}, {"t", true, "rational shift"}}},
      {{"freeprod", "expect"}, "expectation E_0", {{"section", true, "section JSON"}, {"gen", true, "generator JSON"}}},
      {{"index"}, "index (dimension) of a unit set or covariance kernel", {{"units", false, "units or kernel JSON"}}},
      {{"index", "pair"}, "whether two indices admit a pairing", {{"a", true, "index"}, {"b", true, "index"}}},
      {{"gauge"}, "gauge group G_H", {}, true},
      {{"gauge", "mul"}, "group product", {{"lhs", true, "element JSON"}, {"rhs", true, "element JSON"}}},
      {{"gauge", "inverse"}, "group inverse", {{"element", true, "element JSON"}}},
      {{"offwhite"}, "off-white noise diagnostics", {}, true},
      {{"offwhite", "gram"}, "discretized Gram of cell indicators",
       {{"theta", false, "exponent (default 2)"}, {"delta", false, "singular region (default 0.05)"},
        {"interval", true, "left,right"}, {"n", true, "cells"}, {"out", false, "CSV output path for the Gram"}}},
      {{"offwhite", "quasi"}, "quasiorthogonality diagnostic (CSV n,sigma_min,hs_defect)",
       {{"theta", false, "exponent (default 2)"}, {"delta", false, "singular region (default 0.05)"},
        {"intervals", true, "l1,r1,l2,r2,..."}, {"refine", true, "cells per unit length list"}}},
      {{"offwhite", "kakutani"}, "Kakutani geometric mean", {{"mu", true, "measure JSON"}, {"nu", true, "measure JSON"}}},
      {{"offwhite", "fh"}, "Feldman-Hajek operator B", {{"pair", true, "{gp, gq} JSON"}}},
      {{"offwhite", "straighten"}, "independence-making inner product",
       {{"pair", true, "{gram_m, gram_n, cross} JSON"}}},
      {{"sweep"}, "reproducible randomized sweep (CSV)", {{"spec", true, "sweep JSON"}}},
  };
  return table;
}

std::vector<double> parse_reals(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw CliError(ExitCode::Usage, "--" + flag + ": not a number: '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw CliError(ExitCode::Usage, "--" + flag + ": empty list");
  return out;
}

double parse_real(const Command& cmd, const std::string& flag, double fallback) {
  if (!cmd.has(flag)) return fallback;
  const auto v = parse_reals(cmd.get(flag), flag);
  if (v.size() != 1) throw CliError(ExitCode::Usage, "--" + flag + ": expected one number");
  return v[0];
}

std::vector<std::size_t> parse_counts(const std::string& text, const std::string& flag) {
  std::vector<std::size_t> out;
  for (double v : parse_reals(text, flag)) {
    if (v < 1.0 || v != std::floor(v)) throw CliError(ExitCode::Usage, "--" + flag + ": expected positive integers");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

std::uint64_t parse_seed(const std::string& text) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || text[0] == '-') throw CliError(ExitCode::Usage, "seed must be a nonnegative integer");
  return v;
}

Json list_json(const EigenvalueList& l) { return Json(l.values()); }

// ---- handlers ----

void run_eig(const Command& cmd, std::ostream& out) {
  const Matrix a = decode_matrix(read_json_file(cmd.get("matrix")));
  const auto es = eig_descending(a);
  Json r = make_report();
  r["eigenvalues"] = es.values;
  r["vectors"] = encode_matrix(es.vectors);
  out << dump_json(r);
}

void run_interaction(const Command& cmd, std::ostream& out) {
  const EigenvalueList minus(parse_reals(cmd.get("minus"), "minus"));
  const EigenvalueList plus(parse_reals(cmd.get("plus"), "plus"));
  const double bound = interaction_lower_bound(minus, plus);
  Json r = make_report();
  r["bound"] = bound;
  r["tensor_minus"] = list_json(tensor_product(minus, minus));
  r["tensor_plus"] = list_json(tensor_product(plus, plus));
  out << dump_json(r);
}

void run_cp_stationary(const Command& cmd, std::ostream& out) {
  if (cmd.has("spectrum") == cmd.has("gen")) {
    throw CliError(ExitCode::Usage, "cp stationary: give exactly one of --spectrum, --gen");
  }
  std::optional<GKLSGenerator> gen;
  if (cmd.has("spectrum")) {
    const EigenvalueList lam(parse_reals(cmd.get("spectrum"), "spectrum"));
    gen.emplace(generator_with_spectrum(lam, static_cast<Eigen::Index>(lam.size())));
  } else {
    gen.emplace(decode_generator(read_json_file(cmd.get("gen"))));
  }
  const DensityMatrix omega = stationary_state(*gen);
  Json r = make_report();
  r["generator"] = encode_generator(*gen);
  r["stationary"] = encode_matrix(omega.matrix());
  r["eigenvalues"] = list_json(EigenvalueList::of(omega.matrix()));
  out << dump_json(r);
}

void run_cp_evolve(const Command& cmd, std::ostream& out) {
  const GKLSGenerator gen = decode_generator(read_json_file(cmd.get("gen")));
  const double t = parse_real(cmd, "t", 0.0);
  const LinearMap p = evolve(gen, t);
  const Matrix one = Matrix::Identity(gen.dim(), gen.dim());
  Json r = make_report();
  r["t"] = t;
  r["action"] = encode_matrix(p.action());
  r["unital"] = (p.apply(one) - one).cwiseAbs().maxCoeff() <= 1e-10;
  r["completely_positive"] = is_completely_positive(p);
  out << dump_json(r);
}

void run_cp_choi(const Command& cmd, std::ostream& out) {
  const CPMap phi = decode_map(read_json_file(cmd.get("map")));
  const Matrix c = choi(phi);
  Json r = make_report();
  r["choi"] = encode_matrix(c);
  r["min_eigenvalue"] = min_eigenvalue(c);
  r["completely_positive"] = is_completely_positive(phi.as_linear_map());
  out << dump_json(r);
}

SemigroupHandle semigroup_from(const Command& cmd) {
  if (cmd.has("gen") == cmd.has("map")) throw CliError(ExitCode::Usage, cmd.name() + ": give exactly one of --gen, --map");
  if (cmd.has("gen")) return SemigroupHandle::from_generator(decode_generator(read_json_file(cmd.get("gen"))));
  return SemigroupHandle::from_map(decode_map(read_json_file(cmd.get("map"))).as_linear_map());
}

void run_moments(const Command& cmd, std::ostream& out) {
  const auto times = parse_reals(cmd.get("times"), "times");
  const auto mats = decode_matrices(read_json_file(cmd.get("mats")));
  const SemigroupHandle sg = semigroup_from(cmd);
  Json r = make_report();
  r["times"] = times;
  r["rendered"] = render(moment_plan(times));
  r["moment"] = encode_matrix(moment(sg, times, mats));
  out << dump_json(r);
}

void run_dilate(const Command& cmd, std::ostream& out) {
  if (!cmd.has("map")) throw CliError(ExitCode::Usage, "dilate: missing --map");
  const CPMap phi = decode_map(read_json_file(cmd.get("map")));
  const StinespringTriple st = stinespring(phi, false);
  double residual = 0.0;
  const Eigen::Index n = phi.dim();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      Matrix e = Matrix::Zero(n, n);
      e(i, j) = 1.0;
      residual = std::max(residual, (st.compress(e) - phi.apply(e)).cwiseAbs().maxCoeff());
    }
  }
  Json r = make_report();
  r["rep_rank"] = st.rep_rank;
  r["v"] = encode_matrix(st.v);
  r["kraus"] = encode_matrices(st.kraus);
  r["residual"] = residual;
  out << dump_json(r);
}

void run_dilate_expect(const Command& cmd, std::ostream& out) {
  const CPMap phi = decode_map(read_json_file(cmd.get("map")));
  const auto times = parse_reals(cmd.get("times"), "times");
  const auto mats = decode_matrices(read_json_file(cmd.get("mats")));
  Json r = make_report();
  r["times"] = times;
  r["expectation"] = encode_matrix(kraus_word_expectation(phi, times, mats));
  out << dump_json(r);
}

void run_freeprod_mul(const Command& cmd, std::ostream& out) {
  const Section f = decode_section(read_json_file(cmd.get("lhs")));
  const Section g = decode_section(read_json_file(cmd.get("rhs")), f.dim());
  Json r = make_report();
  const Section fg = section_mul(f, g);
  r["section"] = encode_section(fg);
  r["l1_norm_bound"] = fg.l1_norm_bound();
  out << dump_json(r);
}

void run_freeprod_star(const Command& cmd, std::ostream& out) {
  Json r = make_report();
  r["section"] = encode_section(section_star(decode_section(read_json_file(cmd.get("section")))));
  out << dump_json(r);
}

void run_freeprod_shift(const Command& cmd, std::ostream& out) {
  const Section f = decode_section(read_json_file(cmd.get("section")));
  Json r = make_report();
  r["section"] = encode_section(shift_section(f, Rational::parse(cmd.get("t"))));
  out << dump_json(r);
}

void run_freeprod_expect(const Command& cmd, std::ostream& out) {
  const Section f = decode_section(read_json_file(cmd.get("section")));
  const auto sg = SemigroupHandle::from_generator(decode_generator(read_json_file(cmd.get("gen"))));
  Json r = make_report();
  r["expectation"] = encode_matrix(expect_E0(f, sg));
  r["l1_norm_bound"] = f.l1_norm_bound();
  out << dump_json(r);
}

void run_index(const Command& cmd, std::ostream& out) {
  if (!cmd.has("units")) throw CliError(ExitCode::Usage, "index: missing --units");
  const Json j = read_json_file(cmd.get("units"));
  IndexReport rep;
  std::optional<CovKernel> kernel;
  if (j.is_object() && j.contains("kernel")) {
    kernel.emplace(decode_kernel(j));
    rep = index_dimension(*kernel);
  } else {
    const auto units = decode_units(j);
    kernel.emplace(CovKernel::of_units(units));
    rep = index_dimension(units);
  }
  Json r = make_report();
  r["dimension"] = rep.dimension;
  r["exact"] = rep.exact;
  r["bound_kind"] = rep.exact ? "exact" : "lower_bound";
  r["kernel"] = encode_kernel(*kernel);
  out << dump_json(r);
}

void run_index_pair(const Command& cmd, std::ostream& out) {
  const auto a = ExtendedIndex::parse(cmd.get("a"));
  const auto b = ExtendedIndex::parse(cmd.get("b"));
  Json r = make_report();
  r["a"] = a.to_string();
  r["b"] = b.to_string();
  r["pairing_possible"] = pairing_possible(a, b);
  out << dump_json(r);
}

void run_gauge_mul(const Command& cmd, std::ostream& out) {
  const auto g = decode_gauge(read_json_file(cmd.get("lhs")));
  const auto h = decode_gauge(read_json_file(cmd.get("rhs")));
  Json r = make_report();
  r["product"] = encode_gauge(gauge_mul(g, h));
  out << dump_json(r);
}

void run_gauge_inverse(const Command& cmd, std::ostream& out) {
  Json r = make_report();
  r["inverse"] = encode_gauge(gauge_inverse(decode_gauge(read_json_file(cmd.get("element")))));
  out << dump_json(r);
}

CorrelationSpec spec_from(const Command& cmd) {
  return CorrelationSpec(parse_real(cmd, "theta", 2.0), parse_real(cmd, "delta", 0.05));
}

void run_offwhite_gram(const Command& cmd, std::ostream& out) {
  const auto spec = spec_from(cmd);
  const auto iv = parse_reals(cmd.get("interval"), "interval");
  if (iv.size() != 2) throw CliError(ExitCode::Usage, "--interval: expected left,right");
  const auto n = parse_counts(cmd.get("n"), "n");
  if (n.size() != 1) throw CliError(ExitCode::Usage, "--n: expected one count");
  const GramOperator g = gram_matrix(spec, Grid{iv[0], iv[1], n[0]});
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(g.entries, Eigen::EigenvaluesOnly);
  Json r = make_report();
  r["theta"] = spec.theta();
  r["delta"] = spec.delta();
  r["epsilon"] = spec.epsilon();
  r["cells"] = g.grid.cells;
  r["width"] = g.grid.width();
  r["min_eigenvalue"] = es.eigenvalues()(0);
  r["max_eigenvalue"] = es.eigenvalues()(es.eigenvalues().size() - 1);
  if (cmd.has("out")) {
    CsvTable t;
    for (Eigen::Index j = 0; j < g.entries.cols(); ++j) t.header.push_back("c" + std::to_string(j));
    for (Eigen::Index i = 0; i < g.entries.rows(); ++i) {
      std::vector<CsvCell> row;
      for (Eigen::Index j = 0; j < g.entries.cols(); ++j) row.emplace_back(g.entries(i, j));
      t.rows.push_back(std::move(row));
    }
    std::ofstream f(cmd.get("out"));
    if (!f || !(f << dump_csv(t))) throw CliError(ExitCode::IO, "cannot write " + cmd.get("out"));
    r["out"] = cmd.get("out");
  } else {
    r["gram"] = encode_real_matrix(g.entries);
  }
  out << dump_json(r);
}

std::vector<Interval> intervals_from(const std::vector<double>& flat) {
  if (flat.size() % 2 != 0) throw CliError(ExitCode::Usage, "--intervals: expected pairs left,right");
  std::vector<Interval> out;
  for (std::size_t i = 0; i < flat.size(); i += 2) out.push_back({flat[i], flat[i + 1]});
  return out;
}

CsvTable quasi_table(const QuasiReport& rep) {
  CsvTable t{{"n", "sigma_min", "hs_defect"}, {}};
  for (const auto& row : rep.rows) {
    t.rows.push_back({static_cast<long long>(row.n), row.sigma_min, row.hs_defect});
  }
  return t;
}

void run_offwhite_quasi(const Command& cmd, std::ostream& out) {
  const auto spec = spec_from(cmd);
  const auto rep = quasiorthogonality_diagnostic(spec, intervals_from(parse_reals(cmd.get("intervals"), "intervals")),
                                                 parse_counts(cmd.get("refine"), "refine"));
  out << dump_csv(quasi_table(rep));
}

void run_offwhite_kakutani(const Command& cmd, std::ostream& out) {
  const auto mu = decode_measure(read_json_file(cmd.get("mu")));
  const auto nu = decode_measure(read_json_file(cmd.get("nu")));
  Json r = make_report();
  r["mean"] = encode_measure(kakutani_mean(mu, nu));
  out << dump_json(r);
}

void run_offwhite_fh(const Command& cmd, std::ostream& out) {
  const Json j = read_json_file(cmd.get("pair"));
  const GaussianGramPair pair{decode_matrix(j.at("gp")), decode_matrix(j.at("gq"))};
  const Matrix b = feldman_hajek_B(pair);
  Json r = make_report();
  r["b"] = encode_matrix(b);
  r["residual"] = feldman_hajek_residual(pair, b);
  r["hs_defect"] = (b - Matrix::Identity(b.rows(), b.cols())).norm();
  out << dump_json(r);
}

void run_offwhite_straighten(const Command& cmd, std::ostream& out) {
  const Json j = read_json_file(cmd.get("pair"));
  const auto res = straighten(decode_matrix(j.at("gram_m")), decode_matrix(j.at("gram_n")), decode_matrix(j.at("cross")));
  Json r = make_report();
  r["q_gram"] = encode_matrix(res.q_gram);
  r["b"] = encode_matrix(res.b);
  r["sigma_min"] = res.sigma_min;
  out << dump_json(r);
}

// ---- sweeps ----

CsvTable sweep_weyl(const Json& spec, random::Rng& rng) {
  const auto dim = spec.value("dim", 4);
  const auto trials = spec.value("trials", 100);
  CsvTable t{{"trial", "l1_distance", "trace_norm", "holds"}, {}};
  for (int k = 0; k < trials; ++k) {
    const Matrix rho = random::density(rng, dim);
    const Matrix sigma = random::density(rng, dim);
    const double l1 = l1_distance(EigenvalueList::of(rho), EigenvalueList::of(sigma));
    const double tn = trace_norm(rho - sigma);
    t.rows.push_back({static_cast<long long>(k), l1, tn, static_cast<long long>(l1 <= tn + 1e-12)});
  }
  return t;
}

CsvTable sweep_interaction(const Json& spec) {
  const auto max = spec.value("max", 12);
  CsvTable t{{"p", "q", "bound", "formula"}, {}};
  for (int q = 2; q <= max; ++q) {
    for (int p = 1; p < q; ++p) {
      const double bound = interaction_lower_bound(uniform_list(static_cast<std::size_t>(p)),
                                                   uniform_list(static_cast<std::size_t>(q)));
      const double formula = 2.0 - 2.0 * p * p / static_cast<double>(q * q);
      t.rows.push_back({static_cast<long long>(p), static_cast<long long>(q), bound, formula});
    }
  }
  return t;
}

CsvTable sweep_quasi(const Json& spec) {
  const CorrelationSpec cs(spec.value("theta", 2.0), spec.value("delta", 0.05));
  const auto flat = spec.value("intervals", std::vector<double>{0.0, 1.0, 1.0, 2.0});
  const auto refine = spec.value("refine", std::vector<std::size_t>{50, 100, 200});
  return quasi_table(quasiorthogonality_diagnostic(cs, intervals_from(flat), refine));
}

CsvTable sweep_stationary(const Json& spec, random::Rng& rng) {
  const auto dims = spec.value("dims", std::vector<int>{2, 3, 4});
  const auto lists = spec.value("lists_per_dim", 5);
  const auto states = spec.value("states", 5);
  const double horizon = spec.value("t", 50.0);
  CsvTable t{{"n", "list", "spectrum_error", "convergence"}, {}};
  for (int n : dims) {
    for (int k = 0; k < lists; ++k) {
      const EigenvalueList lam(random::normalized_list(rng, static_cast<std::size_t>(n)));
      const auto gen = generator_with_spectrum(lam, n);
      const DensityMatrix omega = stationary_state(gen);
      const auto got = EigenvalueList::of(omega.matrix());
      double err = 0.0;
      for (std::size_t i = 0; i < lam.size(); ++i) err = std::max(err, std::abs(got[i] - lam[i]));
      const LinearMap schr = evolve(gen, horizon).predual();
      double conv = 0.0;
      for (int s = 0; s < states; ++s) {
        conv = std::max(conv, trace_norm(schr.apply(random::density(rng, n)) - omega.matrix()));
      }
      t.rows.push_back({static_cast<long long>(n), static_cast<long long>(k), err, conv});
    }
  }
  return t;
}

void run_sweep(const Command& cmd, std::ostream& out) {
  const Json spec = read_json_file(cmd.get("spec"));
  const std::string kind = spec.value("kind", "");
  random::Rng rng(cmd.seed.value_or(0));
  CsvTable t;
  if (kind == "weyl") {
    t = sweep_weyl(spec, rng);
  } else if (kind == "interaction") {
    t = sweep_interaction(spec);
  } else if (kind == "quasi") {
    t = sweep_quasi(spec);
  } else if (kind == "stationary") {
    t = sweep_stationary(spec, rng);
  } else {
    throw Error(ErrorKind::InvalidArgument, "sweep kind must be one of weyl, interaction, quasi, stationary");
  }
  out << dump_csv(t);
}

using Handler = std::function<void(const Command&, std::ostream&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = {
      {"eig", run_eig},
      {"interaction-bound", run_interaction},
      {"cp stationary", run_cp_stationary},
      {"cp evolve", run_cp_evolve},
      {"cp choi", run_cp_choi},
      {"moments", run_moments},
      {"dilate", run_dilate},
      {"dilate expect", run_dilate_expect},
      {"freeprod mul", run_freeprod_mul},
      {"freeprod star", run_freeprod_star},
      {"freeprod shift", run_freeprod_shift},
      {"freeprod expect", run_freeprod_expect},
      {"index", run_index},
      {"index pair", run_index_pair},
      {"gauge mul", run_gauge_mul},
      {"gauge inverse", run_gauge_inverse},
      {"offwhite gram", run_offwhite_gram},
      {"offwhite quasi", run_offwhite_quasi},
      {"offwhite kakutani", run_offwhite_kakutani},
      {"offwhite fh", run_offwhite_fh},
      {"offwhite straighten", run_offwhite_straighten},
      {"sweep", run_sweep},
  };
  return table;
}

}  // namespace

Command parse_command(const std::vector<std::string>& argv, const std::optional<std::string>& env_seed) {
  CLI::App app("ncdyn: finite-dimensional noncommutative dynamics workbench", "ncdyn");
  app.require_subcommand(1);
  app.fallthrough();
  std::string seed_text;
  app.add_option("--seed", seed_text, "seed for randomized runs (NCDYN_SEED overrides)");

  // Storage must outlive parsing; keyed by "<path>|<flag>".
  std::map<std::string, std::string> storage;
  std::map<std::string, CLI::Option*> options;
  std::map<std::string, CLI::App*> apps;
  for (const auto& sub : command_table()) {
    std::string key;
    CLI::App* parent = &app;
    for (std::size_t i = 0; i + 1 < sub.path.size(); ++i) {
      key += (key.empty() ? "" : " ") + sub.path[i];
      parent = apps.at(key);
    }
    key += (key.empty() ? "" : " ") + sub.path.back();
    CLI::App* a = parent->add_subcommand(sub.path.back(), sub.help);
    a->fallthrough();
    if (sub.needs_child) a->require_subcommand(1);
    apps[key] = a;
    for (const auto& f : sub.flags) {
      const std::string id = key + "|" + f.name;
      CLI::Option* opt = a->add_option(std::string("--") + f.name, storage[id], f.help);
      if (f.required) opt->required();
      options[id] = opt;
    }
  }

  std::vector<std::string> reversed(argv.rbegin(), argv.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    Command help;
    help.path = {"help"};
    help.args["text"] = app.help();
    return help;
  } catch (const CLI::ParseError& e) {
    throw CliError(ExitCode::Usage, e.what());
  }

  Command cmd;
  const CLI::App* cur = &app;
  while (true) {
    const auto subs = cur->get_subcommands();
    if (subs.empty()) break;
    cur = subs.front();
    cmd.path.push_back(cur->get_name());
  }
  const std::string key = cmd.name();
  for (const auto& [id, opt] : options) {
    if (id.rfind(key + "|", 0) == 0 && opt->count() > 0) cmd.args[id.substr(key.size() + 1)] = storage[id];
  }
  if (!seed_text.empty()) cmd.seed = parse_seed(seed_text);
  if (env_seed && !env_seed->empty()) cmd.seed = parse_seed(*env_seed);
  if (handlers().count(key) == 0) throw CliError(ExitCode::Usage, "incomplete command: " + key);
  return cmd;
}

void run_command(const Command& cmd, std::ostream& out) {
  if (cmd.path == std::vector<std::string>{"help"}) {
    out << cmd.args.at("text");
    return;
  }
  const auto it = handlers().find(cmd.name());
  if (it == handlers().end()) throw CliError(ExitCode::Usage, "unknown command: " + cmd.name());
  it->second(cmd, out);
}

int main_entry(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  std::optional<std::string> env_seed;
  if (const char* s = std::getenv("NCDYN_SEED")) env_seed = s;
  try {
    const Command cmd = parse_command(argv, env_seed);
    // Buffer so that a failing command leaves stdout empty.
    std::ostringstream buffer;
    run_command(cmd, buffer);
    out << buffer.str();
    out.flush();
    if (!out) throw CliError(ExitCode::IO, "failed writing output");
    return static_cast<int>(ExitCode::Ok);
  } catch (const CliError& e) {
    err << "ncdyn: " << e.what() << '\n';
    return static_cast<int>(e.code());
  } catch (const Error& e) {
    err << "ncdyn: " << e.what() << '\n';
    return static_cast<int>(ExitCode::Validation);
  } catch (const nlohmann::json::exception& e) {
    err << "ncdyn: malformed input: " << e.what() << '\n';
    return static_cast<int>(ExitCode::Validation);
  }
}

}  // namespace ncdyn::cli
