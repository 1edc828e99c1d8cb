#include "ncdyn/cli/codec.hpp"

#include <fstream>

#include "ncdyn/cli/exit_codes.hpp"
#include "ncdyn/error.hpp"

namespace ncdyn::cli {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorKind::InvalidArgument, "malformed JSON: " + what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::vector<double> number_array(const Json& j, const char* what) {
  if (!j.is_array()) malformed(std::string(what) + " must be an array");
  std::vector<double> out;
  for (const auto& x : j) {
    if (!x.is_number()) malformed(std::string(what) + " entries must be numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace

Json encode_matrix(const Matrix& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      re.push_back(m(i, j).real());
      im.push_back(m(i, j).imag());
    }
  }
  Json out;
  out["rows"] = m.rows();
  out["cols"] = m.cols();
  out["re"] = std::move(re);
  out["im"] = std::move(im);
  return out;
}

Matrix decode_matrix(const Json& j) {
  const auto& rows_j = field(j, "rows");
  const auto& cols_j = field(j, "cols");
  if (!rows_j.is_number_unsigned() || !cols_j.is_number_unsigned()) malformed("rows/cols must be nonnegative integers");
  const auto rows = rows_j.get<Eigen::Index>();
  const auto cols = cols_j.get<Eigen::Index>();
  const auto re = number_array(field(j, "re"), "re");
  const std::vector<double> im = j.contains("im") ? number_array(j.at("im"), "im") : std::vector<double>(re.size(), 0.0);
  if (static_cast<Eigen::Index>(re.size()) != rows * cols || im.size() != re.size()) {
    malformed("entry count must equal rows*cols");
  }
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto k = static_cast<std::size_t>(i * cols + c);
      m(i, c) = Complex(re[k], im[k]);
    }
  }
  return m;
}

Json encode_real_matrix(const RealMatrix& m) { return encode_matrix(m.cast<Complex>()); }

Json encode_matrices(const std::vector<Matrix>& ms) {
  Json out = Json::array();
  for (const auto& m : ms) out.push_back(encode_matrix(m));
  return out;
}

std::vector<Matrix> decode_matrices(const Json& j) {
  if (!j.is_array()) malformed("expected an array of matrices");
  std::vector<Matrix> out;
  for (const auto& x : j) out.push_back(decode_matrix(x));
  return out;
}

Json encode_vector(const Vector& v) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    re.push_back(v(i).real());
    im.push_back(v(i).imag());
  }
  Json out;
  out["re"] = std::move(re);
  out["im"] = std::move(im);
  return out;
}

Vector decode_vector(const Json& j) {
  const auto re = number_array(field(j, "re"), "re");
  const std::vector<double> im = j.contains("im") ? number_array(j.at("im"), "im") : std::vector<double>(re.size(), 0.0);
  if (im.size() != re.size()) malformed("re and im lengths differ");
  Vector v(static_cast<Eigen::Index>(re.size()));
  for (std::size_t i = 0; i < re.size(); ++i) v(static_cast<Eigen::Index>(i)) = Complex(re[i], im[i]);
  return v;
}

Complex decode_complex(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  const auto parts = number_array(j, "complex");
  if (parts.size() != 2) malformed("complex numbers are [re, im]");
  return {parts[0], parts[1]};
}

Json encode_complex(Complex z) { return Json::array({z.real(), z.imag()}); }

Json encode_generator(const GKLSGenerator& gen) {
  Json out;
  out["hamiltonian"] = encode_matrix(gen.hamiltonian());
  out["jumps"] = encode_matrices(gen.jumps());
  return out;
}

GKLSGenerator decode_generator(const Json& j) {
  Matrix h = decode_matrix(field(j, "hamiltonian"));
  std::vector<Matrix> jumps = j.contains("jumps") ? decode_matrices(j.at("jumps")) : std::vector<Matrix>{};
  return {std::move(h), std::move(jumps)};
}

Json encode_map(const CPMap& phi) {
  Json out;
  out["kraus"] = encode_matrices(phi.kraus());
  return out;
}

CPMap decode_map(const Json& j) { return CPMap(decode_matrices(field(j, "kraus"))); }

Json encode_section(const Section& f) {
  Json out = Json::array();
  for (const auto& [word, tensors] : f.terms()) {
    Json w = Json::array();
    for (const auto& t : word.times()) w.push_back(t.to_string());
    Json ts = Json::array();
    for (const auto& t : tensors) ts.push_back(encode_matrices(t));
    Json term;
    term["word"] = std::move(w);
    term["tensors"] = std::move(ts);
    out.push_back(std::move(term));
  }
  return out;
}

Section decode_section(const Json& j, Eigen::Index dim) {
  if (!j.is_array()) malformed("a section is an array of {word, tensors}");
  std::vector<std::pair<FreeWord, std::vector<ElementaryTensor>>> terms;
  for (const auto& term : j) {
    std::vector<Rational> times;
    for (const auto& x : field(term, "word")) {
      if (x.is_number_integer()) {
        times.emplace_back(x.get<std::int64_t>());
      } else if (x.is_string()) {
        times.push_back(Rational::parse(x.get<std::string>()));
      } else {
        malformed("word entries are integers or rational strings like \"3/2\"");
      }
    }
    std::vector<ElementaryTensor> tensors;
    for (const auto& t : field(term, "tensors")) tensors.push_back(decode_matrices(t));
    terms.emplace_back(FreeWord(std::move(times)), std::move(tensors));
  }
  for (const auto& [w, ts] : terms) {
    for (const auto& t : ts) {
      if (!t.empty()) {
        dim = t.front().rows();
        break;
      }
    }
  }
  Section f(dim);
  for (auto& [w, ts] : terms) {
    for (auto& t : ts) f.add_term(w, std::move(t));
  }
  return f;
}

Json encode_unit(const ExpUnit& u) {
  Json out;
  out["a"] = encode_complex(u.a);
  out["zeta"] = encode_vector(u.zeta);
  return out;
}

ExpUnit decode_unit(const Json& j) { return {decode_complex(field(j, "a")), decode_vector(field(j, "zeta"))}; }

std::vector<ExpUnit> decode_units(const Json& j) {
  if (!j.is_array()) malformed("units file is an array of {a, zeta}");
  std::vector<ExpUnit> out;
  for (const auto& u : j) out.push_back(decode_unit(u));
  return out;
}

Json encode_kernel(const CovKernel& k) {
  Json out;
  out["labels"] = k.labels();
  out["kernel"] = encode_matrix(k.values());
  return out;
}

CovKernel decode_kernel(const Json& j) {
  Matrix c = decode_matrix(field(j, "kernel"));
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    labels = j.at("labels").get<std::vector<std::string>>();
  } else {
    for (Eigen::Index i = 0; i < c.rows(); ++i) labels.push_back("u" + std::to_string(i));
  }
  return {std::move(labels), std::move(c)};
}

Json encode_gauge(const GaugeElement& g) {
  Json out;
  out["lambda"] = g.lambda;
  out["xi"] = encode_vector(g.xi);
  out["u"] = encode_matrix(g.u);
  return out;
}

GaugeElement decode_gauge(const Json& j) {
  const auto& lam = field(j, "lambda");
  if (!lam.is_number()) malformed("lambda must be a number");
  GaugeElement g{lam.get<double>(), decode_vector(field(j, "xi")), decode_matrix(field(j, "u"))};
  g.validate();
  return g;
}

Json encode_measure(const DiscreteMeasure& m) {
  Json out;
  out["atoms"] = m.atoms;
  out["weights"] = m.weights;
  return out;
}

DiscreteMeasure decode_measure(const Json& j) {
  DiscreteMeasure m{field(j, "atoms").get<std::vector<std::string>>(), number_array(field(j, "weights"), "weights")};
  m.validate();
  return m;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CliError(ExitCode::FileNotFound, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, path.string() + ": " + e.what());
  }
}

}  // namespace ncdyn::cli
