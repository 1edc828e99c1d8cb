#include "ncdyn/freeprod.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "ncdyn/error.hpp"

namespace ncdyn {

namespace {

std::int64_t narrow(__int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw Error(ErrorKind::InvalidArgument, "rational arithmetic overflow");
  }
  return static_cast<std::int64_t>(v);
}

std::int64_t parse_int(const std::string& s) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw Error(ErrorKind::InvalidArgument, "bad rational: " + s);
  return v;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorKind::InvalidArgument, "rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = g == 0 ? 0 : num / g;
  den_ = g == 0 ? 1 : den / g;
}

Rational Rational::parse(const std::string& text) {
  if (auto slash = text.find('/'); slash != std::string::npos) {
    return {parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1))};
  }
  if (auto dot = text.find('.'); dot != std::string::npos) {
    const std::string whole = text.substr(0, dot);
    const std::string frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 15) throw Error(ErrorKind::InvalidArgument, "bad rational: " + text);
    for (char c : frac) {
      if (!std::isdigit(static_cast<unsigned char>(c))) throw Error(ErrorKind::InvalidArgument, "bad rational: " + text);
    }
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const bool negative = !whole.empty() && whole[0] == '-';
    const std::int64_t w = (whole.empty() || whole == "-") ? 0 : parse_int(whole);
    const std::int64_t f = parse_int(frac);
    const std::int64_t num = narrow(static_cast<__int128>(std::abs(w)) * den + f);
    return {negative ? -num : num, den};
  }
  return {parse_int(text), 1};
}

std::string Rational::to_string() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  const __int128 num = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
  const __int128 den = static_cast<__int128>(a.den_) * b.den_;
  // Reduce in 128-bit before narrowing.
  __int128 x = num < 0 ? -num : num, y = den;
  while (y != 0) {
    const __int128 r = x % y;
    x = y;
    y = r;
  }
  const __int128 g = x == 0 ? 1 : x;
  return {narrow(num / g), narrow(den / g)};
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
  const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

FreeWord::FreeWord(std::vector<Rational> times) : times_(std::move(times)) {
  if (times_.empty()) throw Error(ErrorKind::InvalidArgument, "FreeWord: empty word");
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (times_[i] < Rational(0)) throw Error(ErrorKind::InvalidArgument, "FreeWord: negative time");
    if (i > 0 && times_[i] == times_[i - 1]) {
      throw Error(ErrorKind::InvalidArgument, "FreeWord: adjacent entries must differ");
    }
  }
}

std::vector<double> FreeWord::as_doubles() const {
  std::vector<double> out;
  out.reserve(times_.size());
  for (const auto& t : times_) out.push_back(t.to_double());
  return out;
}

bool merges(const FreeWord& s, const FreeWord& t) { return s.times().back() == t.times().front(); }

FreeWord word_mul(const FreeWord& s, const FreeWord& t) {
  std::vector<Rational> out = s.times();
  const auto skip = merges(s, t) ? 1 : 0;
  out.insert(out.end(), t.times().begin() + skip, t.times().end());
  return FreeWord(std::move(out));
}

FreeWord word_star(const FreeWord& s) {
  return FreeWord(std::vector<Rational>(s.times().rbegin(), s.times().rend()));
}

Section Section::delta(const FreeWord& word, ElementaryTensor tensor) {
  if (tensor.empty()) throw Error(ErrorKind::LengthMismatch, "Section::delta: empty tensor");
  Section f(tensor.front().rows());
  f.add_term(word, std::move(tensor));
  return f;
}

Section Section::theta(const Rational& t, const Matrix& a) { return delta(FreeWord({t}), {a}); }

void Section::add_term(const FreeWord& word, ElementaryTensor tensor) {
  if (tensor.size() != word.size()) {
    throw Error(ErrorKind::LengthMismatch, "Section: tensor length must equal word length");
  }
  for (const auto& a : tensor) {
    if (a.rows() != n_ || a.cols() != n_) throw Error(ErrorKind::DimensionMismatch, "Section: matrix dimension");
  }
  terms_[word].push_back(std::move(tensor));
}

Section Section::operator+(const Section& other) const {
  if (other.n_ != n_) throw Error(ErrorKind::DimensionMismatch, "Section::operator+");
  Section out = *this;
  for (const auto& [word, tensors] : other.terms_) {
    for (const auto& t : tensors) out.terms_[word].push_back(t);
  }
  return out;
}

Section Section::scaled(Complex c) const {
  Section out = *this;
  for (auto& [word, tensors] : out.terms_) {
    for (auto& t : tensors) t.front() *= c;
  }
  return out;
}

double Section::l1_norm_bound() const {
  double total = 0.0;
  for (const auto& [word, tensors] : terms_) {
    for (const auto& t : tensors) {
      double prod = 1.0;
      for (const auto& a : t) prod *= operator_norm(a);
      total += prod;
    }
  }
  return total;
}

Section section_mul(const Section& f, const Section& g) {
  if (f.dim() != g.dim()) throw Error(ErrorKind::DimensionMismatch, "section_mul");
  Section out(f.dim());
  for (const auto& [lw, ltensors] : f.terms()) {
    for (const auto& [rw, rtensors] : g.terms()) {
      const FreeWord nu = word_mul(lw, rw);
      const bool merge = merges(lw, rw);
      for (const auto& x : ltensors) {
        for (const auto& y : rtensors) {
          ElementaryTensor t(x.begin(), x.end());
          if (merge) {
            t.back() = t.back() * y.front();
            t.insert(t.end(), y.begin() + 1, y.end());
          } else {
            t.insert(t.end(), y.begin(), y.end());
          }
          out.add_term(nu, std::move(t));
        }
      }
    }
  }
  return out;
}

Section section_star(const Section& f) {
  Section out(f.dim());
  for (const auto& [word, tensors] : f.terms()) {
    const FreeWord w = word_star(word);
    for (const auto& t : tensors) {
      ElementaryTensor r;
      for (auto it = t.rbegin(); it != t.rend(); ++it) r.push_back(it->adjoint());
      out.add_term(w, std::move(r));
    }
  }
  return out;
}

Section shift_section(const Section& f, const Rational& t) {
  if (t < Rational(0)) throw Error(ErrorKind::InvalidArgument, "shift_section: t must be nonnegative");
  Section out(f.dim());
  for (const auto& [word, tensors] : f.terms()) {
    std::vector<Rational> shifted;
    for (const auto& s : word.times()) shifted.push_back(s + t);
    const FreeWord w(std::move(shifted));
    for (const auto& x : tensors) out.add_term(w, x);
  }
  return out;
}

Matrix expect_E0(const Section& f, const SemigroupHandle& sg) {
  if (f.dim() != sg.dim()) throw Error(ErrorKind::DimensionMismatch, "expect_E0");
  Matrix total = Matrix::Zero(f.dim(), f.dim());
  for (const auto& [word, tensors] : f.terms()) {
    const auto times = word.as_doubles();
    // One plan per word; evaluation is linear in the tensor.
    const MomentExpr plan = moment_plan(times);
    for (const auto& t : tensors) total += evaluate(plan, sg, t);
  }
  return total;
}

namespace {

Vector dense_fiber(const std::vector<ElementaryTensor>& tensors, Eigen::Index n, std::size_t k) {
  const auto len = static_cast<Eigen::Index>(std::pow(static_cast<double>(n * n), static_cast<double>(k)));
  Vector acc = Vector::Zero(len);
  for (const auto& t : tensors) {
    Matrix v = vec(t.front());
    for (std::size_t i = 1; i < t.size(); ++i) v = kron(v, Matrix(vec(t[i])));
    acc += v.col(0);
  }
  return acc;
}

}  // namespace

double section_distance(const Section& f, const Section& g) {
  if (f.dim() != g.dim()) throw Error(ErrorKind::DimensionMismatch, "section_distance");
  const std::vector<ElementaryTensor> none;
  double total = 0.0;
  std::set<FreeWord> words;
  for (const auto& [w, t] : f.terms()) words.insert(w);
  for (const auto& [w, t] : g.terms()) words.insert(w);
  for (const auto& w : words) {
    const auto fi = f.terms().find(w);
    const auto gi = g.terms().find(w);
    const auto& ft = fi == f.terms().end() ? none : fi->second;
    const auto& gt = gi == g.terms().end() ? none : gi->second;
    total += (dense_fiber(ft, f.dim(), w.size()) - dense_fiber(gt, f.dim(), w.size())).norm();
  }
  return total;
}

}  // namespace ncdyn
