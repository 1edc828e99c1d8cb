#include "ncdyn/moments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "ncdyn/error.hpp"

namespace ncdyn {

SemigroupHandle::SemigroupHandle(Eigen::Index n, Evaluator evaluator)
    : n_(n), evaluator_(std::move(evaluator)) {}

SemigroupHandle SemigroupHandle::from_generator(const GKLSGenerator& gen) {
  const Eigen::Index n = gen.dim();
  Matrix l = gen.heisenberg_action();
  return {n, [n, l = std::move(l)](double t) { return LinearMap(n, expm(l, t)); }};
}

SemigroupHandle SemigroupHandle::from_map(const LinearMap& phi) {
  const Eigen::Index n = phi.dim();
  return {n, [phi](double t) {
            const double k = std::round(t);
            if (t < 0.0 || std::abs(t - k) > kTimeTol) {
              throw Error(ErrorKind::InvalidArgument,
                          "discrete semigroup evaluated at a non-integer time");
            }
            LinearMap out = LinearMap::identity(phi.dim());
            for (long step = 0; step < static_cast<long>(k); ++step) out = phi.compose(out);
            return out;
          }};
}

LinearMap SemigroupHandle::at(double t) const {
  LinearMap p = evaluator_(t);
  if (p.dim() != n_) throw Error(ErrorKind::DimensionMismatch, "semigroup evaluator changed dimension");
  return p;
}

Matrix SemigroupHandle::apply(double t, const Matrix& a) const { return at(t).apply(a); }

SplitRule leftmost_split() {
  return [](const std::vector<std::size_t>& zeros) { return zeros.front(); };
}

SplitRule rightmost_split() {
  return [](const std::vector<std::size_t>& zeros) { return zeros.back(); };
}

namespace {

void append_factor(std::vector<MomentExpr>& factors, MomentExpr e) {
  if (auto* p = std::get_if<MomentExpr::Product>(&e.node)) {
    for (auto& f : p->factors) factors.push_back(std::move(f));
  } else {
    factors.push_back(std::move(e));
  }
}

MomentExpr plan_range(std::vector<double> times, std::size_t offset, const SplitRule& rule) {
  if (times.empty()) return {MomentExpr::Product{}};
  const double m = *std::min_element(times.begin(), times.end());
  if (m > kTimeTol) {
    for (auto& t : times) t = (t - m <= kTimeTol) ? 0.0 : t - m;
    return {MomentExpr::Apply{m, std::make_shared<const MomentExpr>(plan_range(std::move(times), offset, rule))}};
  }
  std::vector<std::size_t> zeros;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] <= kTimeTol) zeros.push_back(i);
  }
  const std::size_t split = rule(zeros);
  if (std::find(zeros.begin(), zeros.end(), split) == zeros.end()) {
    throw Error(ErrorKind::InvalidArgument, "split rule returned a position that is not a zero entry");
  }
  MomentExpr::Product prod;
  std::vector<double> left(times.begin(), times.begin() + static_cast<std::ptrdiff_t>(split));
  std::vector<double> right(times.begin() + static_cast<std::ptrdiff_t>(split) + 1, times.end());
  if (!left.empty()) append_factor(prod.factors, plan_range(std::move(left), offset, rule));
  prod.factors.push_back({MomentExpr::Leaf{offset + split}});
  if (!right.empty()) append_factor(prod.factors, plan_range(std::move(right), offset + split + 1, rule));
  return {std::move(prod)};
}

std::string format_time(double t) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, t);
  return {buf, res.ptr};
}

std::string leaf_name(std::size_t index) {
  if (index < 26) return std::string(1, static_cast<char>('a' + index));
  return "a" + std::to_string(index + 1);
}

void check_operands(const SemigroupHandle& sg, const std::vector<double>& times,
                    const std::vector<Matrix>& mats) {
  if (times.size() != mats.size() || times.empty()) {
    throw Error(ErrorKind::LengthMismatch, "moment: need as many matrices as times (at least one)");
  }
  for (const auto& a : mats) {
    if (a.rows() != sg.dim() || a.cols() != sg.dim()) {
      throw Error(ErrorKind::DimensionMismatch, "moment: matrix dimension differs from the semigroup's");
    }
  }
}

}  // namespace

MomentExpr moment_plan(const std::vector<double>& times, const SplitRule& rule) {
  for (double t : times) {
    if (!(t >= 0.0)) throw Error(ErrorKind::InvalidArgument, "moment: times must be nonnegative");
  }
  return plan_range(times, 0, rule);
}

std::string render(const MomentExpr& expr) {
  return std::visit(
      [](const auto& node) -> std::string {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, MomentExpr::Apply>) {
          return "P" + format_time(node.t) + "(" + render(*node.inner) + ")";
        } else if constexpr (std::is_same_v<T, MomentExpr::Product>) {
          if (node.factors.empty()) return "1";
          std::string s;
          for (std::size_t i = 0; i < node.factors.size(); ++i) {
            if (i > 0) s += "·";
            s += render(node.factors[i]);
          }
          return s;
        } else {
          return leaf_name(node.index);
        }
      },
      expr.node);
}

Matrix evaluate(const MomentExpr& expr, const SemigroupHandle& sg, const std::vector<Matrix>& mats) {
  return std::visit(
      [&](const auto& node) -> Matrix {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, MomentExpr::Apply>) {
          return sg.apply(node.t, evaluate(*node.inner, sg, mats));
        } else if constexpr (std::is_same_v<T, MomentExpr::Product>) {
          Matrix acc = Matrix::Identity(sg.dim(), sg.dim());
          for (const auto& f : node.factors) acc = acc * evaluate(f, sg, mats);
          return acc;
        } else {
          return mats.at(node.index);
        }
      },
      expr.node);
}

Matrix moment(const SemigroupHandle& sg, const std::vector<double>& times,
              const std::vector<Matrix>& mats, const SplitRule& rule) {
  check_operands(sg, times, mats);
  return evaluate(moment_plan(times, rule), sg, mats);
}

Matrix ordered_moment(const SemigroupHandle& sg, const std::vector<double>& times,
                      const std::vector<Matrix>& mats) {
  check_operands(sg, times, mats);
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0)) throw Error(ErrorKind::InvalidArgument, "ordered_moment: negative time");
    if (i > 0 && times[i] < times[i - 1]) {
      throw Error(ErrorKind::NotSorted, "ordered_moment: times must be nondecreasing");
    }
  }
  const auto step = [&](double gap, const Matrix& x) { return gap > kTimeTol ? sg.apply(gap, x) : x; };
  const std::size_t k = times.size();
  Matrix acc = mats[k - 1];
  for (std::size_t j = k - 1; j > 0; --j) {
    acc = mats[j - 1] * step(times[j] - times[j - 1], acc);
  }
  return step(times[0], acc);
}

}  // namespace ncdyn
