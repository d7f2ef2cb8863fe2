#include "wl1approx/basis.hpp"

#include <cmath>
#include <sstream>

namespace wl1 {

std::uint64_t Rng::mix(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 on seed ^ golden-ratio-scaled stream id
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::integer(std::uint64_t bound) {
  std::uniform_int_distribution<std::uint64_t> d(0, bound - 1);
  return d(engine_);
}

double eval_basis_1d(BasisKind kind, int degree, double t) {
  if (degree < 0) throw std::invalid_argument("eval_basis_1d: negative degree");
  if (kind == BasisKind::Chebyshev) {
    if (degree == 0) return 1.0;
    return std::sqrt(2.0) * std::cos(degree * std::acos(t));
  }
  // Unnormalized Legendre recurrence, then sqrt(2k+1) normalization.
  if (degree == 0) return 1.0;
  double pm1 = 1.0, p = t;
  for (int k = 1; k < degree; ++k) {
    double pnext = ((2.0 * k + 1.0) * t * p - k * pm1) / (k + 1.0);
    pm1 = p;
    p = pnext;
  }
  return std::sqrt(2.0 * degree + 1.0) * p;
}

double eval_basis(BasisKind kind, const MultiIndex& i, const SamplePoint& t) {
  if (i.size() != t.size()) throw std::invalid_argument("eval_basis: dimension mismatch");
  double v = 1.0;
  for (std::size_t l = 0; l < i.size(); ++l) v *= eval_basis_1d(kind, i[l], t[l]);
  return v;
}

std::vector<SamplePoint> sample_measure(BasisKind kind, int d, int m, Rng& rng) {
  if (m < 1 || d < 1) throw std::invalid_argument("sample_measure: m, d >= 1");
  std::vector<SamplePoint> points(m, SamplePoint(d));
  for (int i = 0; i < m; ++i) {
    for (int l = 0; l < d; ++l) {
      if (kind == BasisKind::Legendre) {
        double t;
        do {
          t = rng.uniform(-1.0, 1.0);
        } while (t <= -1.0 || t >= 1.0);
        points[i][l] = t;
      } else {
        double u;
        do {
          u = rng.uniform01();
        } while (u <= 0.0 || u >= 1.0);
        points[i][l] = std::cos(M_PI * u);
      }
    }
  }
  return points;
}

DesignProblem assemble(BasisKind kind, const IndexSet& index_set,
                       const std::vector<SamplePoint>& points,
                       const std::vector<double>& values) {
  const int m = static_cast<int>(points.size());
  const int n = index_set.size();
  if (m < 1) throw std::invalid_argument("assemble: need at least one point");
  if (values.size() != points.size())
    throw std::invalid_argument("assemble: points/values size mismatch");
  for (const auto& p : points)
    if (static_cast<int>(p.size()) != index_set.dimension())
      throw std::invalid_argument("assemble: point dimension mismatch");

  DesignProblem problem;
  problem.points = points;
  problem.index_set = index_set;
  problem.kind = kind;
  problem.A.resize(m, n);
  problem.y.resize(m);
  problem.weights.resize(n);
  const double scale = 1.0 / std::sqrt(double(m));
  for (int j = 0; j < n; ++j)
    problem.weights(j) = intrinsic_weight(kind, index_set[j]);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j)
      problem.A(i, j) = scale * eval_basis(kind, index_set[j], points[i]);
    problem.y(i) = scale * values[i];
  }
  return problem;
}

std::string DesignProblem::matrix_dump() const {
  std::ostringstream os;
  os.precision(17);
  os << std::scientific;
  for (int i = 0; i < m(); ++i) {
    for (int j = 0; j < n(); ++j) {
      if (j) os << ' ';
      os << A(i, j);
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace wl1
