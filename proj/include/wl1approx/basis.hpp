#ifndef WL1APPROX_BASIS_HPP_
#define WL1APPROX_BASIS_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "wl1approx/index_set.hpp"

namespace wl1 {

// 64-bit-seeded generator with documented stream splitting: substreams are
// derived by mixing a stream id (e.g. trial index) into the seed through
// splitmix64. Bit-reproducible within one build.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream);
  static Rng substream(std::uint64_t seed, std::uint64_t stream) {
    return Rng(mix(seed, stream));
  }

  double uniform01() { return dist_(engine_); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  double gaussian() { return normal_(engine_); }
  std::uint64_t integer(std::uint64_t bound);  // uniform in [0, bound)

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> dist_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

// One sample point in (-1,1)^d, stored as a row of the sample matrix.
using SamplePoint = std::vector<double>;

// 1-D orthonormal polynomial values.
// Legendre: three-term recurrence, normalized by sqrt(2k+1) so that the
// L2 norm under the uniform probability measure on (-1,1) is 1.
// Chebyshev: phi_0 = 1, phi_k = sqrt(2) cos(k arccos t).
double eval_basis_1d(BasisKind kind, int degree, double t);

// Tensor product basis value phi_i(t).
double eval_basis(BasisKind kind, const MultiIndex& i, const SamplePoint& t);

// m i.i.d. points from the orthogonality measure: uniform on (-1,1) for
// Legendre, arcsine (cos(pi U)) for Chebyshev.
std::vector<SamplePoint> sample_measure(BasisKind kind, int d, int m, Rng& rng);

// Assembled linear system y = A x + e with the 1/sqrt(m) scaling baked in.
struct DesignProblem {
  std::vector<SamplePoint> points;
  Eigen::MatrixXd A;   // m x n, A(i,j) = phi_{i_j}(t_i)/sqrt(m)
  Eigen::VectorXd y;   // f(t_i)/sqrt(m), before noise
  IndexSet index_set;
  BasisKind kind = BasisKind::Legendre;
  Eigen::VectorXd weights;  // intrinsic weights, one per column

  int m() const { return static_cast<int>(A.rows()); }
  int n() const { return static_cast<int>(A.cols()); }

  // Row-major plain-text dump, 17 significant digits, for cross-checking.
  std::string matrix_dump() const;
};

DesignProblem assemble(BasisKind kind, const IndexSet& index_set,
                       const std::vector<SamplePoint>& points,
                       const std::vector<double>& values);

}  // namespace wl1

#endif  // WL1APPROX_BASIS_HPP_
