#ifndef WL1APPROX_INDEX_SET_HPP_
#define WL1APPROX_INDEX_SET_HPP_

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wl1 {

// A multi-index i = (i_1,...,i_d) of non-negative integers.
using MultiIndex = std::vector<int>;

enum class BasisKind { Legendre, Chebyshev };

// Weight-growth exponent: K(s) ~ s^gamma.
double basis_gamma(BasisKind kind);

std::string basis_name(BasisKind kind);
BasisKind basis_from_name(const std::string& name);

// prod_l (i_l + 1), the hyperbolic-cross "order" of a multi-index.
long long index_order(const MultiIndex& i);

// Fixed total order on multi-indices: ascending prod(i_l+1), ties broken
// lexicographically. Compatible with the componentwise partial order, so
// every prefix of a sorted lower set is itself lower.
bool index_less(const MultiIndex& a, const MultiIndex& b);

// An ordered set of distinct multi-indices of common dimension d.
// The ordering defines the column layout of design matrices.
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(int dimension, std::vector<MultiIndex> indices);

  int dimension() const { return dimension_; }
  int size() const { return static_cast<int>(indices_.size()); }
  const MultiIndex& operator[](int j) const { return indices_[j]; }
  const std::vector<MultiIndex>& indices() const { return indices_; }

  bool contains(const MultiIndex& i) const;
  // Position of i in column order, or -1.
  int position(const MultiIndex& i) const;

  // max over the set of prod(i_l+1); equals s for a hyperbolic cross of
  // order s. Returns 1 for the empty set.
  long long max_order() const;

  // One line per index, space-separated entries, in column order.
  std::string to_text() const;
  static IndexSet from_text(const std::string& text, int dimension);

 private:
  int dimension_ = 0;
  std::vector<MultiIndex> indices_;
};

// The hyperbolic cross { i : prod(i_l+1) <= s }, sorted by the fixed
// total order. Generated by coordinate recursion with a running product
// bound, never by filtering a full grid.
IndexSet hyperbolic_cross(int d, int s);

// True iff S is downward closed under the componentwise order.
bool is_lower(const IndexSet& S);

// Uniform norm of the orthonormal tensor basis function phi_i.
// Legendre: prod sqrt(2 i_l + 1). Chebyshev: 2^(#nonzero/2).
double intrinsic_weight(BasisKind kind, const MultiIndex& i);

// |S|_u = sum of squared intrinsic weights over S.
double weighted_cardinality(const IndexSet& S, BasisKind kind);

// Visits every lower subset of the hyperbolic cross of order s in
// dimension d with cardinality <= s, including the empty set. The callback
// receives the member positions within hyperbolic_cross(d, s).
// Guarded: intended for oracle-scale enumeration only.
void for_each_lower_subset(int d, int s,
                           const std::function<void(const std::vector<int>&)>& visit);

inline constexpr int kEnumerationMaxS = 12;
inline constexpr int kEnumerationMaxD = 6;

enum class SparsityMode { Enumerate, Surrogate };

// K(s): max weighted cardinality over lower sets of size <= s.
// Enumerate gives the exact maximum (guard: s <= 12, d <= 6);
// Surrogate returns the upper bound s^gamma.
double intrinsic_lower_sparsity(BasisKind kind, int s, int d,
                                SparsityMode mode = SparsityMode::Surrogate);

// Exact best s-term approximation error in lower sets,
// sigma_{s,L}(z)_{1,u} = min over lower S, |S| <= s, of the weighted l1
// norm of z outside S. Enumeration guard as above. s = 0 gives the full
// weighted l1 norm (empty lower set).
double best_lower_s_term(const std::vector<double>& z, const IndexSet& Lambda,
                         int s, BasisKind kind);

}  // namespace wl1

#endif  // WL1APPROX_INDEX_SET_HPP_
