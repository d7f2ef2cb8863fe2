#include "wl1approx/index_set.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace wl1 {

double basis_gamma(BasisKind kind) {
  return kind == BasisKind::Legendre ? 2.0 : std::log(3.0) / std::log(2.0);
}

std::string basis_name(BasisKind kind) {
  return kind == BasisKind::Legendre ? "legendre" : "chebyshev";
}

BasisKind basis_from_name(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(), ::tolower);
  if (s == "legendre") return BasisKind::Legendre;
  if (s == "chebyshev") return BasisKind::Chebyshev;
  throw std::invalid_argument("unknown basis: " + name);
}

long long index_order(const MultiIndex& i) {
  long long p = 1;
  for (int e : i) p *= (e + 1);
  return p;
}

bool index_less(const MultiIndex& a, const MultiIndex& b) {
  long long pa = index_order(a), pb = index_order(b);
  if (pa != pb) return pa < pb;
  return a < b;
}

IndexSet::IndexSet(int dimension, std::vector<MultiIndex> indices)
    : dimension_(dimension), indices_(std::move(indices)) {
  if (dimension_ < 1) throw std::invalid_argument("IndexSet: dimension must be >= 1");
  for (const auto& i : indices_) {
    if (static_cast<int>(i.size()) != dimension_)
      throw std::invalid_argument("IndexSet: index of wrong dimension");
    for (int e : i)
      if (e < 0) throw std::invalid_argument("IndexSet: negative entry");
  }
  auto sorted = indices_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("IndexSet: duplicate index");
}

bool IndexSet::contains(const MultiIndex& i) const { return position(i) >= 0; }

int IndexSet::position(const MultiIndex& i) const {
  for (int j = 0; j < size(); ++j)
    if (indices_[j] == i) return j;
  return -1;
}

long long IndexSet::max_order() const {
  long long m = 1;
  for (const auto& i : indices_) m = std::max(m, index_order(i));
  return m;
}

std::string IndexSet::to_text() const {
  std::ostringstream os;
  for (const auto& i : indices_) {
    for (int l = 0; l < dimension_; ++l) {
      if (l) os << ' ';
      os << i[l];
    }
    os << '\n';
  }
  return os.str();
}

IndexSet IndexSet::from_text(const std::string& text, int dimension) {
  std::vector<MultiIndex> indices;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    MultiIndex i;
    int e;
    while (ls >> e) i.push_back(e);
    if (static_cast<int>(i.size()) != dimension)
      throw std::invalid_argument("IndexSet::from_text: wrong entry count");
    indices.push_back(std::move(i));
  }
  return IndexSet(dimension, std::move(indices));
}

namespace {

void hc_recurse(int d, int s, int coord, long long product, MultiIndex& current,
                std::vector<MultiIndex>& out) {
  if (coord == d) {
    out.push_back(current);
    return;
  }
  for (int e = 0; product * (e + 1) <= s; ++e) {
    current[coord] = e;
    hc_recurse(d, s, coord + 1, product * (e + 1), current, out);
  }
  current[coord] = 0;
}

}  // namespace

IndexSet hyperbolic_cross(int d, int s) {
  if (d < 1 || s < 1) throw std::invalid_argument("hyperbolic_cross: d and s must be >= 1");
  std::vector<MultiIndex> out;
  MultiIndex current(d, 0);
  hc_recurse(d, s, 0, 1, current, out);
  std::sort(out.begin(), out.end(), index_less);
  return IndexSet(d, std::move(out));
}

bool is_lower(const IndexSet& S) {
  for (const auto& i : S.indices()) {
    for (int l = 0; l < S.dimension(); ++l) {
      if (i[l] == 0) continue;
      MultiIndex j = i;
      j[l] -= 1;
      if (!S.contains(j)) return false;
    }
  }
  return true;
}

double intrinsic_weight(BasisKind kind, const MultiIndex& i) {
  if (kind == BasisKind::Legendre) {
    double w = 1.0;
    for (int e : i) w *= std::sqrt(2.0 * e + 1.0);
    return w;
  }
  int nonzero = 0;
  for (int e : i)
    if (e != 0) ++nonzero;
  return std::pow(2.0, 0.5 * nonzero);
}

double weighted_cardinality(const IndexSet& S, BasisKind kind) {
  double total = 0.0;
  for (const auto& i : S.indices()) {
    double w = intrinsic_weight(kind, i);
    total += w * w;
  }
  return total;
}

void for_each_lower_subset(int d, int s,
                           const std::function<void(const std::vector<int>&)>& visit) {
  IndexSet universe = hyperbolic_cross(d, s);
  const int n = universe.size();

  // Predecessor positions of each universe element (i - e_l for nonzero i_l).
  std::map<MultiIndex, int> pos;
  for (int j = 0; j < n; ++j) pos[universe[j]] = j;
  std::vector<std::vector<int>> preds(n);
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < d; ++l) {
      if (universe[j][l] == 0) continue;
      MultiIndex p = universe[j];
      p[l] -= 1;
      preds[j].push_back(pos.at(p));
    }
  }

  std::vector<char> in_set(n, 0);
  std::vector<int> members;
  visit(members);  // empty lower set

  // Members are kept ascending in the total order; the total order extends
  // the componentwise order, so candidates are always past the last member.
  std::function<void(int)> dfs = [&](int first_candidate) {
    if (static_cast<int>(members.size()) == s) return;
    for (int c = first_candidate; c < n; ++c) {
      bool ok = true;
      for (int p : preds[c])
        if (!in_set[p]) {
          ok = false;
          break;
        }
      if (!ok) continue;
      in_set[c] = 1;
      members.push_back(c);
      visit(members);
      dfs(c + 1);
      members.pop_back();
      in_set[c] = 0;
    }
  };
  dfs(0);
}

namespace {

void check_enumeration_guard(int s, int d) {
  if (s > kEnumerationMaxS || d > kEnumerationMaxD)
    throw std::invalid_argument(
        "lower-set enumeration guard exceeded (s <= 12, d <= 6)");
}

}  // namespace

double intrinsic_lower_sparsity(BasisKind kind, int s, int d, SparsityMode mode) {
  if (s < 1 || d < 1) throw std::invalid_argument("intrinsic_lower_sparsity: s, d >= 1");
  if (mode == SparsityMode::Surrogate) return std::pow(double(s), basis_gamma(kind));
  check_enumeration_guard(s, d);
  IndexSet universe = hyperbolic_cross(d, s);
  std::vector<double> wsq(universe.size());
  for (int j = 0; j < universe.size(); ++j) {
    double w = intrinsic_weight(kind, universe[j]);
    wsq[j] = w * w;
  }
  double best = 0.0;
  for_each_lower_subset(d, s, [&](const std::vector<int>& members) {
    double total = 0.0;
    for (int j : members) total += wsq[j];
    best = std::max(best, total);
  });
  return best;
}

double best_lower_s_term(const std::vector<double>& z, const IndexSet& Lambda,
                         int s, BasisKind kind) {
  if (static_cast<int>(z.size()) != Lambda.size())
    throw std::invalid_argument("best_lower_s_term: z/index set size mismatch");
  if (s < 0) throw std::invalid_argument("best_lower_s_term: s >= 0");
  const int d = Lambda.dimension();
  const int s_hc = static_cast<int>(std::min<long long>(Lambda.max_order(),
                                                        std::max(s, 1)));
  check_enumeration_guard(std::max(s, 1), d);

  double full = 0.0;
  std::vector<double> weighted_abs(Lambda.size());
  for (int j = 0; j < Lambda.size(); ++j) {
    weighted_abs[j] = intrinsic_weight(kind, Lambda[j]) * std::abs(z[j]);
    full += weighted_abs[j];
  }
  if (s == 0) return full;

  // min over lower S of ||z on S^c||_{1,u} = full - max over S of the
  // captured weighted mass. Lower subsets of cardinality <= s live inside
  // the hyperbolic cross of order s; map its positions back into Lambda.
  IndexSet universe = hyperbolic_cross(d, std::min(s, s_hc));
  std::vector<double> captured(universe.size(), 0.0);
  for (int j = 0; j < universe.size(); ++j) {
    int p = Lambda.position(universe[j]);
    if (p >= 0) captured[j] = weighted_abs[p];
  }
  double best = 0.0;
  for_each_lower_subset(d, std::min(s, s_hc), [&](const std::vector<int>& members) {
    if (static_cast<int>(members.size()) > s) return;
    double total = 0.0;
    for (int j : members) total += captured[j];
    best = std::max(best, total);
  });
  return full - best;
}

}  // namespace wl1
