#pragma once

#include <array>
#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "angularft/exact.hpp"

namespace angularft {

/// Raised for malformed arguments (missing indices, non-unit vectors, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Free tensor index. Ordered naturally: letters first, then the numeric suffix
/// (i2 < i10).
class IndexName {
 public:
  IndexName() = default;
  IndexName(std::string symbol) : symbol_(std::move(symbol)) {}  // NOLINT
  IndexName(const char* symbol) : symbol_(symbol) {}             // NOLINT

  const std::string& str() const { return symbol_; }

  friend std::strong_ordering operator<=>(const IndexName& a, const IndexName& b);
  friend bool operator==(const IndexName& a, const IndexName& b) { return a.symbol_ == b.symbol_; }

 private:
  std::string symbol_;
};

using IndexList = std::vector<IndexName>;

/// i1, i2, ..., iN
IndexList numbered_indices(int count, const std::string& stem = "i");

enum class Side { momentum, position };

/// Product of Kronecker deltas and unit-vector components. In canonical form every
/// delta pair is ordered, pairs are sorted, and hats are sorted.
struct TensorTerm {
  std::vector<std::pair<IndexName, IndexName>> deltas;
  std::vector<IndexName> hats;

  void canonicalize();
  std::size_t index_count() const { return 2 * deltas.size() + hats.size(); }
  std::string str() const;

  friend bool operator==(const TensorTerm&, const TensorTerm&) = default;
};

/// Canonical term order: more hats first, then lexicographic on hats, then deltas.
struct TermOrder {
  bool operator()(const TensorTerm& a, const TensorTerm& b) const;
};

/// Exact rational combination of TensorTerms over a fixed set of free indices.
class TensorExpr {
 public:
  using TermMap = std::map<TensorTerm, BigRational, TermOrder>;

  TensorExpr() = default;
  TensorExpr(IndexList indices, Side side);

  /// 1 (rank zero).
  static TensorExpr one(Side side = Side::momentum);
  /// hat_{i1} ... hat_{iN}
  static TensorExpr monomial(const IndexList& indices, Side side = Side::momentum);
  /// delta_{ab}
  static TensorExpr delta(const IndexName& a, const IndexName& b, Side side = Side::momentum);

  int rank() const { return static_cast<int>(indices_.size()); }
  const IndexList& indices() const { return indices_; }
  Side side() const { return side_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds c * term. The term must use exactly this expression's free indices.
  void add_term(TensorTerm term, const BigRational& c);

  TensorExpr& operator+=(const TensorExpr& rhs);
  TensorExpr& operator-=(const TensorExpr& rhs);
  TensorExpr& operator*=(const BigRational& c);
  friend TensorExpr operator+(TensorExpr a, const TensorExpr& b) { return a += b; }
  friend TensorExpr operator-(TensorExpr a, const TensorExpr& b) { return a -= b; }
  friend TensorExpr operator*(TensorExpr a, const BigRational& c) { return a *= c; }
  friend TensorExpr operator*(const BigRational& c, TensorExpr a) { return a *= c; }

  /// Equal free-index sets, side and coefficients.
  friend bool operator==(const TensorExpr& a, const TensorExpr& b);

  TensorExpr with_side(Side side) const;
  /// Renames free indices; the map must be injective.
  TensorExpr renamed(const std::map<IndexName, IndexName>& mapping) const;

  /// Coefficient of the term with the most hats (first in canonical order).
  BigRational leading_coefficient() const;

  /// `c * d[i1,i2]*h[i3] + ...`; "0" for the empty expression.
  std::string str() const;

 private:
  IndexList indices_;
  Side side_ = Side::momentum;
  TermMap terms_;
};

/// Tensor product. Indices shared by both factors are summed over (contracted).
TensorExpr product(const TensorExpr& a, const TensorExpr& b);

/// Contraction over two distinct free indices: d_aa = 3, d_ab h_b = h_a,
/// h_a h_a = 1, d_ab d_bc = d_ac.
TensorExpr contract(const TensorExpr& expr, const IndexName& a, const IndexName& b);

/// Average over directions of hat_{i1} ... hat_{iN}: sum of the (N-1)!! complete
/// delta pairings divided by (N+1)!!, zero for odd N.
TensorExpr angular_average(const IndexList& indices, Side side = Side::position);

/// Replaces the hat part of every term by its angular average.
TensorExpr angular_average(const TensorExpr& expr);

struct LegendreCoeffs {
  int l = 0;
  /// coeffs[k] multiplies u^k
  std::vector<BigRational> coeffs;
};

LegendreCoeffs legendre_coeffs(int l);

inline constexpr int default_max_rank = 8;

/// Angular momentum decomposition of hat_{i1} ... hat_{iL}: keys l = L, L-2, ...
/// Built by Legendre projection. Results for the default indices are memoized.
std::map<int, TensorExpr> decompose(int L, int max_rank = default_max_rank);
std::map<int, TensorExpr> decompose(const IndexList& indices, Side side,
                                    int max_rank = default_max_rank);

/// Top (l = L) component built independently from the tracelessness ansatz.
TensorExpr traceless_top(int L, int max_rank = default_max_rank);

/// Sum of all distinct terms over `indices` with exactly `delta_count` deltas and
/// hats on the remaining indices, each with coefficient 1.
TensorExpr symmetric_structure(const IndexList& indices, int delta_count, Side side);

/// Angular-momentum projection of an arbitrary expression (each term's hat
/// factor is decomposed; deltas carry through). Zero components are omitted.
std::map<int, TensorExpr> project(const TensorExpr& expr, int max_rank = default_max_rank);

using IndexAssignment = std::map<IndexName, int>;

/// Numeric value with delta_ab -> [a == b] and hat_a -> unit[a - 1].
double eval_tensor(const TensorExpr& expr, const IndexAssignment& assignment,
                   const std::array<double, 3>& unit);

/// Every assignment of values 1..3 to the given indices (3^N of them).
std::vector<IndexAssignment> all_assignments(const IndexList& indices);

/// Rebuilds the l-component of hat_{i1}..hat_{iL} from numeric C^{lm} coefficients
/// (sphere quadrature against real Y_lm) and returns the max deviation from
/// eval_tensor(decompose(L)[l]) over `sample_count` pseudo-random directions.
/// When l and L differ in parity, or l > L, the deviation is measured against 0.
double ylm_cross_check(int L, int l, int sample_count);
double ylm_cross_check(int L, int l, int sample_count, const std::vector<int>& index_values);

}  // namespace angularft
