#pragma once

#include <optional>
#include <string>
#include <vector>

#include "angularft/exact.hpp"
#include "angularft/tensor.hpp"

namespace angularft {

/// A required (n, l) pair violates -(l+3) < n <= l.
class OutsideFramework : public DomainError {
 public:
  OutsideFramework(int n, int l);
  int n() const { return n_; }
  int l() const { return l_; }

 private:
  int n_;
  int l_;
};

/// inverse() input is not one of the supported table shapes.
class UnsupportedShape : public DomainError {
 public:
  using DomainError::DomainError;
};

/// p^n times an angular tensor. With hat_normalized false the angular factors
/// are full momentum components, so the effective power is n + rank.
struct MomentumExpr {
  int n = 0;
  TensorExpr angular = TensorExpr::one(Side::momentum);
  bool hat_normalized = true;

  int effective_power() const { return hat_normalized ? n : n + angular.rank(); }
};

enum class Singularity {
  none,
  /// three-dimensional delta on the expression's side
  delta3,
  /// one-dimensional delta(r) on the half line, unit area on 0 < r <= R
  delta_r,
};

/// coeff * r^power [* singularity] * angular (or p^power on the momentum side).
struct SpaceTerm {
  ExactScalar coeff;
  int power = 0;
  Singularity singularity = Singularity::none;
  TensorExpr angular;

  std::string str() const;
  friend bool operator==(const SpaceTerm&, const SpaceTerm&) = default;
};

/// Canonical sum of SpaceTerms: terms sharing (power, singularity, i/pi unit) are
/// merged by adding their tensors, the tensor's leading coefficient is moved into
/// coeff, zero terms are dropped, and terms are sorted delta-first then by power.
class SpaceExpr {
 public:
  SpaceExpr() = default;
  explicit SpaceExpr(Side side) : side_(side) {}
  SpaceExpr(Side side, std::vector<SpaceTerm> terms);

  Side side() const { return side_; }
  const std::vector<SpaceTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  SpaceExpr& operator+=(const SpaceExpr& rhs);
  SpaceExpr& operator*=(const ExactScalar& c);
  friend SpaceExpr operator+(SpaceExpr a, const SpaceExpr& b) { return a += b; }
  friend SpaceExpr operator*(SpaceExpr a, const ExactScalar& c) { return a *= c; }
  friend bool operator==(const SpaceExpr&, const SpaceExpr&) = default;

  /// Terms joined by " + "; "0" when empty.
  std::string str() const;

 private:
  void canonicalize();

  Side side_ = Side::position;
  std::vector<SpaceTerm> terms_;
};

using PositionTerm = SpaceTerm;
using PositionExpr = SpaceExpr;

/// The expression itself as a momentum-side SpaceExpr (hat-normalized angular part).
SpaceExpr as_space_expr(const MomentumExpr& expr);

/// Contracts two free indices in every term.
SpaceExpr contract(const SpaceExpr& expr, const IndexName& a, const IndexName& b);
/// Multiplies every term's angular part by `t` (shared indices are summed).
SpaceExpr product(const SpaceExpr& expr, const TensorExpr& t);

/// Momentum to position space. Each angular momentum component l of the angular
/// part maps to (i^l / 2 pi^2) chi(n, l) r^-(n+3) for n < l, and to
/// i^l (2l+1)!! delta3 / r^l for n = l.
PositionExpr forward(const MomentumExpr& expr);

/// Position to momentum space over the three supported shapes per component:
/// r^n (-(l+3) < n < l), r^l, and delta3 r^-l.
SpaceExpr inverse(const PositionExpr& expr);

enum class BaseFunction { inv_r, inv_r2, delta3 };

/// Differential operator whose symbol is (i p)^order * shape(phat). A shape term
/// with h hats and d deltas stands for the h derivatives on the hat indices times
/// (laplacian)^((order - h) / 2) times the deltas.
struct DerivativeOperator {
  TensorExpr shape = TensorExpr::one(Side::momentum);
  int order = 0;
};

/// op applied to the base function, generated through forward().
PositionExpr operator_identity(BaseFunction base, const DerivativeOperator& op);

enum class IdentityKind { deriv_inv_r, deriv_inv_r2, deriv_delta3, full_deriv_inv_r, dipole_E, dipole_B, delta_radial };

struct IdentityRecord {
  IdentityKind kind = IdentityKind::deriv_inv_r;
  int k = 0;
  IndexList indices;
  BaseFunction base = BaseFunction::inv_r;
  DerivativeOperator op;
  PositionExpr rhs;
  /// Index contracted with a constant moment vector (dipole fields only).
  std::optional<IndexName> moment_index;

  std::string lhs() const;
  std::string str() const;
};

/// i, j, k, l, m, n, s, t, ...
IndexList identity_indices(int count);

/// Top angular momentum derivative (d...)^k_k of 1/r, 1/r^2 or delta3; 0 <= k <= 8.
IdentityRecord derivative_identity(BaseFunction base, int k);

/// d_{i1} ... d_{ik} (1/r) with all delta terms; 1 <= k <= 3.
IdentityRecord full_derivative_inv_r(int k);

struct DipoleFields {
  IdentityRecord E;
  IdentityRecord B;
};

/// E_i = p_j d_i d_j (1/r) and B_i = m_j (d_i d_j - delta_ij laplacian)(1/r).
DipoleFields dipole_fields();

/// delta3 = delta(r) / (4 pi r^2).
IdentityRecord delta_radial_identity();

std::string to_string(IdentityKind kind);
std::string to_string(BaseFunction base);

}  // namespace angularft
