#include "angularft/transform.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace angularft {

namespace {

int singularity_rank(Singularity s) {
  switch (s) {
    case Singularity::delta3: return 0;
    case Singularity::delta_r: return 1;
    case Singularity::none: return 2;
  }
  return 2;
}

ExactScalar pi_scalar(long long num, long long den, int pi_pow) { return ExactScalar(BigRational(num, den), 0, pi_pow); }

ExactScalar minus_i_power(int l) { return ExactScalar::i_power(-l); }

ExactScalar double_factorial_scalar(int k) { return ExactScalar(BigRational(double_factorial(k))); }

const char* power_symbol(Side side) { return side == Side::position ? "r" : "p"; }

}  // namespace

OutsideFramework::OutsideFramework(int n, int l)
    : DomainError("outside framework: (n, l) = (" + std::to_string(n) + ", " + std::to_string(l) +
                  ") violates -(l+3) < n <= l"),
      n_(n),
      l_(l) {}

std::string SpaceTerm::str() const {
  std::string out = coeff.str() + " * " + power_symbol(angular.side()) + "^" + std::to_string(power);
  if (singularity == Singularity::delta3) out += " * delta3";
  if (singularity == Singularity::delta_r) out += " * delta_r";
  out += " * (" + angular.str() + ")";
  return out;
}

SpaceExpr::SpaceExpr(Side side, std::vector<SpaceTerm> terms) : side_(side), terms_(std::move(terms)) {
  canonicalize();
}

void SpaceExpr::canonicalize() {
  using Key = std::tuple<int, int, int, int>;  // singularity, power, i_pow, pi_pow
  std::map<Key, SpaceTerm> merged;
  for (auto& t : terms_) {
    if (t.angular.side() != side_) throw ArgumentError("SpaceExpr: term angular part is on the wrong side");
    if (t.coeff.is_zero() || t.angular.is_zero()) continue;
    const Key key{singularity_rank(t.singularity), t.power, t.coeff.i_pow(), t.coeff.pi_pow()};
    // Normalize the unit to a bare i^a pi^b so tensors with the same unit can be summed.
    TensorExpr scaled = t.angular * t.coeff.rational();
    auto it = merged.find(key);
    if (it == merged.end()) {
      SpaceTerm unit_term{ExactScalar(BigRational(1), t.coeff.i_pow(), t.coeff.pi_pow()), t.power, t.singularity,
                          std::move(scaled)};
      merged.emplace(key, std::move(unit_term));
    } else {
      it->second.angular += scaled;
    }
  }
  terms_.clear();
  for (auto& [key, t] : merged) {
    if (t.angular.is_zero()) continue;
    const BigRational lead = t.angular.leading_coefficient();
    t.angular *= BigRational(1) / lead;
    t.coeff *= ExactScalar(lead);
    terms_.push_back(std::move(t));
  }
}

SpaceExpr& SpaceExpr::operator+=(const SpaceExpr& rhs) {
  if (rhs.is_zero()) return *this;
  if (is_zero()) side_ = rhs.side_;
  if (side_ != rhs.side_) throw ArgumentError("SpaceExpr: adding expressions on different sides");
  terms_.insert(terms_.end(), rhs.terms_.begin(), rhs.terms_.end());
  canonicalize();
  return *this;
}

SpaceExpr& SpaceExpr::operator*=(const ExactScalar& c) {
  for (auto& t : terms_) t.coeff *= c;
  canonicalize();
  return *this;
}

std::string SpaceExpr::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += " + ";
    out += t.str();
  }
  return out;
}

SpaceExpr as_space_expr(const MomentumExpr& expr) {
  if (expr.angular.side() != Side::momentum) throw ArgumentError("MomentumExpr: angular part must be momentum side");
  return SpaceExpr(Side::momentum, {SpaceTerm{ExactScalar(1), expr.effective_power(), Singularity::none, expr.angular}});
}

SpaceExpr contract(const SpaceExpr& expr, const IndexName& a, const IndexName& b) {
  std::vector<SpaceTerm> terms;
  for (const auto& t : expr.terms()) terms.push_back({t.coeff, t.power, t.singularity, contract(t.angular, a, b)});
  return SpaceExpr(expr.side(), std::move(terms));
}

SpaceExpr product(const SpaceExpr& expr, const TensorExpr& t) {
  std::vector<SpaceTerm> terms;
  for (const auto& term : expr.terms()) {
    terms.push_back({term.coeff, term.power, term.singularity, product(term.angular, t.with_side(expr.side()))});
  }
  return SpaceExpr(expr.side(), std::move(terms));
}

PositionExpr forward(const MomentumExpr& expr) {
  if (expr.angular.side() != Side::momentum) throw ArgumentError("forward: angular part must be momentum side");
  const int n = expr.effective_power();
  std::vector<SpaceTerm> terms;
  for (const auto& [l, component] : project(expr.angular)) {
    if (n <= -(l + 3) || n > l) throw OutsideFramework(n, l);
    TensorExpr image = component.with_side(Side::position);
    if (n < l) {
      const ExactScalar c = ExactScalar::i_power(l) * pi_scalar(1, 2, -2) * chi(n, l);
      terms.push_back({c, -(n + 3), Singularity::none, std::move(image)});
    } else {
      terms.push_back({ExactScalar::i_power(l) * double_factorial_scalar(2 * l + 1), -l, Singularity::delta3,
                       std::move(image)});
    }
  }
  return SpaceExpr(Side::position, std::move(terms));
}

SpaceExpr inverse(const PositionExpr& expr) {
  static const std::string rows =
      "supported shapes per angular momentum component l: r^n (-(l+3) < n < l), r^l, delta3 * r^-l";
  if (expr.side() != Side::position) throw ArgumentError("inverse: expected a position-side expression");
  std::vector<SpaceTerm> terms;
  for (const auto& t : expr.terms()) {
    if (t.singularity == Singularity::delta_r) throw UnsupportedShape("inverse: delta(r) terms unsupported; " + rows);
    for (const auto& [l, component] : project(t.angular)) {
      TensorExpr image = component.with_side(Side::momentum);
      const int k = t.power;
      if (t.singularity == Singularity::none && k > -(l + 3) && k < l) {
        terms.push_back({t.coeff * pi_scalar(4, 1, 1) * minus_i_power(l) * chi(k, l), -(k + 3), Singularity::none,
                         std::move(image)});
      } else if (t.singularity == Singularity::none && k == l) {
        terms.push_back({t.coeff * minus_i_power(l) * double_factorial_scalar(2 * l + 1) * pi_scalar(8, 1, 3), -l,
                         Singularity::delta3, std::move(image)});
      } else if (t.singularity == Singularity::delta3 && k == -l) {
        const ExactScalar inv_df(BigRational(BigInt(1), double_factorial(2 * l + 1)));
        terms.push_back({t.coeff * minus_i_power(l) * inv_df, l, Singularity::none, std::move(image)});
      } else {
        throw UnsupportedShape("inverse: component l = " + std::to_string(l) + " of term " + t.str() +
                               " unsupported; " + rows);
      }
    }
  }
  return SpaceExpr(Side::momentum, std::move(terms));
}

PositionExpr operator_identity(BaseFunction base, const DerivativeOperator& op) {
  if (op.order < 0) throw DomainError("operator_identity: negative derivative order");
  int n_base = 0;
  ExactScalar scale(1);
  switch (base) {
    case BaseFunction::inv_r:
      n_base = -2;
      scale = pi_scalar(4, 1, 1);
      break;
    case BaseFunction::inv_r2:
      n_base = -1;
      scale = pi_scalar(2, 1, 2);
      break;
    case BaseFunction::delta3:
      break;
  }
  for (const auto& [t, c] : op.shape.terms()) {
    const int laplacian_twice = op.order - static_cast<int>(t.hats.size());
    if (laplacian_twice < 0 || laplacian_twice % 2 != 0) {
      throw ArgumentError("operator_identity: shape term " + t.str() + " does not fit order " +
                          std::to_string(op.order));
    }
  }
  const MomentumExpr symbol{n_base + op.order, op.shape.with_side(Side::momentum), true};
  return forward(symbol) * (scale * ExactScalar::i_power(op.order));
}

IndexList identity_indices(int count) {
  static const char* names[] = {"i", "j", "k", "l", "m", "n", "s", "t"};
  IndexList out;
  for (int a = 0; a < count; ++a) {
    out.emplace_back(a < 8 ? std::string(names[a]) : "t" + std::to_string(a - 6));
  }
  return out;
}

namespace {

std::string derivative_list(const IndexList& indices) {
  std::string out;
  for (const auto& x : indices) out += "d[" + x.str() + "] ";
  return out;
}

std::string base_text(BaseFunction base) {
  switch (base) {
    case BaseFunction::inv_r: return "1/r";
    case BaseFunction::inv_r2: return "1/r^2";
    case BaseFunction::delta3: return "delta3";
  }
  return "";
}

}  // namespace

std::string IdentityRecord::lhs() const {
  switch (kind) {
    case IdentityKind::deriv_inv_r:
    case IdentityKind::deriv_inv_r2:
    case IdentityKind::deriv_delta3: {
      std::string idx;
      for (const auto& x : indices) idx += (idx.empty() ? "" : ",") + x.str();
      return "(d^" + std::to_string(k) + ")_" + std::to_string(k) + "[" + idx + "] " + base_text(base);
    }
    case IdentityKind::full_deriv_inv_r: return derivative_list(indices) + base_text(base);
    case IdentityKind::dipole_E: return "E[i] = p[j] d[i] d[j] 1/r";
    case IdentityKind::dipole_B: return "B[i] = m[j] (d[i] d[j] - d[i,j] lap) 1/r";
    case IdentityKind::delta_radial: return "delta3";
  }
  return "";
}

std::string IdentityRecord::str() const { return lhs() + " = " + rhs.str(); }

IdentityRecord derivative_identity(BaseFunction base, int k) {
  if (k < 0 || k > default_max_rank) {
    throw DomainError("derivative_identity: k must be in [0, " + std::to_string(default_max_rank) + "]");
  }
  IdentityRecord rec;
  rec.kind = base == BaseFunction::inv_r    ? IdentityKind::deriv_inv_r
             : base == BaseFunction::inv_r2 ? IdentityKind::deriv_inv_r2
                                            : IdentityKind::deriv_delta3;
  rec.k = k;
  rec.indices = identity_indices(k);
  rec.base = base;
  rec.op = {decompose(rec.indices, Side::momentum).at(k), k};
  rec.rhs = operator_identity(base, rec.op);
  return rec;
}

IdentityRecord full_derivative_inv_r(int k) {
  if (k >= 4) throw DomainError("full_derivative_inv_r: k >= 4 requires delta-derivative transforms, out of scope");
  if (k < 1) throw DomainError("full_derivative_inv_r: k must be >= 1");
  IdentityRecord rec;
  rec.kind = IdentityKind::full_deriv_inv_r;
  rec.k = k;
  rec.indices = identity_indices(k);
  rec.base = BaseFunction::inv_r;
  rec.op = {TensorExpr::monomial(rec.indices, Side::momentum), k};
  rec.rhs = operator_identity(BaseFunction::inv_r, rec.op);
  return rec;
}

DipoleFields dipole_fields() {
  const IdentityRecord t = full_derivative_inv_r(2);
  const IndexName& i = t.indices[0];
  const IndexName& j = t.indices[1];

  IdentityRecord e = t;
  e.kind = IdentityKind::dipole_E;
  e.moment_index = j;

  IdentityRecord b = t;
  b.kind = IdentityKind::dipole_B;
  b.moment_index = j;
  TensorExpr shape = TensorExpr::monomial({i, j}, Side::momentum) - TensorExpr::delta(i, j, Side::momentum);
  b.op = {std::move(shape), 2};
  // B = T - delta_ij tr T
  SpaceExpr trace = product(contract(t.rhs, i, j), TensorExpr::delta(i, j, Side::position));
  b.rhs = t.rhs + trace * ExactScalar(-1);
  return {std::move(e), std::move(b)};
}

IdentityRecord delta_radial_identity() {
  IdentityRecord rec;
  rec.kind = IdentityKind::delta_radial;
  rec.base = BaseFunction::delta3;
  rec.rhs = SpaceExpr(Side::position, {SpaceTerm{pi_scalar(1, 4, -1), -2, Singularity::delta_r,
                                                 TensorExpr::one(Side::position)}});
  return rec;
}

std::string to_string(IdentityKind kind) {
  switch (kind) {
    case IdentityKind::deriv_inv_r: return "inv_r";
    case IdentityKind::deriv_inv_r2: return "inv_r2";
    case IdentityKind::deriv_delta3: return "delta3";
    case IdentityKind::full_deriv_inv_r: return "full_inv_r";
    case IdentityKind::dipole_E: return "dipole_e";
    case IdentityKind::dipole_B: return "dipole_b";
    case IdentityKind::delta_radial: return "delta_radial";
  }
  return "";
}

std::string to_string(BaseFunction base) { return base_text(base); }

}  // namespace angularft
