#include "angularft/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace angularft {

namespace {

double real_value(const ExactScalar& c) {
  if (!c.is_real()) throw DomainError("pairing: imaginary coefficient " + c.str());
  return c.to_double();
}

double ipow(double x, int k) {
  double out = 1.0;
  for (int a = 0; a < k; ++a) out *= x;
  return out;
}

int min_angular_momentum(const TensorExpr& t) {
  const auto parts = project(t);
  return parts.empty() ? 0 : parts.begin()->first;
}

std::vector<double> radial_breaks(double ball, double outer, double panel_width) {
  std::vector<double> cuts{0.0};
  if (ball < outer) cuts.push_back(ball);
  const double start = cuts.back();
  const int panels = std::max(1, static_cast<int>(std::ceil((outer - start) / panel_width)));
  for (int p = 1; p <= panels; ++p) cuts.push_back(start + (outer - start) * p / panels);
  return cuts;
}

/// Evaluates the angular part of a term at every sphere direction.
std::vector<double> angular_samples(const TensorExpr& angular, const IndexAssignment& assignment,
                                    const quad::SphereRule& sphere) {
  std::vector<double> out(sphere.size());
  for (std::size_t k = 0; k < sphere.size(); ++k) out[k] = eval_tensor(angular, assignment, sphere.directions[k]);
  return out;
}

/// (1/j!) sum_b F_{b1..bj}(0) u_b1 ... u_bj at each direction u.
std::vector<double> taylor_samples(const TestFunction& f, int order, const quad::SphereRule& sphere) {
  std::vector<double> out(sphere.size(), 0.0);
  std::vector<int> axes(order, 0);
  double inv_fact = 1.0;
  for (int a = 2; a <= order; ++a) inv_fact /= a;
  const long total = static_cast<long>(std::pow(3, order));
  for (long code = 0; code < total; ++code) {
    long c = code;
    for (int a = 0; a < order; ++a) {
      axes[a] = static_cast<int>(c % 3);
      c /= 3;
    }
    const double d = f.derivative_at(axes, {0.0, 0.0, 0.0}) * inv_fact;
    if (d == 0.0) continue;
    for (std::size_t k = 0; k < sphere.size(); ++k) {
      double v = d;
      for (int a : axes) v *= sphere.directions[k][a];
      out[k] += v;
    }
  }
  return out;
}

IndexName fresh_index(const IndexList& taken, const std::string& stem) {
  for (int n = 0;; ++n) {
    IndexName candidate(n == 0 ? stem : stem + std::to_string(n));
    if (std::find(taken.begin(), taken.end(), candidate) == taken.end()) return candidate;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// TestFunction

TestFunction::TestFunction(Vec3 center, double width, std::map<MultiIndex, double> poly)
    : center_(center), width_(width), poly_(std::move(poly)) {
  if (!(width > 0.0)) throw ArgumentError("TestFunction: width must be positive");
  std::erase_if(poly_, [](const auto& kv) { return kv.second == 0.0; });
}

double TestFunction::operator()(const Vec3& r) const {
  const Vec3 y{r[0] - center_[0], r[1] - center_[1], r[2] - center_[2]};
  double p = 0.0;
  for (const auto& [m, c] : poly_) p += c * ipow(y[0], m[0]) * ipow(y[1], m[1]) * ipow(y[2], m[2]);
  return p * std::exp(-(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]) / (width_ * width_));
}

TestFunction TestFunction::derivative(int axis) const {
  if (axis < 0 || axis > 2) throw ArgumentError("TestFunction::derivative: axis must be 0, 1 or 2");
  std::map<MultiIndex, double> out;
  const double g = -2.0 / (width_ * width_);
  for (const auto& [m, c] : poly_) {
    if (m[axis] > 0) {
      MultiIndex lower = m;
      --lower[axis];
      out[lower] += c * m[axis];
    }
    MultiIndex upper = m;
    ++upper[axis];
    out[upper] += c * g;
  }
  return TestFunction(center_, width_, std::move(out));
}

TestFunction TestFunction::laplacian() const {
  TestFunction out = derivative(0).derivative(0);
  out += derivative(1).derivative(1);
  out += derivative(2).derivative(2);
  return out;
}

double TestFunction::derivative_at(const std::vector<int>& axes, const Vec3& point) const {
  TestFunction g = *this;
  for (int a : axes) g = g.derivative(a);
  return g(point);
}

TestFunction& TestFunction::operator+=(const TestFunction& rhs) {
  if (rhs.center_ != center_ || rhs.width_ != width_) {
    throw ArgumentError("TestFunction: adding functions with different centers or widths");
  }
  for (const auto& [m, c] : rhs.poly_) poly_[m] += c;
  std::erase_if(poly_, [](const auto& kv) { return kv.second == 0.0; });
  return *this;
}

TestFunction& TestFunction::operator*=(double c) {
  for (auto& [m, v] : poly_) v *= c;
  std::erase_if(poly_, [](const auto& kv) { return kv.second == 0.0; });
  return *this;
}

double TestFunction::support_radius() const {
  return std::hypot(center_[0], center_[1], center_[2]) + 8.0 * width_;
}

std::string TestFunction::str() const {
  std::ostringstream os;
  os << "center=(" << center_[0] << "," << center_[1] << "," << center_[2] << ") width=" << width_ << " poly=";
  bool first = true;
  for (const auto& [m, c] : poly_) {
    os << (first ? "" : "+") << c << "*y^(" << m[0] << "," << m[1] << "," << m[2] << ")";
    first = false;
  }
  return os.str();
}

TestFunction apply_operator(const DerivativeOperator& op, const IndexAssignment& assignment, const TestFunction& f) {
  TestFunction out(f.center(), f.width(), {});
  for (const auto& [t, c] : op.shape.terms()) {
    bool active = true;
    for (const auto& [a, b] : t.deltas) active = active && assignment.at(a) == assignment.at(b);
    if (!active) continue;
    const int laplacians = (op.order - static_cast<int>(t.hats.size())) / 2;
    TestFunction g = f;
    for (int n = 0; n < laplacians; ++n) g = g.laplacian();
    for (const auto& h : t.hats) g = g.derivative(assignment.at(h) - 1);
    g *= to_double(c);
    out += g;
  }
  return out;
}

std::vector<TestFunction> standard_family() {
  const Vec3 origin{0.0, 0.0, 0.0};
  const Vec3 shifted{0.3, -0.2, 0.5};
  const std::map<MultiIndex, double> quadratic{
      {{0, 0, 0}, 1.0}, {{1, 0, 0}, 0.4}, {{0, 1, 1}, -0.3}, {{0, 0, 2}, 0.25}, {{2, 0, 0}, -0.15}};
  return {TestFunction(origin, 0.7),           TestFunction(origin, 1.3),
          TestFunction(shifted, 0.7),          TestFunction(shifted, 1.3),
          TestFunction(shifted, 0.9, quadratic)};
}

// ---------------------------------------------------------------------------
// Pairer

struct Pairer::Grid {
  std::vector<double> r;
  std::vector<double> w;
  /// values[i * directions + k] = F(r_i u_k)
  std::vector<double> values;
};

Pairer::Pairer(TestFunction f, BallConfig cfg)
    : f_(std::move(f)), cfg_(std::move(cfg)), sphere_(cfg_.angular_rule[0], cfg_.angular_rule[1]) {
  if (!(cfg_.R > 0.0)) throw ArgumentError("BallConfig: R must be positive");
  if (cfg_.radial_rule < 2) throw ArgumentError("BallConfig: radial_rule must be >= 2");
}

std::shared_ptr<const Pairer::Grid> Pairer::grid() const {
  if (grid_) return grid_;
  auto g = std::make_shared<Grid>();
  const auto cuts = radial_breaks(cfg_.R, f_.support_radius(), 0.5 * f_.width());
  const quad::Rule& rule = quad::gauss_legendre(cfg_.radial_rule);
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    const double half = 0.5 * (cuts[p + 1] - cuts[p]);
    const double mid = 0.5 * (cuts[p + 1] + cuts[p]);
    for (int n = 0; n < cfg_.radial_rule; ++n) {
      g->r.push_back(mid + half * rule.nodes[n]);
      g->w.push_back(half * rule.weights[n]);
    }
  }
  const std::size_t K = sphere_.size();
  g->values.resize(g->r.size() * K);
  for (std::size_t i = 0; i < g->r.size(); ++i) {
    for (std::size_t k = 0; k < K; ++k) {
      const auto& u = sphere_.directions[k];
      g->values[i * K + k] = f_({g->r[i] * u[0], g->r[i] * u[1], g->r[i] * u[2]});
    }
  }
  grid_ = std::move(g);
  return grid_;
}

namespace {

void require_regular(const SpaceTerm& term) {
  if (term.singularity != Singularity::none) throw ArgumentError("pair_regular: term carries a delta factor");
  if (term.angular.side() != Side::position) throw ArgumentError("pairing: term must be position side");
  const int l_min = min_angular_momentum(term.angular);
  if (l_min + term.power + 2 < 0) {
    throw DomainError("pair_regular: r^" + std::to_string(term.power) + " with angular momentum " +
                      std::to_string(l_min) + " is not integrable at the origin");
  }
}

}  // namespace

double Pairer::regular(const SpaceTerm& term, const IndexAssignment& assignment) const {
  require_regular(term);
  const double c = real_value(term.coeff);
  const auto A = angular_samples(term.angular, assignment, sphere_);
  const auto g = grid();
  const std::size_t K = sphere_.size();
  double total = 0.0;
  for (std::size_t i = 0; i < g->r.size(); ++i) {
    double ang = 0.0;
    const double* row = &g->values[i * K];
    for (std::size_t k = 0; k < K; ++k) ang += sphere_.weights[k] * row[k] * A[k];
    total += g->w[i] * std::pow(g->r[i], 2 + term.power) * ang;
  }
  return c * total;
}

double Pairer::regular_ball(const SpaceTerm& term, const IndexAssignment& assignment, double radius) const {
  require_regular(term);
  const double c = real_value(term.coeff);
  const auto A = angular_samples(term.angular, assignment, sphere_);
  const quad::Rule& rule = quad::gauss_legendre(cfg_.radial_rule);
  double total = 0.0;
  for (int n = 0; n < cfg_.radial_rule; ++n) {
    const double r = 0.5 * radius * (1.0 + rule.nodes[n]);
    double ang = 0.0;
    for (std::size_t k = 0; k < sphere_.size(); ++k) {
      const auto& u = sphere_.directions[k];
      ang += sphere_.weights[k] * f_({r * u[0], r * u[1], r * u[2]}) * A[k];
    }
    total += 0.5 * radius * rule.weights[n] * std::pow(r, 2 + term.power) * ang;
  }
  return c * total;
}

double Pairer::singular(const SpaceTerm& term, const IndexAssignment& assignment) const {
  const double c = real_value(term.coeff);
  if (term.singularity == Singularity::delta3) {
    const auto parts = project(term.angular);
    if (parts.size() != 1 || parts.begin()->first != -term.power) {
      throw UnpairedDelta("pair_delta: delta3 * r^" + std::to_string(term.power) +
                          " needs a single angular momentum l = " + std::to_string(-term.power));
    }
    const int l = -term.power;
    // <A xhat_b1..xhat_bl> F_{b1..bl}(0) / l!
    const IndexList taylor = numbered_indices(l, fresh_index(term.angular.indices(), "b").str() + "_");
    const TensorExpr avg = angular_average(product(term.angular, TensorExpr::monomial(taylor, Side::position)));
    double inv_fact = 1.0;
    for (int a = 2; a <= l; ++a) inv_fact /= a;
    double total = 0.0;
    for (const auto& b : all_assignments(taylor)) {
      IndexAssignment full = assignment;
      std::vector<int> axes;
      for (const auto& x : taylor) {
        full[x] = b.at(x);
        axes.push_back(b.at(x) - 1);
      }
      const double weight = eval_tensor(avg, full, {0.0, 0.0, 1.0});
      if (weight != 0.0) total += weight * f_.derivative_at(axes, {0.0, 0.0, 0.0});
    }
    return c * inv_fact * total;
  }
  if (term.singularity == Singularity::delta_r) {
    // int dOmega A(u) int_0 dr r^(2+power) delta(r) F(r u)
    const int order = -(2 + term.power);
    if (order < 0) {
      throw UnpairedDelta("pair_delta: delta(r) * r^" + std::to_string(term.power) + " has no defined pairing");
    }
    const auto A = angular_samples(term.angular, assignment, sphere_);
    double scale = 0.0;
    for (std::size_t k = 0; k < sphere_.size(); ++k) scale += sphere_.weights[k] * std::abs(A[k]);
    for (int j = 0; j < order; ++j) {
      const auto T = taylor_samples(f_, j, sphere_);
      double v = 0.0;
      for (std::size_t k = 0; k < sphere_.size(); ++k) v += sphere_.weights[k] * A[k] * T[k];
      if (std::abs(v) > 1e-12 * std::max(1.0, scale)) {
        throw UnpairedDelta("pair_delta: delta(r) term diverges (Taylor order " + std::to_string(j) +
                            " survives the angular integral)");
      }
    }
    const auto T = taylor_samples(f_, order, sphere_);
    double v = 0.0;
    for (std::size_t k = 0; k < sphere_.size(); ++k) v += sphere_.weights[k] * A[k] * T[k];
    return c * v;
  }
  throw ArgumentError("pair_delta: term has no delta factor");
}

double Pairer::term(const SpaceTerm& t, const IndexAssignment& assignment) const {
  return t.singularity == Singularity::none ? regular(t, assignment) : singular(t, assignment);
}

double Pairer::expr(const PositionExpr& e, const IndexAssignment& assignment) const {
  if (e.side() != Side::position) throw ArgumentError("pairing: expression must be position side");
  double total = 0.0;
  for (const auto& t : e.terms()) total += term(t, assignment);
  return total;
}

double pair_regular(const SpaceTerm& term, const TestFunction& f, const IndexAssignment& assignment,
                    const BallConfig& cfg) {
  return Pairer(f, cfg).regular(term, assignment);
}

double pair_delta(const SpaceTerm& term, const TestFunction& f, const IndexAssignment& assignment) {
  if (term.singularity == Singularity::none) throw ArgumentError("pair_delta: term has no delta factor");
  return Pairer(f).singular(term, assignment);
}

// ---------------------------------------------------------------------------
// Identities

double VerificationReport::max_rel_diff() const {
  double out = 0.0;
  for (const auto& row : rows) out = std::max(out, row.rel_diff);
  return out;
}

namespace {

double pair_base(BaseFunction base, const TestFunction& g, const BallConfig& cfg) {
  switch (base) {
    case BaseFunction::inv_r:
      return Pairer(g, cfg).regular({ExactScalar(1), -1, Singularity::none, TensorExpr::one(Side::position)}, {});
    case BaseFunction::inv_r2:
      return Pairer(g, cfg).regular({ExactScalar(1), -2, Singularity::none, TensorExpr::one(Side::position)}, {});
    case BaseFunction::delta3:
      return g({0.0, 0.0, 0.0});
  }
  return 0.0;
}

IndexList free_indices(const IdentityRecord& id) {
  IndexList out = id.indices;
  for (const auto& t : id.rhs.terms()) {
    for (const auto& x : t.angular.indices()) {
      if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
    }
  }
  for (const auto& x : id.op.shape.indices()) {
    if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
  }
  return out;
}

}  // namespace

VerificationReport verify_identity(const IdentityRecord& id, const std::vector<TestFunction>& family, double tol,
                                   const BallConfig& cfg) {
  if (family.empty()) throw ArgumentError("verify_identity: empty test-function family");
  if (!(tol > 0.0)) throw ArgumentError("verify_identity: tolerance must be positive");
  VerificationReport report;
  report.identity = id.str();
  report.tolerance = tol;
  const auto assignments = all_assignments(free_indices(id));
  const double sign = id.op.order % 2 ? -1.0 : 1.0;
  for (std::size_t f = 0; f < family.size(); ++f) {
    const Pairer rhs_pairer(family[f], cfg);
    for (const auto& a : assignments) {
      VerificationRow row;
      row.function_index = f;
      row.assignment = a;
      row.lhs = sign * pair_base(id.base, apply_operator(id.op, a, family[f]), cfg);
      row.rhs = rhs_pairer.expr(id.rhs, a);
      row.abs_diff = std::abs(row.lhs - row.rhs);
      row.rel_diff = row.abs_diff / std::max(1.0, std::abs(row.rhs));
      row.pass = row.rel_diff <= tol;
      report.rows.push_back(std::move(row));
    }
  }
  report.pass = std::all_of(report.rows.begin(), report.rows.end(), [](const auto& r) { return r.pass; });
  std::ostringstream diag;
  diag << family.size() << " test functions x " << assignments.size() << " index assignments; sphere rule "
       << cfg.angular_rule[0] << "x" << cfg.angular_rule[1] << ", " << cfg.radial_rule
       << " radial nodes per panel, ball radius " << cfg.R;
  report.diagnostics.push_back(diag.str());
  return report;
}

std::vector<BallSurfaceRow> ball_surface_check(const IdentityRecord& id, const TestFunction& f,
                                               const IndexAssignment& assignment, const BallConfig& cfg) {
  if (id.op.order < 1) throw DomainError("ball_surface_check: identity has no derivative to write as a divergence");
  const IndexList taken = free_indices(id);
  const IndexName kappa = fresh_index(taken, "q");
  IndexList idx = id.op.shape.indices();
  idx.push_back(kappa);
  // op = d_kappa op_kappa: peel one hat derivative, or one laplacian.
  TensorExpr peeled(idx, Side::momentum);
  for (const auto& [t, c] : id.op.shape.terms()) {
    TensorTerm nt = t;
    if (!nt.hats.empty()) {
      nt.deltas.emplace_back(kappa, nt.hats.front());
      nt.hats.erase(nt.hats.begin());
    } else {
      nt.hats.push_back(kappa);
    }
    nt.canonicalize();
    peeled.add_term(std::move(nt), c);
  }
  const PositionExpr lambda = operator_identity(id.base, {peeled, id.op.order - 1});
  for (const auto& t : lambda.terms()) {
    if (t.singularity != Singularity::none) {
      throw DomainError("ball_surface_check: Lambda carries delta terms; divergence form needs a regular Lambda");
    }
  }

  const quad::SphereRule sphere(cfg.angular_rule[0], cfg.angular_rule[1]);
  std::vector<BallSurfaceRow> out;
  for (double R : cfg.R_sequence) {
    BallSurfaceRow row;
    row.R = R;
    for (int kv = 1; kv <= 3; ++kv) {
      IndexAssignment a = assignment;
      a[kappa] = kv;
      const Pairer dk(f.derivative(kv - 1), cfg);
      for (const auto& t : lambda.terms()) {
        const double c = real_value(t.coeff);
        const auto A = angular_samples(t.angular, a, sphere);
        double s = 0.0;
        for (std::size_t k = 0; k < sphere.size(); ++k) {
          const auto& u = sphere.directions[k];
          s += sphere.weights[k] * u[kv - 1] * f({R * u[0], R * u[1], R * u[2]}) * A[k];
        }
        row.surface += c * R * R * std::pow(R, t.power) * s;
        row.ball -= dk.regular_ball(t, a, R);
      }
    }
    const Pairer plain(f, cfg);
    for (const auto& t : id.rhs.terms()) {
      row.rhs += t.singularity == Singularity::none ? plain.regular_ball(t, assignment, R) : plain.singular(t, assignment);
    }
    out.push_back(row);
  }
  return out;
}

double log_log_slope(const std::vector<double>& R, const std::vector<double>& y) {
  if (R.size() != y.size() || R.size() < 2) throw ArgumentError("log_log_slope: need matching series of length >= 2");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(R.size());
  for (std::size_t a = 0; a < R.size(); ++a) {
    const double x = std::log(R[a]);
    const double v = std::log(std::abs(y[a]));
    sx += x;
    sy += v;
    sxx += x * x;
    sxy += x * v;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace angularft
