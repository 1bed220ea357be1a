#include "angularft/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <cctype>
#include <cstdint>
#include <mutex>
#include <random>
#include <sstream>
#include <unordered_map>

#include "angularft/quadrature.hpp"

namespace angularft {

// ---------------------------------------------------------------------------
// Indices and terms

namespace {

std::pair<std::string_view, long long> split_suffix(const std::string& s) {
  std::size_t cut = s.size();
  while (cut > 0 && std::isdigit(static_cast<unsigned char>(s[cut - 1]))) --cut;
  if (cut == s.size() || s.size() - cut > 15) return {s, -1};
  return {std::string_view(s).substr(0, cut), std::stoll(s.substr(cut))};
}

}  // namespace

std::strong_ordering operator<=>(const IndexName& a, const IndexName& b) {
  const auto [pa, na] = split_suffix(a.symbol_);
  const auto [pb, nb] = split_suffix(b.symbol_);
  if (auto c = pa.compare(pb); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  if (auto c = na <=> nb; c != 0) return c;
  return a.symbol_ <=> b.symbol_;
}

IndexList numbered_indices(int count, const std::string& stem) {
  IndexList out;
  for (int k = 1; k <= count; ++k) out.emplace_back(stem + std::to_string(k));
  return out;
}

void TensorTerm::canonicalize() {
  for (auto& [a, b] : deltas) {
    if (b < a) std::swap(a, b);
  }
  std::sort(deltas.begin(), deltas.end());
  std::sort(hats.begin(), hats.end());
}

std::string TensorTerm::str() const {
  std::string out;
  for (const auto& [a, b] : deltas) {
    if (!out.empty()) out += '*';
    out += "d[" + a.str() + "," + b.str() + "]";
  }
  for (const auto& h : hats) {
    if (!out.empty()) out += '*';
    out += "h[" + h.str() + "]";
  }
  return out;
}

bool TermOrder::operator()(const TensorTerm& a, const TensorTerm& b) const {
  if (a.hats.size() != b.hats.size()) return a.hats.size() > b.hats.size();
  if (a.hats != b.hats) return a.hats < b.hats;
  return a.deltas < b.deltas;
}

namespace {

IndexList sorted(IndexList list) {
  std::sort(list.begin(), list.end());
  return list;
}

IndexList term_indices(const TensorTerm& t) {
  IndexList out = t.hats;
  for (const auto& [a, b] : t.deltas) {
    out.push_back(a);
    out.push_back(b);
  }
  return sorted(std::move(out));
}

void require_distinct(const IndexList& indices, const char* where) {
  IndexList s = sorted(indices);
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
    throw ArgumentError(std::string(where) + ": repeated free index");
  }
}

/// Term whose indices may repeat; repeated indices are summed over.
struct RawTerm {
  std::vector<std::pair<IndexName, IndexName>> deltas;
  std::vector<IndexName> hats;
};

IndexName other_end(const std::pair<IndexName, IndexName>& d, const IndexName& x) {
  return d.first == x ? d.second : d.first;
}

bool contract_once(RawTerm& t, long long& factor) {
  for (std::size_t i = 0; i < t.deltas.size(); ++i) {
    if (t.deltas[i].first == t.deltas[i].second) {
      t.deltas.erase(t.deltas.begin() + static_cast<std::ptrdiff_t>(i));
      factor *= 3;
      return true;
    }
  }
  for (std::size_t i = 0; i < t.deltas.size(); ++i) {
    for (const IndexName& x : {t.deltas[i].first, t.deltas[i].second}) {
      for (std::size_t j = i + 1; j < t.deltas.size(); ++j) {
        if (t.deltas[j].first == x || t.deltas[j].second == x) {
          t.deltas[i] = {other_end(t.deltas[i], x), other_end(t.deltas[j], x)};
          t.deltas.erase(t.deltas.begin() + static_cast<std::ptrdiff_t>(j));
          return true;
        }
      }
      for (auto& h : t.hats) {
        if (h == x) {
          h = other_end(t.deltas[i], x);
          t.deltas.erase(t.deltas.begin() + static_cast<std::ptrdiff_t>(i));
          return true;
        }
      }
    }
  }
  std::sort(t.hats.begin(), t.hats.end());
  auto dup = std::adjacent_find(t.hats.begin(), t.hats.end());
  if (dup != t.hats.end()) {
    t.hats.erase(dup, dup + 2);
    return true;
  }
  return false;
}

/// Applies the contraction rules until every index appears once.
std::pair<TensorTerm, long long> reduce(RawTerm t) {
  long long factor = 1;
  while (contract_once(t, factor)) {
  }
  TensorTerm out{std::move(t.deltas), std::move(t.hats)};
  out.canonicalize();
  return {std::move(out), factor};
}

/// Calls f(partner) for every perfect matching of n items; partner[a] is a's mate.
template <typename F>
void for_each_pairing(int n, F&& f) {
  std::vector<int> partner(n, -1);
  auto recurse = [&](auto&& self) -> void {
    int first = -1;
    for (int a = 0; a < n; ++a) {
      if (partner[a] < 0) {
        first = a;
        break;
      }
    }
    if (first < 0) {
      f(partner);
      return;
    }
    for (int b = first + 1; b < n; ++b) {
      if (partner[b] >= 0) continue;
      partner[first] = b;
      partner[b] = first;
      self(self);
      partner[first] = -1;
      partner[b] = -1;
    }
  };
  if (n % 2 == 0) recurse(recurse);
}

}  // namespace

// ---------------------------------------------------------------------------
// TensorExpr

TensorExpr::TensorExpr(IndexList indices, Side side) : indices_(std::move(indices)), side_(side) {
  require_distinct(indices_, "TensorExpr");
}

TensorExpr TensorExpr::one(Side side) {
  TensorExpr out({}, side);
  out.add_term({}, 1);
  return out;
}

TensorExpr TensorExpr::monomial(const IndexList& indices, Side side) {
  TensorExpr out(indices, side);
  out.add_term({{}, indices}, 1);
  return out;
}

TensorExpr TensorExpr::delta(const IndexName& a, const IndexName& b, Side side) {
  TensorExpr out({a, b}, side);
  out.add_term({{{a, b}}, {}}, 1);
  return out;
}

void TensorExpr::add_term(TensorTerm term, const BigRational& c) {
  if (c == 0) return;
  term.canonicalize();
  if (term.index_count() != indices_.size() || term_indices(term) != sorted(indices_)) {
    throw ArgumentError("TensorExpr::add_term: term " + term.str() +
                        " does not match the free indices of the expression");
  }
  auto [it, inserted] = terms_.try_emplace(std::move(term), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

TensorExpr& TensorExpr::operator+=(const TensorExpr& rhs) {
  if (sorted(indices_) != sorted(rhs.indices_) || side_ != rhs.side_) {
    throw ArgumentError("TensorExpr: adding expressions with different indices or sides");
  }
  for (const auto& [t, c] : rhs.terms_) add_term(t, c);
  return *this;
}

TensorExpr& TensorExpr::operator-=(const TensorExpr& rhs) { return *this += rhs * BigRational(-1); }

TensorExpr& TensorExpr::operator*=(const BigRational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [t, v] : terms_) v *= c;
  return *this;
}

bool operator==(const TensorExpr& a, const TensorExpr& b) {
  return a.side_ == b.side_ && a.terms_ == b.terms_ && sorted(a.indices_) == sorted(b.indices_);
}

TensorExpr TensorExpr::with_side(Side side) const {
  TensorExpr out = *this;
  out.side_ = side;
  return out;
}

TensorExpr TensorExpr::renamed(const std::map<IndexName, IndexName>& mapping) const {
  auto map_one = [&](const IndexName& x) {
    auto it = mapping.find(x);
    return it == mapping.end() ? x : it->second;
  };
  IndexList indices;
  for (const auto& x : indices_) indices.push_back(map_one(x));
  TensorExpr out(indices, side_);
  for (const auto& [t, c] : terms_) {
    TensorTerm r;
    for (const auto& [a, b] : t.deltas) r.deltas.emplace_back(map_one(a), map_one(b));
    for (const auto& h : t.hats) r.hats.push_back(map_one(h));
    out.add_term(std::move(r), c);
  }
  return out;
}

BigRational TensorExpr::leading_coefficient() const {
  return terms_.empty() ? BigRational(0) : terms_.begin()->second;
}

std::string TensorExpr::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [t, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += to_string(c);
    if (!t.hats.empty() || !t.deltas.empty()) out += " * " + t.str();
  }
  return out;
}

TensorExpr product(const TensorExpr& a, const TensorExpr& b) {
  if (a.side() != b.side() && a.rank() > 0 && b.rank() > 0) {
    throw ArgumentError("product: mixed momentum/position sides");
  }
  const Side side = a.rank() > 0 ? a.side() : b.side();
  IndexList free;
  for (const auto& x : a.indices()) {
    if (std::find(b.indices().begin(), b.indices().end(), x) == b.indices().end()) free.push_back(x);
  }
  for (const auto& x : b.indices()) {
    if (std::find(a.indices().begin(), a.indices().end(), x) == a.indices().end()) free.push_back(x);
  }
  TensorExpr out(free, side);
  for (const auto& [ta, ca] : a.terms()) {
    for (const auto& [tb, cb] : b.terms()) {
      RawTerm raw{ta.deltas, ta.hats};
      raw.deltas.insert(raw.deltas.end(), tb.deltas.begin(), tb.deltas.end());
      raw.hats.insert(raw.hats.end(), tb.hats.begin(), tb.hats.end());
      auto [t, factor] = reduce(std::move(raw));
      out.add_term(std::move(t), ca * cb * factor);
    }
  }
  return out;
}

TensorExpr contract(const TensorExpr& expr, const IndexName& a, const IndexName& b) {
  const auto& idx = expr.indices();
  const bool has_a = std::find(idx.begin(), idx.end(), a) != idx.end();
  const bool has_b = std::find(idx.begin(), idx.end(), b) != idx.end();
  if (a == b || !has_a || !has_b) {
    throw ArgumentError("contract: need two distinct free indices, got " + a.str() + ", " + b.str());
  }
  IndexList free;
  for (const auto& x : idx) {
    if (x != a && x != b) free.push_back(x);
  }
  TensorExpr out(free, expr.side());
  for (const auto& [t, c] : expr.terms()) {
    RawTerm raw{t.deltas, t.hats};
    for (auto& [x, y] : raw.deltas) {
      if (x == b) x = a;
      if (y == b) y = a;
    }
    for (auto& h : raw.hats) {
      if (h == b) h = a;
    }
    auto [term, factor] = reduce(std::move(raw));
    out.add_term(std::move(term), c * factor);
  }
  return out;
}

TensorExpr angular_average(const IndexList& indices, Side side) {
  TensorExpr out(indices, side);
  const int n = static_cast<int>(indices.size());
  if (n % 2 != 0) return out;
  const BigRational weight(BigInt(1), double_factorial(n + 1));
  for_each_pairing(n, [&](const std::vector<int>& partner) {
    TensorTerm t;
    for (int a = 0; a < n; ++a) {
      if (a < partner[a]) t.deltas.emplace_back(indices[a], indices[partner[a]]);
    }
    out.add_term(std::move(t), weight);
  });
  return out;
}

TensorExpr angular_average(const TensorExpr& expr) {
  TensorExpr out(expr.indices(), expr.side());
  for (const auto& [t, c] : expr.terms()) {
    const int n = static_cast<int>(t.hats.size());
    if (n % 2 != 0) continue;
    const BigRational weight = c / BigRational(double_factorial(n + 1));
    for_each_pairing(n, [&](const std::vector<int>& partner) {
      TensorTerm r{t.deltas, {}};
      for (int a = 0; a < n; ++a) {
        if (a < partner[a]) r.deltas.emplace_back(t.hats[a], t.hats[partner[a]]);
      }
      out.add_term(std::move(r), weight);
    });
  }
  return out;
}

// ---------------------------------------------------------------------------
// Decomposition

LegendreCoeffs legendre_coeffs(int l) {
  if (l < 0) throw DomainError("legendre_coeffs: negative degree");
  std::vector<BigRational> prev{1};
  if (l == 0) return {0, prev};
  std::vector<BigRational> cur{0, 1};
  for (int k = 1; k < l; ++k) {
    // (k+1) P_{k+1} = (2k+1) u P_k - k P_{k-1}
    std::vector<BigRational> next(k + 2, BigRational(0));
    for (int j = 0; j <= k; ++j) next[j + 1] += BigRational(2 * k + 1) * cur[j];
    for (int j = 0; j < k; ++j) next[j] -= BigRational(k) * prev[j];
    for (auto& c : next) c /= (k + 1);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return {l, cur};
}

namespace {

/// Projection onto angular momentum l of hat_{i1}..hat_{iL}:
/// (2l+1) sum_k c_k <hat'_{i1..iL} hat'_{j1..jk}> hat_{j1}..hat_{jk}.
/// In each pairing of the averaged monomial an (i,i) pair gives a delta, an (i,j)
/// pair leaves hat_i after the j sum, and a (j,j) pair gives hat_j hat_j = 1.
TensorExpr project_monomial(const IndexList& indices, int l) {
  const int L = static_cast<int>(indices.size());
  TensorExpr out(indices, Side::momentum);
  const LegendreCoeffs legendre = legendre_coeffs(l);
  constexpr std::uint64_t hat_code = 0xF;
  for (int k = 0; k <= l; ++k) {
    const BigRational& ck = legendre.coeffs[k];
    if (ck == 0) continue;
    const int n = L + k;
    if (n % 2 != 0) continue;
    std::unordered_map<std::uint64_t, long long> counts;
    for_each_pairing(n, [&](const std::vector<int>& partner) {
      std::uint64_t code = 0;
      for (int a = 0; a < L; ++a) {
        const std::uint64_t slot = partner[a] < L ? static_cast<std::uint64_t>(partner[a]) : hat_code;
        code |= slot << (4 * a);
      }
      ++counts[code];
    });
    const BigRational weight = BigRational(2 * l + 1) * ck / BigRational(double_factorial(n + 1));
    for (const auto& [code, count] : counts) {
      TensorTerm t;
      for (int a = 0; a < L; ++a) {
        const auto slot = static_cast<int>((code >> (4 * a)) & 0xF);
        if (slot == static_cast<int>(hat_code)) {
          t.hats.push_back(indices[a]);
        } else if (a < slot) {
          t.deltas.emplace_back(indices[a], indices[slot]);
        }
      }
      out.add_term(std::move(t), weight * count);
    }
  }
  return out;
}

void check_rank(int L, int max_rank, const char* where) {
  if (L < 0 || L > max_rank) {
    throw DomainError(std::string(where) + ": rank " + std::to_string(L) + " outside [0, " +
                      std::to_string(max_rank) + "]");
  }
  if (max_rank > 15) throw DomainError(std::string(where) + ": max_rank above 15 unsupported");
}

}  // namespace

std::map<int, TensorExpr> decompose(int L, int max_rank) {
  check_rank(L, max_rank, "decompose");
  static std::mutex mutex;
  static std::map<int, std::map<int, TensorExpr>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(L); it != cache.end()) return it->second;
  }
  const IndexList indices = numbered_indices(L);
  std::map<int, TensorExpr> out;
  for (int l = L; l >= 0; l -= 2) out.emplace(l, project_monomial(indices, l));
  std::lock_guard lock(mutex);
  cache.emplace(L, out);
  return out;
}

std::map<int, TensorExpr> decompose(const IndexList& indices, Side side, int max_rank) {
  require_distinct(indices, "decompose");
  const int L = static_cast<int>(indices.size());
  auto base = decompose(L, max_rank);
  const IndexList names = numbered_indices(L);
  std::map<IndexName, IndexName> mapping;
  for (int a = 0; a < L; ++a) mapping.emplace(names[a], indices[a]);
  std::map<int, TensorExpr> out;
  for (auto& [l, expr] : base) out.emplace(l, expr.renamed(mapping).with_side(side));
  return out;
}

TensorExpr symmetric_structure(const IndexList& indices, int delta_count, Side side) {
  const int n = static_cast<int>(indices.size());
  TensorExpr out(indices, side);
  if (delta_count < 0 || 2 * delta_count > n) return out;
  std::vector<bool> chosen(n, false);
  std::fill(chosen.begin(), chosen.begin() + 2 * delta_count, true);
  // prev_permutation over a sorted-descending mask visits every 2d-subset once.
  do {
    IndexList paired;
    IndexList hats;
    for (int a = 0; a < n; ++a) (chosen[a] ? paired : hats).push_back(indices[a]);
    for_each_pairing(static_cast<int>(paired.size()), [&](const std::vector<int>& partner) {
      TensorTerm t{{}, hats};
      for (std::size_t a = 0; a < paired.size(); ++a) {
        if (static_cast<int>(a) < partner[a]) t.deltas.emplace_back(paired[a], paired[partner[a]]);
      }
      out.add_term(std::move(t), 1);
    });
  } while (std::prev_permutation(chosen.begin(), chosen.end()));
  return out;
}

TensorExpr traceless_top(int L, int max_rank) {
  check_rank(L, max_rank, "traceless_top");
  const IndexList indices = numbered_indices(L);
  const int unknowns = L / 2;
  std::vector<TensorExpr> structures;
  for (int k = 0; k <= unknowns; ++k) structures.push_back(symmetric_structure(indices, k, Side::momentum));
  if (unknowns == 0) return structures[0];

  // Rows: sum_k A_k [t] contract(S_k) = -[t] contract(S_0), one per (pair, term).
  std::vector<std::vector<BigRational>> rows;
  for (int a = 0; a < L; ++a) {
    for (int b = a + 1; b < L; ++b) {
      std::vector<TensorExpr> traces;
      for (const auto& s : structures) traces.push_back(contract(s, indices[a], indices[b]));
      std::map<TensorTerm, std::vector<BigRational>, TermOrder> by_term;
      for (int k = 0; k <= unknowns; ++k) {
        for (const auto& [t, c] : traces[k].terms()) {
          auto& row = by_term.try_emplace(t, std::vector<BigRational>(unknowns + 1, BigRational(0))).first->second;
          if (k == 0) {
            row[unknowns] = -c;
          } else {
            row[k - 1] = c;
          }
        }
      }
      for (auto& [t, row] : by_term) rows.push_back(std::move(row));
    }
  }

  // Gauss-Jordan elimination over the rationals.
  std::size_t pivot_row = 0;
  std::vector<int> pivot_of(unknowns, -1);
  for (int col = 0; col < unknowns; ++col) {
    std::size_t sel = pivot_row;
    while (sel < rows.size() && rows[sel][col] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[sel], rows[pivot_row]);
    const BigRational p = rows[pivot_row][col];
    for (auto& v : rows[pivot_row]) v /= p;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == pivot_row || rows[r][col] == 0) continue;
      const BigRational f = rows[r][col];
      for (int c = 0; c <= unknowns; ++c) rows[r][c] -= f * rows[pivot_row][c];
    }
    pivot_of[col] = static_cast<int>(pivot_row);
    ++pivot_row;
  }
  for (int col = 0; col < unknowns; ++col) {
    if (pivot_of[col] < 0) throw std::logic_error("traceless_top: singular trace system");
  }
  for (std::size_t r = pivot_row; r < rows.size(); ++r) {
    if (rows[r][unknowns] != 0) throw std::logic_error("traceless_top: inconsistent trace system");
  }

  TensorExpr out = structures[0];
  for (int k = 1; k <= unknowns; ++k) out += structures[k] * rows[pivot_of[k - 1]][unknowns];
  return out;
}

std::map<int, TensorExpr> project(const TensorExpr& expr, int max_rank) {
  std::map<int, TensorExpr> out;
  for (const auto& [t, c] : expr.terms()) {
    const auto parts = decompose(t.hats, expr.side(), max_rank);
    for (const auto& [l, part] : parts) {
      auto [it, inserted] = out.try_emplace(l, expr.indices(), expr.side());
      for (const auto& [pt, pc] : part.terms()) {
        TensorTerm merged{t.deltas, pt.hats};
        merged.deltas.insert(merged.deltas.end(), pt.deltas.begin(), pt.deltas.end());
        it->second.add_term(std::move(merged), c * pc);
      }
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

// ---------------------------------------------------------------------------
// Numerics

double eval_tensor(const TensorExpr& expr, const IndexAssignment& assignment,
                   const std::array<double, 3>& unit) {
  const double norm = std::sqrt(unit[0] * unit[0] + unit[1] * unit[1] + unit[2] * unit[2]);
  if (std::abs(norm - 1.0) > 1e-12) throw ArgumentError("eval_tensor: direction is not a unit vector");
  auto value_of = [&](const IndexName& x) {
    auto it = assignment.find(x);
    if (it == assignment.end()) throw ArgumentError("eval_tensor: index " + x.str() + " not assigned");
    if (it->second < 1 || it->second > 3) throw ArgumentError("eval_tensor: index value must be 1..3");
    return it->second;
  };
  for (const auto& x : expr.indices()) value_of(x);
  double total = 0.0;
  for (const auto& [t, c] : expr.terms()) {
    double v = to_double(c);
    for (const auto& [a, b] : t.deltas) {
      if (value_of(a) != value_of(b)) {
        v = 0.0;
        break;
      }
    }
    if (v == 0.0) continue;
    for (const auto& h : t.hats) v *= unit[value_of(h) - 1];
    total += v;
  }
  return total;
}

std::vector<IndexAssignment> all_assignments(const IndexList& indices) {
  std::vector<IndexAssignment> out{{}};
  for (const auto& x : indices) {
    std::vector<IndexAssignment> next;
    for (const auto& partial : out) {
      for (int v = 1; v <= 3; ++v) {
        auto a = partial;
        a[x] = v;
        next.push_back(std::move(a));
      }
    }
    out = std::move(next);
  }
  return out;
}

double ylm_cross_check(int L, int l, int sample_count) {
  std::vector<int> values;
  for (int k = 0; k < L; ++k) values.push_back(1 + (k / 2) % 3);
  return ylm_cross_check(L, l, sample_count, values);
}

double ylm_cross_check(int L, int l, int sample_count, const std::vector<int>& index_values) {
  if (L < 0 || l < 0 || l > 8) throw DomainError("ylm_cross_check: need L >= 0 and 0 <= l <= 8");
  if (static_cast<int>(index_values.size()) != L) throw ArgumentError("ylm_cross_check: need L index values");
  const int degree = L + l;
  const quad::SphereRule sphere(std::max(2 * L + 2, degree / 2 + 2), std::max(4 * L + 4, degree + 2));

  auto monomial_at = [&](const std::array<double, 3>& u) {
    double v = 1.0;
    for (int idx : index_values) v *= u[idx - 1];
    return v;
  };
  std::vector<double> coeff(2 * l + 1, 0.0);
  for (std::size_t q = 0; q < sphere.size(); ++q) {
    const double f = sphere.weights[q] * monomial_at(sphere.directions[q]);
    for (int m = -l; m <= l; ++m) coeff[m + l] += f * quad::real_ylm(l, m, sphere.directions[q]);
  }

  const bool present = l <= L && (L - l) % 2 == 0;
  TensorExpr component;
  IndexAssignment assignment;
  if (present) {
    component = decompose(L, std::max(L, default_max_rank)).at(l);
    const IndexList names = numbered_indices(L);
    for (int k = 0; k < L; ++k) assignment[names[k]] = index_values[k];
  }

  std::mt19937_64 rng(0x5eed + 31 * L + l);
  std::normal_distribution<double> gauss;
  double worst = 0.0;
  for (int s = 0; s < sample_count; ++s) {
    std::array<double, 3> u{gauss(rng), gauss(rng), gauss(rng)};
    const double r = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
    for (auto& c : u) c /= r;
    double rebuilt = 0.0;
    for (int m = -l; m <= l; ++m) rebuilt += coeff[m + l] * quad::real_ylm(l, m, u);
    const double expected = present ? eval_tensor(component, assignment, u) : 0.0;
    worst = std::max(worst, std::abs(rebuilt - expected));
  }
  return worst;
}

}  // namespace angularft
