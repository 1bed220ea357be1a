#include "angularft/cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "angularft/exact.hpp"
#include "angularft/radial.hpp"
#include "angularft/verify.hpp"
#include "json.hpp"

namespace angularft::cli {

using json = nlohmann::ordered_json;

namespace {

const std::vector<std::string> factor_tokens{"'phat'", "'xhat'", "'p'", "'x'", "'delta3'"};

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : sep) + p;
  return out;
}

/// Shortest text that reads back to the same double.
std::string fmt(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

class ExprParser {
 public:
  explicit ExprParser(const std::string& s) : s_(s) {}

  ExprAst parse() {
    ExprAst ast;
    skip_ws();
    const std::size_t head = pos_;
    const std::string pow_word = word();
    if (pow_word != "p" && pow_word != "r") fail(head, {"'p'", "'r'"});
    ast.side = pow_word == "p" ? Side::momentum : Side::position;
    expect('^');
    ast.power = integer();

    while (true) {
      skip_ws();
      if (pos_ == s_.size()) break;
      if (s_[pos_] != '*') fail(pos_, {"'*'", "end of input"});
      ++pos_;
      skip_ws();
      const std::size_t at = pos_;
      const std::string w = word();
      Factor f;
      Side side;
      if (w == "phat" || w == "p") {
        side = Side::momentum;
        f.kind = w == "p" ? FactorKind::full_vector : FactorKind::hat_vector;
      } else if (w == "xhat" || w == "x") {
        side = Side::position;
        f.kind = w == "x" ? FactorKind::full_vector : FactorKind::hat_vector;
      } else if (w == "delta3") {
        side = Side::position;
        f.kind = FactorKind::delta3;
      } else {
        fail(at, factor_tokens);
      }
      if (side != ast.side) {
        throw SemanticError("mixed sides: factor '" + w + "' at offset " + std::to_string(at) + " does not belong to a " +
                                (ast.side == Side::momentum ? "momentum" : "position") + " expression",
                            at);
      }
      if (f.kind == FactorKind::delta3) {
        if (ast.has_delta3()) throw SemanticError("repeated delta3 at offset " + std::to_string(at), at);
      } else {
        expect('[');
        skip_ws();
        const std::size_t id_at = pos_;
        const std::string id = word();
        if (id.empty()) fail(id_at, {"index name"});
        f.index = IndexName(id);
        for (const auto& g : ast.factors) {
          if (g.kind != FactorKind::delta3 && g.index == f.index) {
            throw SemanticError("repeated index '" + id + "' at offset " + std::to_string(id_at), id_at);
          }
        }
        expect(']');
      }
      ast.factors.push_back(std::move(f));
    }

    std::stable_sort(ast.factors.begin(), ast.factors.end(), [](const Factor& a, const Factor& b) {
      const bool da = a.kind == FactorKind::delta3;
      const bool db = b.kind == FactorKind::delta3;
      if (da || db) return !da && db;
      return a.index < b.index;
    });
    return ast;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::string word() {
    const std::size_t start = pos_;
    if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      ++pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    }
    return s_.substr(start, pos_ - start);
  }

  void expect(char c) {
    skip_ws();
    if (pos_ == s_.size() || s_[pos_] != c) fail(pos_, {std::string("'") + c + "'"});
    ++pos_;
  }

  int integer() {
    skip_ws();
    const std::size_t at = pos_;
    bool negative = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      negative = s_[pos_] == '-';
      ++pos_;
      skip_ws();
    }
    const std::size_t digits = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == digits) fail(digits, {"integer"});
    int value = 0;
    const auto [ptr, ec] = std::from_chars(s_.data() + digits, s_.data() + pos_, value);
    if (ec != std::errc{}) throw ParseError("integer out of range at offset " + std::to_string(at), at);
    return negative ? -value : value;
  }

  [[noreturn]] void fail(std::size_t at, std::vector<std::string> expected) const {
    std::string found = "end of input";
    if (at < s_.size()) {
      std::size_t end = at;
      while (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_')) ++end;
      found = "'" + s_.substr(at, std::max<std::size_t>(end - at, 1)) + "'";
    }
    const std::string message =
        "syntax error at offset " + std::to_string(at) + ": expected " + join(expected, " or ") + ", found " + found;
    throw ParseError(message, at, std::move(expected));
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// JSON encoding

json scalar_json(const ExactScalar& c) {
  return {{"rational", angularft::to_string(c.rational())}, {"pi_pow", c.pi_pow()}, {"i_pow", c.i_pow()}};
}

json tensor_json(const TensorExpr& t) {
  json terms = json::array();
  for (const auto& [term, c] : t.terms()) {
    json deltas = json::array();
    for (const auto& [a, b] : term.deltas) deltas.push_back({a.str(), b.str()});
    json hats = json::array();
    for (const auto& h : term.hats) hats.push_back(h.str());
    terms.push_back({{"coefficient", angularft::to_string(c)}, {"deltas", deltas}, {"hats", hats}});
  }
  return terms;
}

std::string singularity_name(Singularity s) {
  switch (s) {
    case Singularity::none: return "none";
    case Singularity::delta3: return "delta3";
    case Singularity::delta_r: return "delta_r";
  }
  return "none";
}

json term_json(const SpaceTerm& t) {
  return {{"coefficient", scalar_json(t.coeff)},
          {"power", t.power},
          {"singularity", singularity_name(t.singularity)},
          {"angular", tensor_json(t.angular)},
          {"text", t.str()}};
}

// ---------------------------------------------------------------------------
// Commands

struct Report {
  json inputs = json::object();
  json result_terms = json::array();
  std::vector<std::string> lines;
  std::vector<std::string> diagnostics;
  std::string verdict = "ok";
  int code = ExitCode::ok;
};

const std::map<std::string, bool> identity_kinds{
    // name -> takes k
    {"inv_r", true},     {"inv_r2", true},   {"delta3", true},       {"full_inv_r", true},
    {"dipole_e", false}, {"dipole_b", false}, {"delta_radial", false}};

int parse_int(const std::string& s, const std::string& what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw ParseError(what + ": expected an integer, got '" + s + "'", 0);
  return v;
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(v)) {
    throw ParseError(what + ": expected a number, got '" + s + "'", 0);
  }
  return v;
}

IdentityRecord make_identity(const Command& cmd) {
  std::optional<int> k;
  if (cmd.args.size() > 1) k = parse_int(cmd.args[1], "k");
  return identity_by_name(cmd.args.at(0), k);
}

json identity_inputs(const Command& cmd) {
  json in{{"kind", cmd.args.at(0)}};
  if (cmd.args.size() > 1) in["k"] = parse_int(cmd.args[1], "k");
  return in;
}

void expression_inputs(Report& rep, const ExprAst& ast) { rep.inputs["canonical"] = render(ast); }

void add_space_expr(Report& rep, const SpaceExpr& e) {
  for (const auto& t : e.terms()) rep.result_terms.push_back(term_json(t));
  rep.lines.push_back(e.str());
}

void do_transform(const Command& cmd, Report& rep) {
  rep.inputs = {{"expression", cmd.args.at(0)}};
  const ExprAst ast = parse_expr(cmd.args.at(0));
  expression_inputs(rep, ast);
  if (ast.side != Side::momentum) throw SemanticError("transform expects a momentum expression (p^n ...)", 0);
  add_space_expr(rep, forward(to_momentum(ast)));
}

void do_inverse(const Command& cmd, Report& rep) {
  rep.inputs = {{"expression", cmd.args.at(0)}};
  const ExprAst ast = parse_expr(cmd.args.at(0));
  expression_inputs(rep, ast);
  if (ast.side != Side::position) throw SemanticError("inverse expects a position expression (r^k ...)", 0);
  add_space_expr(rep, inverse(to_position(ast)));
}

void do_decompose(const Command& cmd, Report& rep) {
  const int L = parse_int(cmd.args.at(0), "L");
  rep.inputs = {{"L", L}};
  if (L < 0 || L > default_max_rank) {
    throw DomainError("decompose: L must be in [0, " + std::to_string(default_max_rank) + "]");
  }
  for (const auto& [l, t] : decompose(L)) {
    rep.result_terms.push_back({{"l", l}, {"angular", tensor_json(t)}, {"text", t.str()}});
    rep.lines.push_back("l=" + std::to_string(l) + ": " + t.str());
  }
}

void do_chi(const Command& cmd, Report& rep) {
  const int n = parse_int(cmd.args.at(0), "n");
  const int l = parse_int(cmd.args.at(1), "l");
  rep.inputs = {{"n", n}, {"l", l}};
  const ExactScalar c = chi(n, l);
  rep.result_terms.push_back(scalar_json(c));
  rep.lines.push_back(c.str());
  rep.diagnostics.push_back("numeric value " + fmt(c.to_double()));
}

void do_radial(const Command& cmd, Report& rep) {
  const int n = parse_int(cmd.args.at(0), "n");
  const int l = parse_int(cmd.args.at(1), "l");
  const double r = parse_double(cmd.args.at(2), "r");
  rep.inputs = {{"n", n}, {"l", l}, {"r", r}, {"lambda", cmd.lambda}};
  const ExactScalar c = chi(n, l);
  const double value = regulated_radial({n, l, r, cmd.lambda});
  const double limit = c.to_double() * std::pow(r, -(n + 3));
  json row{{"integral", value}, {"chi", scalar_json(c)}, {"limit", limit}};
  rep.lines.push_back("integral = " + fmt(value));
  rep.lines.push_back("chi = " + c.str());
  rep.lines.push_back("limit = " + fmt(limit));
  if (c.is_zero()) {
    rep.diagnostics.push_back("chi vanishes at n = l; the regulated integral is O(lambda)");
  } else {
    const double deviation = std::abs(value / limit - 1.0);
    const double bound = 5.0 * cmd.lambda / r;
    row["deviation"] = deviation;
    row["bound"] = bound;
    rep.lines.push_back("deviation = " + fmt(deviation));
    rep.lines.push_back("bound 5*lambda/r = " + fmt(bound));
    const bool pass = deviation <= bound;
    rep.verdict = pass ? "pass" : "fail";
    if (!pass) rep.code = ExitCode::verification_failed;
  }
  rep.result_terms.push_back(row);
}

void do_identity(const Command& cmd, Report& rep) {
  rep.inputs = identity_inputs(cmd);
  const IdentityRecord rec = make_identity(cmd);
  rep.inputs["lhs"] = rec.lhs();
  for (const auto& t : rec.rhs.terms()) rep.result_terms.push_back(term_json(t));
  rep.lines.push_back(rec.str());
}

std::string assignment_text(const IndexAssignment& a) {
  std::vector<std::string> parts;
  for (const auto& [name, v] : a) parts.push_back(name.str() + "=" + std::to_string(v));
  return "{" + join(parts, ",") + "}";
}

void do_verify(const Command& cmd, Report& rep) {
  rep.inputs = identity_inputs(cmd);
  rep.inputs["tol"] = cmd.tol;
  BallConfig cfg;
  if (cmd.ball_radius) cfg.R = *cmd.ball_radius;
  rep.inputs["ball_radius"] = cfg.R;
  const IdentityRecord rec = make_identity(cmd);
  const VerificationReport report = verify_identity(rec, standard_family(), cmd.tol, cfg);
  std::size_t failed = 0;
  for (const auto& row : report.rows) {
    json a = json::object();
    for (const auto& [name, v] : row.assignment) a[name.str()] = v;
    rep.result_terms.push_back({{"function", row.function_index},
                                {"assignment", a},
                                {"lhs", row.lhs},
                                {"rhs", row.rhs},
                                {"abs_diff", row.abs_diff},
                                {"rel_diff", row.rel_diff},
                                {"pass", row.pass}});
    if (!row.pass) ++failed;
  }
  rep.diagnostics = report.diagnostics;
  rep.lines.push_back(rec.str());
  rep.lines.push_back("rows: " + std::to_string(report.rows.size()) + ", failed: " + std::to_string(failed) +
                      ", max rel diff: " + fmt(report.max_rel_diff()) + ", tolerance: " + fmt(cmd.tol));
  for (const auto& row : report.rows) {
    if (row.pass) continue;
    rep.lines.push_back("fail: function " + std::to_string(row.function_index) + " " + assignment_text(row.assignment) +
                        " lhs " + fmt(row.lhs) + " rhs " + fmt(row.rhs));
  }
  rep.verdict = report.pass ? "pass" : "fail";
  if (!report.pass) rep.code = ExitCode::verification_failed;
}

struct SelfCheck {
  std::string name;
  std::function<std::string()> run;  // empty string on success, else the failure detail
};

std::vector<SelfCheck> self_checks() {
  return {
      {"chi reciprocity l <= 6",
       [] {
         for (int l = 0; l <= 6; ++l) {
           for (int n = -(l + 2); n <= l - 1; ++n) {
             if (chi(n, l) * chi(-(n + 3), l) != ExactScalar(BigRational(1, 2), 0, 1)) {
               return "n=" + std::to_string(n) + " l=" + std::to_string(l);
             }
           }
         }
         return std::string();
       }},
      {"decomposition complete and traceless L <= 6",
       [] {
         for (int L = 0; L <= 6; ++L) {
           const auto parts = decompose(L);
           TensorExpr sum(numbered_indices(L), Side::momentum);
           for (const auto& [l, t] : parts) sum += t;
           if (sum != TensorExpr::monomial(numbered_indices(L))) return "completeness L=" + std::to_string(L);
           if (L >= 2 && !contract(parts.at(L), "i1", "i2").is_zero()) return "trace L=" + std::to_string(L);
         }
         return std::string();
       }},
      {"inverse(forward) round trip, rank <= 3",
       [] {
         for (int L = 0; L <= 3; ++L) {
           for (const auto& [l, component] : decompose(L)) {
             for (int n = -(l + 2); n <= l; ++n) {
               const MomentumExpr m{n, component};
               if (inverse(forward(m)) != as_space_expr(m)) return "n=" + std::to_string(n) + " l=" + std::to_string(l);
             }
           }
         }
         return std::string();
       }},
      {"expression parse/render round trip",
       [] {
         for (const char* s : {"p^-2 * p[i] * p[j]", "p^0", "r^-3*xhat[j]*xhat[i]", "r ^ 0 * delta3", "p^1*phat[a]*p[b]"}) {
           const ExprAst ast = parse_expr(s);
           if (parse_expr(render(ast)) != ast) return std::string(s);
         }
         return std::string();
       }},
      {"regulated radial integral near the chi limit",
       [] {
         const double lambda = 1e-3;
         const double v = regulated_radial({-1, 1, 1.0, lambda});
         const double dev = std::abs(v / chi(-1, 1).to_double() - 1.0);
         return dev <= 5 * lambda ? std::string() : "deviation " + fmt(dev);
       }},
      {"Frahm identity verifies at 1e-6",
       [] {
         const auto report = verify_identity(full_derivative_inv_r(2), standard_family(), 1e-6);
         return report.pass ? std::string() : "max rel diff " + fmt(report.max_rel_diff());
       }},
  };
}

void do_selftest(const Command&, Report& rep) {
  bool all = true;
  for (const auto& check : self_checks()) {
    const std::string detail = check.run();
    const bool pass = detail.empty();
    all = all && pass;
    rep.result_terms.push_back({{"name", check.name}, {"pass", pass}, {"detail", detail}});
    rep.lines.push_back((pass ? "pass: " : "FAIL: ") + check.name + (pass ? "" : " (" + detail + ")"));
  }
  rep.verdict = all ? "pass" : "fail";
  if (!all) rep.code = ExitCode::verification_failed;
}

void emit(const Command& cmd, const Report& rep, std::ostream& out) {
  if (cmd.format == OutputFormat::json) {
    const json doc{{"command", to_string(cmd.verb)},
                   {"inputs", rep.inputs},
                   {"result_terms", rep.result_terms},
                   {"diagnostics", rep.diagnostics},
                   {"verdict", rep.verdict}};
    out << doc.dump(2) << '\n';
    return;
  }
  for (const auto& line : rep.lines) out << line << '\n';
  for (const auto& d : rep.diagnostics) out << "# " << d << '\n';
}

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t offset, std::vector<std::string> expected)
    : std::invalid_argument(what), offset_(offset), expected_(std::move(expected)) {}

IndexList ExprAst::indices() const {
  IndexList out;
  for (const auto& f : factors) {
    if (f.kind != FactorKind::delta3) out.push_back(f.index);
  }
  return out;
}

bool ExprAst::has_delta3() const {
  return std::any_of(factors.begin(), factors.end(), [](const Factor& f) { return f.kind == FactorKind::delta3; });
}

ExprAst parse_expr(const std::string& input) { return ExprParser(input).parse(); }

std::vector<std::string> identity_kind_names() {
  std::vector<std::string> names;
  for (const auto& [name, takes_k] : identity_kinds) names.push_back(name);
  return names;
}

IdentityRecord identity_by_name(const std::string& kind, std::optional<int> k) {
  const auto it = identity_kinds.find(kind);
  if (it == identity_kinds.end()) {
    throw ArgumentError("unknown identity kind '" + kind + "', expected one of " + join(identity_kind_names(), ", "));
  }
  if (it->second != k.has_value()) {
    throw ArgumentError("identity kind '" + kind + (it->second ? "' needs k" : "' takes no k"));
  }
  if (kind == "dipole_e") return dipole_fields().E;
  if (kind == "dipole_b") return dipole_fields().B;
  if (kind == "delta_radial") return delta_radial_identity();
  if (kind == "full_inv_r") return full_derivative_inv_r(*k);
  const BaseFunction base = kind == "inv_r"    ? BaseFunction::inv_r
                            : kind == "inv_r2" ? BaseFunction::inv_r2
                                               : BaseFunction::delta3;
  return derivative_identity(base, *k);
}

std::string render(const ExprAst& ast) {
  const bool mom = ast.side == Side::momentum;
  std::string out = std::string(mom ? "p" : "r") + "^" + std::to_string(ast.power);
  for (const auto& f : ast.factors) {
    out += " * ";
    switch (f.kind) {
      case FactorKind::hat_vector: out += std::string(mom ? "phat" : "xhat") + "[" + f.index.str() + "]"; break;
      case FactorKind::full_vector: out += std::string(mom ? "p" : "x") + "[" + f.index.str() + "]"; break;
      case FactorKind::delta3: out += "delta3"; break;
    }
  }
  return out;
}

namespace {
int full_vector_count(const ExprAst& ast) {
  return static_cast<int>(std::count_if(ast.factors.begin(), ast.factors.end(),
                                        [](const Factor& f) { return f.kind == FactorKind::full_vector; }));
}
}  // namespace

MomentumExpr to_momentum(const ExprAst& ast) {
  if (ast.side != Side::momentum) throw ArgumentError("to_momentum: position expression");
  return {ast.power + full_vector_count(ast), TensorExpr::monomial(ast.indices(), Side::momentum), true};
}

PositionExpr to_position(const ExprAst& ast) {
  if (ast.side != Side::position) throw ArgumentError("to_position: momentum expression");
  const SpaceTerm t{ExactScalar(1), ast.power + full_vector_count(ast),
                    ast.has_delta3() ? Singularity::delta3 : Singularity::none,
                    TensorExpr::monomial(ast.indices(), Side::position)};
  return PositionExpr(Side::position, {t});
}

std::string to_string(Verb verb) {
  switch (verb) {
    case Verb::transform: return "transform";
    case Verb::inverse: return "inverse";
    case Verb::decompose: return "decompose";
    case Verb::chi: return "chi";
    case Verb::radial: return "radial";
    case Verb::identity: return "identity";
    case Verb::verify: return "verify";
    case Verb::selftest: return "selftest";
  }
  return "";
}

std::optional<Command> parse_command(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Exact Fourier transforms of p^n times angular monomials", "angularft"};
  app.require_subcommand(1);

  Command cmd;
  std::string format = "text";
  double ball_radius = 0.0;

  struct VerbSpec {
    Verb verb;
    const char* help;
    int min_args;
    int max_args;
  };
  const std::vector<VerbSpec> verbs{
      {Verb::transform, "Fourier transform of a momentum expression, e.g. \"p^-2 * p[i] * p[j]\"", 1, 1},
      {Verb::inverse, "Inverse transform of a position expression, e.g. \"r^-1\"", 1, 1},
      {Verb::decompose, "Angular momentum decomposition of phat_i1 ... phat_iL: decompose L", 1, 1},
      {Verb::chi, "Exact chi_{n l}: chi n l", 2, 2},
      {Verb::radial, "Regulated radial integral against the chi limit: radial n l r", 3, 3},
      {Verb::identity, "Derivative identity: identity KIND [k]", 1, 2},
      {Verb::verify, "Verify an identity against Gaussian test functions: verify KIND [k]", 1, 2},
      {Verb::selftest, "Run the built-in property checks", 0, 0},
  };
  std::map<CLI::App*, Verb> by_app;
  for (const auto& v : verbs) {
    CLI::App* sub = app.add_subcommand(to_string(v.verb), v.help);
    if (v.max_args > 0) sub->add_option("args", cmd.args, "positional arguments")->expected(v.min_args, v.max_args);
    if (v.min_args > 0) sub->get_option("args")->required();
    sub->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--tol", cmd.tol, "relative tolerance for verify")->check(CLI::PositiveNumber);
    sub->add_option("--lambda", cmd.lambda, "cutoff for radial")->check(CLI::PositiveNumber);
    sub->add_option("--ball-radius", ball_radius, "inner ball radius for verify")->check(CLI::PositiveNumber);
    by_app[sub] = v.verb;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ParseError(e.what(), 0);
  }

  CLI::App* chosen = app.get_subcommands().front();
  cmd.verb = by_app.at(chosen);
  cmd.format = format == "json" ? OutputFormat::json : OutputFormat::text;
  if (chosen->count("--ball-radius") > 0) cmd.ball_radius = ball_radius;

  switch (cmd.verb) {
    case Verb::decompose: parse_int(cmd.args[0], "L"); break;
    case Verb::chi:
      parse_int(cmd.args[0], "n");
      parse_int(cmd.args[1], "l");
      break;
    case Verb::radial:
      parse_int(cmd.args[0], "n");
      parse_int(cmd.args[1], "l");
      if (!(parse_double(cmd.args[2], "r") > 0.0)) throw ParseError("r: must be positive", 0);
      break;
    case Verb::identity:
    case Verb::verify: {
      const auto it = identity_kinds.find(cmd.args[0]);
      if (it == identity_kinds.end()) {
        const auto names = identity_kind_names();
        throw ParseError("unknown identity kind '" + cmd.args[0] + "', expected one of " + join(names, ", "), 0, names);
      }
      if (it->second && cmd.args.size() != 2) throw ParseError("identity kind '" + it->first + "' needs k", 0);
      if (!it->second && cmd.args.size() != 1) throw ParseError("identity kind '" + it->first + "' takes no k", 0);
      if (it->second) parse_int(cmd.args[1], "k");
      break;
    }
    default: break;
  }
  return cmd;
}

int run(const Command& cmd, std::ostream& out, std::ostream& err) {
  Report rep;
  try {
    switch (cmd.verb) {
      case Verb::transform: do_transform(cmd, rep); break;
      case Verb::inverse: do_inverse(cmd, rep); break;
      case Verb::decompose: do_decompose(cmd, rep); break;
      case Verb::chi: do_chi(cmd, rep); break;
      case Verb::radial: do_radial(cmd, rep); break;
      case Verb::identity: do_identity(cmd, rep); break;
      case Verb::verify: do_verify(cmd, rep); break;
      case Verb::selftest: do_selftest(cmd, rep); break;
    }
  } catch (const ParseError& e) {
    rep = {rep.inputs, json::array(), {}, {e.what()}, "parse_error", ExitCode::parse_error};
    err << "angularft: " << e.what() << '\n';
  } catch (const ArgumentError& e) {
    rep = {rep.inputs, json::array(), {}, {e.what()}, "parse_error", ExitCode::parse_error};
    err << "angularft: " << e.what() << '\n';
  } catch (const std::exception& e) {
    rep = {rep.inputs, json::array(), {}, {e.what()}, "domain_error", ExitCode::domain_error};
    err << "angularft: " << e.what() << '\n';
  }
  if (rep.code == ExitCode::ok || rep.code == ExitCode::verification_failed || cmd.format == OutputFormat::json) {
    emit(cmd, rep, out);
  }
  return rep.code;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::optional<Command> cmd;
  try {
    cmd = parse_command(args, out);
  } catch (const ParseError& e) {
    err << "angularft: " << e.what() << '\n';
    return ExitCode::parse_error;
  }
  if (!cmd) return ExitCode::ok;
  return run(*cmd, out, err);
}

}  // namespace angularft::cli
