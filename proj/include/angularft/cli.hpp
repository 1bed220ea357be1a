#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "angularft/transform.hpp"

namespace angularft::cli {

/// Syntax error in an expression, located by byte offset into the input.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t offset, std::vector<std::string> expected = {});
  std::size_t offset() const { return offset_; }
  /// Token kinds that would have been accepted at offset().
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// Well-formed expression that breaks a rule (mixed sides, repeated index).
class SemanticError : public ParseError {
 public:
  using ParseError::ParseError;
};

enum class FactorKind { hat_vector, full_vector, delta3 };

struct Factor {
  FactorKind kind = FactorKind::hat_vector;
  IndexName index;

  friend bool operator==(const Factor&, const Factor&) = default;
};

struct ExprAst {
  Side side = Side::momentum;
  int power = 0;
  /// Vector factors in natural index order, then delta3.
  std::vector<Factor> factors;

  IndexList indices() const;
  bool has_delta3() const;
  friend bool operator==(const ExprAst&, const ExprAst&) = default;
};

/// EXPR := POW ('*' FACTOR)*, POW := ('p'|'r') '^' INT,
/// FACTOR := ('phat'|'xhat'|'p'|'x') '[' IDENT ']' | 'delta3'.
ExprAst parse_expr(const std::string& input);
std::string render(const ExprAst& ast);

/// Full vectors fold into the power: p_i = p phat_i.
MomentumExpr to_momentum(const ExprAst& ast);
PositionExpr to_position(const ExprAst& ast);

/// inv_r, inv_r2, delta3, full_inv_r (these take k), dipole_e, dipole_b, delta_radial.
std::vector<std::string> identity_kind_names();
IdentityRecord identity_by_name(const std::string& kind, std::optional<int> k = std::nullopt);

enum class Verb { transform, inverse, decompose, chi, radial, identity, verify, selftest };
enum class OutputFormat { text, json };

struct Command {
  Verb verb = Verb::selftest;
  /// Positional arguments after the verb, validated for the verb.
  std::vector<std::string> args;
  OutputFormat format = OutputFormat::text;
  double tol = 1e-6;
  double lambda = 1e-3;
  std::optional<double> ball_radius;
};

std::string to_string(Verb verb);

enum ExitCode : int { ok = 0, domain_error = 1, parse_error = 2, verification_failed = 3 };

/// Parses argv (without the program name). Throws ParseError on bad usage.
/// Returns nullopt when help was requested and written to `out`.
std::optional<Command> parse_command(const std::vector<std::string>& args, std::ostream& out);

int run(const Command& cmd, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace angularft::cli
