#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bess::milp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct VarId {
  std::int32_t value = -1;
  friend auto operator<=>(const VarId&, const VarId&) = default;
};

struct ConstraintId {
  std::int32_t value = -1;
  friend auto operator<=>(const ConstraintId&, const ConstraintId&) = default;
};

enum class VarType { Continuous, Binary };
enum class Sense { LessEqual, Equal, GreaterEqual };

class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Term {
  VarId var;
  double coef = 0.0;
};

// Affine expression sum(coef_i * x_i) + constant. Terms may repeat a variable
// until the expression is normalized by the model.
class LinearExpr {
 public:
  LinearExpr() = default;
  LinearExpr(double constant) : constant_(constant) {}  // NOLINT(google-explicit-constructor)
  LinearExpr(VarId v) { terms_.push_back({v, 1.0}); }   // NOLINT(google-explicit-constructor)

  LinearExpr& add(VarId v, double coef) {
    terms_.push_back({v, coef});
    return *this;
  }
  LinearExpr& add_constant(double c) {
    constant_ += c;
    return *this;
  }

  LinearExpr& operator+=(const LinearExpr& rhs);
  LinearExpr& operator-=(const LinearExpr& rhs);
  LinearExpr& operator*=(double k);

  const std::vector<Term>& terms() const { return terms_; }
  double constant() const { return constant_; }

  // Value at the given full variable assignment.
  double evaluate(std::span<const double> values) const;

 private:
  std::vector<Term> terms_;
  double constant_ = 0.0;
};

LinearExpr operator+(LinearExpr a, const LinearExpr& b);
LinearExpr operator-(LinearExpr a, const LinearExpr& b);
LinearExpr operator*(LinearExpr a, double k);
LinearExpr operator*(double k, LinearExpr a);
LinearExpr operator*(double k, VarId v);
LinearExpr operator*(VarId v, double k);

struct Variable {
  double lo = 0.0;
  double hi = kInf;
  VarType type = VarType::Continuous;
  int branch_priority = 0;
  std::string name;
};

// Stored constraints have their terms sorted by variable with duplicates
// merged and the expression constant folded into rhs.
struct Constraint {
  std::vector<Term> terms;
  Sense sense = Sense::LessEqual;
  double rhs = 0.0;
  std::string name;
};

// Minimization model. Single writer; const access is thread safe.
class Model {
 public:
  VarId add_variable(double lo, double hi, VarType type, std::string name = {});
  VarId add_binary(std::string name = {}) { return add_variable(0.0, 1.0, VarType::Binary, std::move(name)); }

  ConstraintId add_constraint(const LinearExpr& expr, Sense sense, double rhs, std::string name = {});

  void set_objective(const LinearExpr& expr);

  // Higher priority binaries are branched on first when priorities are
  // enabled in SolveOptions.
  void set_branch_priority(VarId v, int priority);

  std::size_t num_variables() const { return vars_.size(); }
  std::size_t num_constraints() const { return rows_.size(); }
  std::size_t num_binaries() const;

  const Variable& variable(VarId v) const { return vars_.at(static_cast<std::size_t>(v.value)); }
  const std::vector<Variable>& variables() const { return vars_; }
  const Constraint& constraint(ConstraintId c) const { return rows_.at(static_cast<std::size_t>(c.value)); }
  const std::vector<Constraint>& constraints() const { return rows_; }

  // Objective terms are normalized like constraint terms.
  const std::vector<Term>& objective() const { return objective_; }
  double objective_constant() const { return objective_constant_; }

  double objective_value(std::span<const double> values) const;

  // Largest bound or row violation of an assignment (0 when feasible).
  double max_violation(std::span<const double> values) const;
  // Largest distance of a binary from {0, 1}.
  double max_integrality_violation(std::span<const double> values) const;

 private:
  std::vector<Term> normalize(const LinearExpr& expr) const;

  std::vector<Variable> vars_;
  std::vector<Constraint> rows_;
  std::vector<Term> objective_;
  double objective_constant_ = 0.0;
};

}  // namespace bess::milp
