#include "bess/milp/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bess::milp {

LinearExpr& LinearExpr::operator+=(const LinearExpr& rhs) {
  terms_.insert(terms_.end(), rhs.terms_.begin(), rhs.terms_.end());
  constant_ += rhs.constant_;
  return *this;
}

LinearExpr& LinearExpr::operator-=(const LinearExpr& rhs) {
  terms_.reserve(terms_.size() + rhs.terms_.size());
  for (const auto& t : rhs.terms_) terms_.push_back({t.var, -t.coef});
  constant_ -= rhs.constant_;
  return *this;
}

LinearExpr& LinearExpr::operator*=(double k) {
  for (auto& t : terms_) t.coef *= k;
  constant_ *= k;
  return *this;
}

double LinearExpr::evaluate(std::span<const double> values) const {
  double v = constant_;
  for (const auto& t : terms_) v += t.coef * values[static_cast<std::size_t>(t.var.value)];
  return v;
}

LinearExpr operator+(LinearExpr a, const LinearExpr& b) { return a += b; }
LinearExpr operator-(LinearExpr a, const LinearExpr& b) { return a -= b; }
LinearExpr operator*(LinearExpr a, double k) { return a *= k; }
LinearExpr operator*(double k, LinearExpr a) { return a *= k; }
LinearExpr operator*(double k, VarId v) { return LinearExpr{}.add(v, k); }
LinearExpr operator*(VarId v, double k) { return LinearExpr{}.add(v, k); }

VarId Model::add_variable(double lo, double hi, VarType type, std::string name) {
  if (std::isnan(lo) || std::isnan(hi) || lo > hi) {
    std::ostringstream msg;
    msg << "variable bounds inverted: [" << lo << ", " << hi << "]";
    throw ModelError(msg.str());
  }
  if (type == VarType::Binary && (lo < 0.0 || hi > 1.0)) {
    throw ModelError("binary variable bounds must lie within [0, 1]");
  }
  vars_.push_back({lo, hi, type, 0, std::move(name)});
  return VarId{static_cast<std::int32_t>(vars_.size() - 1)};
}

std::vector<Term> Model::normalize(const LinearExpr& expr) const {
  std::vector<Term> terms = expr.terms();
  for (const auto& t : terms) {
    if (t.var.value < 0 || static_cast<std::size_t>(t.var.value) >= vars_.size()) {
      throw ModelError("expression references unknown variable id " + std::to_string(t.var.value));
    }
  }
  std::stable_sort(terms.begin(), terms.end(),
                   [](const Term& a, const Term& b) { return a.var < b.var; });
  std::vector<Term> merged;
  merged.reserve(terms.size());
  for (const auto& t : terms) {
    if (!merged.empty() && merged.back().var == t.var) {
      merged.back().coef += t.coef;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coef == 0.0; });
  return merged;
}

ConstraintId Model::add_constraint(const LinearExpr& expr, Sense sense, double rhs, std::string name) {
  Constraint c{normalize(expr), sense, rhs - expr.constant(), std::move(name)};
  rows_.push_back(std::move(c));
  return ConstraintId{static_cast<std::int32_t>(rows_.size() - 1)};
}

void Model::set_objective(const LinearExpr& expr) {
  objective_ = normalize(expr);
  objective_constant_ = expr.constant();
}

void Model::set_branch_priority(VarId v, int priority) {
  vars_.at(static_cast<std::size_t>(v.value)).branch_priority = priority;
}

std::size_t Model::num_binaries() const {
  return static_cast<std::size_t>(std::count_if(
      vars_.begin(), vars_.end(), [](const Variable& v) { return v.type == VarType::Binary; }));
}

double Model::objective_value(std::span<const double> values) const {
  double v = objective_constant_;
  for (const auto& t : objective_) v += t.coef * values[static_cast<std::size_t>(t.var.value)];
  return v;
}

double Model::max_violation(std::span<const double> values) const {
  double worst = 0.0;
  for (std::size_t j = 0; j < vars_.size(); ++j) {
    worst = std::max({worst, vars_[j].lo - values[j], values[j] - vars_[j].hi});
  }
  for (const auto& c : rows_) {
    double act = 0.0;
    for (const auto& t : c.terms) act += t.coef * values[static_cast<std::size_t>(t.var.value)];
    switch (c.sense) {
      case Sense::LessEqual:
        worst = std::max(worst, act - c.rhs);
        break;
      case Sense::GreaterEqual:
        worst = std::max(worst, c.rhs - act);
        break;
      case Sense::Equal:
        worst = std::max(worst, std::abs(act - c.rhs));
        break;
    }
  }
  return worst;
}

double Model::max_integrality_violation(std::span<const double> values) const {
  double worst = 0.0;
  for (std::size_t j = 0; j < vars_.size(); ++j) {
    if (vars_[j].type != VarType::Binary) continue;
    worst = std::max(worst, std::min(std::abs(values[j]), std::abs(1.0 - values[j])));
  }
  return worst;
}

}  // namespace bess::milp
