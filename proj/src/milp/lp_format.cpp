#include "bess/milp/lp_format.hpp"

#include <cmath>
#include <ostream>
#include <string>

namespace bess::milp {
namespace {

std::string var_name(const Model& m, std::int32_t id) {
  const auto& v = m.variables()[static_cast<std::size_t>(id)];
  return v.name.empty() ? "x" + std::to_string(id) : v.name;
}

void write_terms(const Model& m, const std::vector<Term>& terms, std::ostream& out) {
  if (terms.empty()) {
    out << " 0";
    return;
  }
  for (const auto& t : terms) {
    out << (t.coef < 0 ? " - " : " + ") << std::abs(t.coef) << ' ' << var_name(m, t.var.value);
  }
}

}  // namespace

void write_lp(const Model& model, std::ostream& out) {
  const auto prec = out.precision(17);
  out << "Minimize\n obj:";
  write_terms(model, model.objective(), out);
  if (model.objective_constant() != 0.0) {
    out << (model.objective_constant() < 0 ? " - " : " + ") << std::abs(model.objective_constant());
  }
  out << "\nSubject To\n";
  for (std::size_t i = 0; i < model.num_constraints(); ++i) {
    const auto& c = model.constraints()[i];
    out << ' ' << (c.name.empty() ? "c" + std::to_string(i) : c.name) << ':';
    write_terms(model, c.terms, out);
    switch (c.sense) {
      case Sense::LessEqual:
        out << " <= ";
        break;
      case Sense::GreaterEqual:
        out << " >= ";
        break;
      case Sense::Equal:
        out << " = ";
        break;
    }
    out << c.rhs << '\n';
  }
  out << "Bounds\n";
  for (std::size_t j = 0; j < model.num_variables(); ++j) {
    const auto& v = model.variables()[j];
    if (v.type == VarType::Binary) continue;
    const std::string name = var_name(model, static_cast<std::int32_t>(j));
    if (std::isinf(v.lo) && std::isinf(v.hi)) {
      out << ' ' << name << " free\n";
    } else if (std::isinf(v.hi)) {
      out << ' ' << name << " >= " << v.lo << '\n';
    } else if (std::isinf(v.lo)) {
      out << " -inf <= " << name << " <= " << v.hi << '\n';
    } else {
      out << ' ' << v.lo << " <= " << name << " <= " << v.hi << '\n';
    }
  }
  out << "Binaries\n";
  for (std::size_t j = 0; j < model.num_variables(); ++j) {
    if (model.variables()[j].type == VarType::Binary) {
      out << ' ' << var_name(model, static_cast<std::int32_t>(j)) << '\n';
    }
  }
  out << "End\n";
  out.precision(prec);
}

}  // namespace bess::milp
