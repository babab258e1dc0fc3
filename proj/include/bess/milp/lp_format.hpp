#pragma once

#include <iosfwd>

#include "bess/milp/model.hpp"

namespace bess::milp {

// Plain-text dump in a CPLEX-LP-like layout for debugging; see
// docs/lp_format.md for the grammar. Unnamed variables print as x<id>,
// unnamed rows as c<id>.
void write_lp(const Model& model, std::ostream& out);

}  // namespace bess::milp
