#pragma once

// Closed-form life-loss mathematics for a cycle-life curve N(d).
//
// SOC s maps to depth d = 1 - s. A half cycle spanning [s, 1] consumes
// 1 / (2 N(1 - s)) of the battery life. Differentiating that with respect to
// stored energy gives the loss coefficient per MWh of throughput,
//
//   lambda(s) = -N'(1 - s) / (2 C_rated N(1 - s)^2),
//
// whose antiderivative in s (times C_rated) is the primitive
//
//   F(s) = (1/N(1) - 1/N(1 - s)) / 2,   F(0) = 0.
//
// Within one time step the SOC moves monotonically, so the step loss is
// |F(s_next) - F(s_prev)|. All arguments are SOC fractions in [0, 1]; values
// outside raise std::domain_error.

#include "bess/degradation/curve.hpp"

namespace bess::degradation {

double cycles_to_failure(const CycleLifeCurve& curve, double dod);

double half_cycle_loss(const CycleLifeCurve& curve, double soc);

// Life fraction per MWh of throughput at the given SOC.
double loss_coefficient(const CycleLifeCurve& curve, const BatteryParams& battery, double soc);

// F(s); dimensionless life fraction.
double primitive(const CycleLifeCurve& curve, double soc);

double step_loss_exact(const CycleLifeCurve& curve, double soc_prev, double soc_next);

}  // namespace bess::degradation
