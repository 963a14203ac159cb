#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "bmin/experiment.hpp"
#include "bmin/minimizer.hpp"

namespace bmin {

/// 17 significant digits, so every double round-trips.
std::string format_real(double value);

/// Columns: n,t_exact,t_float,value,M_n,tau_level,rho_max,undershoot_max[,delta_n]
void write_trace_csv(std::ostream& out, std::span<const StepTrace> steps,
                     std::span<const double> deltas = {});

/// Columns: algorithm,lambda,p,n,R,lp_error,std_pth_power,dropped_replications.
/// lambda is left empty for the equidistant baseline.
void write_errors_csv(std::ostream& out, std::span<const ErrorEstimate> rows);

}  // namespace bmin
