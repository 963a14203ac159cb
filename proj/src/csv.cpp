#include "bmin/csv.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace bmin {

std::string format_real(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_trace_csv(std::ostream& out, std::span<const StepTrace> steps,
                     std::span<const double> deltas) {
    const bool with_delta = !deltas.empty();
    if (with_delta && deltas.size() != steps.size()) {
        throw std::invalid_argument("one delta per trace row is required");
    }
    out << "n,t_exact,t_float,value,M_n,tau_level,rho_max,undershoot_max";
    if (with_delta) out << ",delta_n";
    out << '\n';
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const StepTrace& s = steps[i];
        out << s.n << ',' << s.new_site.to_string() << ',' << format_real(s.new_site.to_double())
            << ',' << format_real(s.new_value) << ',' << format_real(s.min_value) << ','
            << s.tau_level << ',' << format_real(s.rho_max) << ','
            << format_real(s.undershoot_max);
        if (with_delta) out << ',' << format_real(deltas[i]);
        out << '\n';
    }
}

void write_errors_csv(std::ostream& out, std::span<const ErrorEstimate> rows) {
    out << "algorithm,lambda,p,n,R,lp_error,std_pth_power,dropped_replications\n";
    for (const auto& r : rows) {
        out << to_string(r.algorithm) << ',' << (r.lambda ? format_real(*r.lambda) : "") << ','
            << format_real(r.p) << ',' << r.n << ',' << r.replications << ','
            << format_real(r.lp_error) << ',' << format_real(r.std_pth_power) << ','
            << r.dropped << '\n';
    }
}

}  // namespace bmin
