#include "singulab/params.hpp"

#include <cmath>

#include "singulab/error.hpp"

namespace singulab {

Params Params::make(int N, double q, double m) {
    if (N < 2) throw DomainError("dimension N must be >= 2, got " + std::to_string(N));
    if (!(q > 1.0) || !std::isfinite(q)) throw DomainError("exponent q must be > 1");
    if (!(m > 0.0) || !std::isfinite(m)) throw DomainError("coefficient m must be > 0");
    return Params{N, q, m};
}

Params Params::pure_emden(int N, double q) {
    Params p = make(N, q, 1.0);
    p.m = 0.0;
    return p;
}

RegimeTag Params::tag() const { return regime_tag(N, q); }

RegimeTag regime_tag(int N, double q) {
    const double qc = static_cast<double>(N) / (N - 1);
    if (std::abs(q - 2.0) <= kCriticalTolerance * 2.0) return RegimeTag::Quadratic;
    if (std::abs(q - qc) <= kCriticalTolerance * qc) return RegimeTag::Critical;
    if (q < qc) return RegimeTag::Subcritical;
    if (q < 2.0) return RegimeTag::Supercritical;
    return RegimeTag::Superquadratic;
}

std::string to_string(RegimeTag tag) {
    switch (tag) {
        case RegimeTag::Subcritical: return "subcritical";
        case RegimeTag::Critical: return "critical";
        case RegimeTag::Supercritical: return "supercritical";
        case RegimeTag::Quadratic: return "quadratic";
        case RegimeTag::Superquadratic: return "superquadratic";
    }
    return "unknown";
}

}  // namespace singulab
