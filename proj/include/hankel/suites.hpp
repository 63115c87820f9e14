#pragma once

#include "hankel/sweep.hpp"

#include <string>
#include <vector>

namespace hankel {

struct SuiteCheck {
    std::string name;
    double alpha = 0.0;
    double deviation = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    bool skipped = false;
    std::string detail;
};

struct SuiteReport {
    std::string name;
    std::vector<SuiteCheck> checks;
    /// growth suite: alpha followed by one value per quantity, per row
    std::vector<std::string> columns;
    std::vector<std::vector<double>> table;

    bool passed() const;
};

/// Exact identities on full-grid matrices at every alpha of the config:
/// UHU + H = 0, G^2 = 0, (G*)^2 = 0, spectrum of H symmetric, tr g(H) = tr g_ev(H) for t + t^2 and
/// t^3 + t^4, tr H^2p = 2 tr (G*G)^p for p = 1..3, G*G = T - T^2 (only for a == 1), nonzero
/// spec(G*G) = nonzero spec(GG*), and H^2 block-diagonal in the Lambda / complement split.
SuiteReport identity_suite(const SweepConfig& config, double tolerance = 1e-9, const Logger& log = {});

/// S1 norms of Op^l(a) - Op^r(a), Op(a)Op(b) - Op(ab), [Op(a), P], [Op(a), chi] over `alphas`
/// (bounded: max/min <= 2) and ||G||^2_S2 / log alpha over `hs_alphas` (drift <= 15%).
SuiteReport growth_suite(const SweepConfig& config, double ratio_limit = 2.0, double drift_limit = 0.15,
                         const Logger& log = {});

} // namespace hankel
