// Walks the ratio psi''(3z)/psi''(2z) towards the pole at z = -1 and compares
// the extrapolated value with the exact limit (2/3)^3.

#include <cstdio>

#include "polylim/polylim.hpp"

int main()
{
    const polylim::LimitSpec spec{polylim::Family::polygamma_ratio, 2, 3, 2, 1};
    const polylim::ProbeReport report = polylim::probe_limit(spec);

    std::printf("%-12s %s\n", "eps", "psi''(3z)/psi''(2z)");
    for (std::size_t j = 0; j < report.samples.size(); ++j) {
        std::printf("%-12.6g %.15f\n", report.epsilons[j], report.samples[j]);
    }
    std::printf("extrapolated %.15f\nexact        %s = %.15f\n", report.extrapolated, report.target.str().c_str(),
                report.target.to_double());
    return report.converged ? 0 : 1;
}
