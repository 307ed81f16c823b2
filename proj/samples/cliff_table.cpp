// Prints the characteristic times of a growing system for a range of
// initial cost fractions, then the event report of the competition preset.

#include "seneca/seneca.hpp"

#include <cstdio>

int main()
{
    const seneca::GrowthParams growth(0.03, 1e-4);
    std::printf("alpha = %g / yr, g0 = %g, inflection at %.2f yr\n\n", growth.alpha(), growth.g0(),
                *seneca::inflection_time(growth));
    std::printf("%10s %12s %12s %10s\n", "epsilon", "peak (yr)", "zero (yr)", "peak A");
    for (double eps : {0.0005, 0.001, 0.005, 0.01, 0.05, 0.1}) {
        const auto costs = seneca::calibrate(eps, growth);
        const auto tm    = seneca::gain_peak_time(eps, growth);
        const auto ts    = seneca::breakeven_time(eps, growth);
        std::printf("%10g %12.2f %12.2f %10.3g\n", eps, tm.value_or(-1.0), ts.value_or(-1.0),
                    tm ? seneca::gain_at_time(*tm, growth, costs) : 0.0);
    }

    const auto r = seneca::run_scenario(seneca::preset(5).scenario);
    std::printf("\ncompetition with costs:\n%s", seneca::events_json(r.events).c_str());
}
