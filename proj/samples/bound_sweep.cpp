// Prints the theta limit as the solenoid grows, CSV on stdout.
#include <cstdio>

#include "ncab/bounds.hpp"

int main() {
    std::printf("a_m,B0_tesla,sqrt_theta_m,energy_scale_tev\n");
    for (double a : {1.0, 2.0, 5.0, 10.0, 20.0}) {
        ncab::ExperimentParams p;
        p.a = a;
        p.x0 = 6.0 * a;
        p.y0 = 1.6 * a;
        const auto b = ncab::theta_limit(p);
        std::printf("%.3f,%.3f,%.10e,%.10e\n", p.a, p.B0, b.sqrt_theta_m, b.energy_scale_tev);
    }
}
