#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "ulpt/analysis.hpp"
#include "ulpt/exact.hpp"
#include "ulpt/lpt.hpp"
#include "ulpt/rng.hpp"
#include "ulpt/worstcase.hpp"

using namespace ulpt;

TEST_CASE("single task goes to the unique minimizer") {
    Schedule sched = lpt_schedule(Instance{{2.0, 1.0}, {4.0}, ""});
    CHECK(sched.assignment == std::vector<int>{0});
    CHECK(sched.makespan == 2.0);
}

TEST_CASE("identical machines, hand-simulated") {
    // Tie-breaking to the lower index yields p1 <- {3,2,2}, p2 <- {3,2}.
    Instance inst{{1.0, 1.0}, {3.0, 3.0, 2.0, 2.0, 2.0}, ""};
    Schedule sched = lpt_schedule(inst);
    CHECK(sched.assignment == std::vector<int>{0, 1, 0, 1, 0});
    CHECK(sched.makespan == 7.0);
    CHECK(lpt_makespan(inst) == 7.0);
}

TEST_CASE("one processor sums all sizes") {
    CHECK(lpt_makespan(Instance{{1.0}, {1.0, 1.0, 1.0}, ""}) == 3.0);
}

TEST_CASE("tight two-processor instance reaches rho_2") {
    // In real arithmetic the final unit task ties between both
    // processors; in binary64 the candidates differ by about one ulp and
    // the strict minimizer wins. Both branches give the same makespan.
    Instance inst = generate_gis_instance(2);
    Schedule sched = lpt_schedule(inst);
    CHECK(sched.makespan == Catch::Approx(rho(2)).margin(1e-9));
    CHECK(sched.makespan == Catch::Approx(1.2807764064044151).margin(1e-9));

    double candidate_p1 = (inst.sizes[0] + 1.0) / inst.speeds[0];
    double candidate_p2 = 2.0 / inst.speeds[1];
    CHECK(candidate_p1 == Catch::Approx(candidate_p2).margin(1e-12));

    double on_p1 = makespan_of(inst, {0, 1, 0});
    double on_p2 = makespan_of(inst, {0, 1, 1});
    CHECK(on_p1 == Catch::Approx(on_p2).margin(1e-9));
    CHECK(sched.makespan == std::min(on_p1, on_p2));
}

TEST_CASE("tight three-processor instance reaches rho_3") {
    Instance inst = generate_gis_instance(3);
    double makespan = lpt_makespan(inst);
    CHECK(makespan == Catch::Approx(rho(3)).margin(1e-6));
    // 2/s(3) = rho_3 is forced by the defining polynomial identity.
    CHECK(2.0 / inst.speeds[2] == Catch::Approx(rho(3)).margin(1e-9));
    CHECK(makespan == Catch::Approx(1.3836728704309829).margin(1e-6));
}

TEST_CASE("lpt_makespan matches lpt_schedule") {
    Rng rng(31);
    for (int k = 0; k < 50; ++k) {
        Instance inst = random_instance(rng, 1 + rng.uniform_int(5), 1 + rng.uniform_int(8), 1.0, 4.0);
        CHECK(lpt_makespan(inst) == lpt_schedule(inst).makespan);
    }
}

TEST_CASE("lpt is deterministic") {
    Rng rng(32);
    Instance inst = random_instance(rng, 4, 7, 1.0, 4.0);
    Schedule a = lpt_schedule(inst);
    Schedule b = lpt_schedule(inst);
    CHECK(a.assignment == b.assignment);
    CHECK(a.loads == b.loads);
    CHECK(a.makespan == b.makespan);
}

TEST_CASE("lpt assignment is scale invariant") {
    Rng rng(33);
    for (int k = 0; k < 50; ++k) {
        Instance inst = random_instance(rng, 2 + rng.uniform_int(4), 2 + rng.uniform_int(6), 1.0, 4.0);
        std::vector<int> base = lpt_schedule(inst).assignment;
        double c = rng.uniform(0.25, 8.0);
        Instance sizes_scaled = inst;
        for (double& t : sizes_scaled.sizes) t *= c;
        Instance speeds_scaled = inst;
        for (double& s : speeds_scaled.speeds) s *= c;
        CHECK(lpt_schedule(sizes_scaled).assignment == base);
        CHECK(lpt_schedule(speeds_scaled).assignment == base);
    }
}

TEST_CASE("lpt never beats the exact optimum") {
    Rng rng(34);
    for (int k = 0; k < 300; ++k) {
        Instance inst = random_instance(rng, 1 + rng.uniform_int(5), 1 + rng.uniform_int(7), 1.0, 4.0);
        CHECK(lpt_makespan(inst) >= opt_bnb(inst).makespan);
    }
}

TEST_CASE("identical-speed instances respect the tight identical bound") {
    Rng rng(35);
    for (int m = 2; m <= 5; ++m) {
        double bound = graham_bound(m) + 1e-9;
        for (int k = 0; k < 500; ++k) {
            int n = 1 + rng.uniform_int(8);
            Instance inst = random_instance(rng, m, n, 1.0, 4.0, true);
            CHECK(approx_ratio(inst).ratio <= bound);
        }
    }
}
