#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "ulpt/exact.hpp"
#include "ulpt/lpt.hpp"
#include "ulpt/rng.hpp"
#include "ulpt/worstcase.hpp"

using namespace ulpt;

TEST_CASE("enumeration on small symmetric instances") {
    OptResult r = opt_enumerate(Instance{{1.0, 1.0}, {1.0, 1.0}, ""});
    CHECK(r.makespan == 1.0);
    CHECK(r.proven);
    CHECK(r.nodes_explored == 4);

    // Balanced split beats the LPT schedule here: {3,3} vs {2,2,2}.
    OptResult graham = opt_enumerate(Instance{{1.0, 1.0}, {3.0, 3.0, 2.0, 2.0, 2.0}, ""});
    CHECK(graham.makespan == 6.0);
    CHECK(graham.loads == std::vector<double>{6.0, 6.0});
}

TEST_CASE("enumeration certifies the tight family") {
    Instance inst = generate_gis_instance(3);
    OptResult r = opt_enumerate(inst);
    CHECK(r.nodes_explored == 81);
    CHECK(r.makespan == Catch::Approx(1.0).margin(1e-9));
    // Witness: two unit tasks on the fastest processor, one task each elsewhere.
    std::vector<int> counts(3, 0);
    for (int p : r.assignment) ++counts[static_cast<std::size_t>(p)];
    CHECK(counts == std::vector<int>{2, 1, 1});
}

TEST_CASE("enumeration refuses oversized search spaces") {
    Instance big{{1.0, 1.0, 1.0, 1.0, 1.0},
                 std::vector<double>(20, 1.0),
                 ""};
    CHECK_THROWS_AS(opt_enumerate(big), EnumerationCapExceeded);
    CHECK_THROWS_AS(opt_enumerate(Instance{{1.0, 1.0}, {2.0, 1.0}, ""}, 3.0),
                    EnumerationCapExceeded);
}

TEST_CASE("single processor has a single assignment") {
    OptResult r = opt_bnb(Instance{{2.0}, {3.0, 2.0, 1.0}, ""});
    CHECK(r.makespan == 3.0);
    CHECK(r.proven);
}

TEST_CASE("equal tasks, one per processor") {
    // n = m with equal sizes: one task per processor is optimal, so
    // OPT = t/s(m).
    Instance inst{{3.0, 2.0, 1.5}, {2.0, 2.0, 2.0}, ""};
    OptResult enumerated = opt_enumerate(inst);
    OptResult bounded = opt_bnb(inst);
    CHECK(enumerated.makespan == bounded.makespan);
    CHECK(enumerated.makespan == 2.0 / 1.5);
}

TEST_CASE("branch and bound equals enumeration bit-exactly") {
    Rng rng(55);
    for (int k = 0; k < 2000; ++k) {
        int m = 1 + rng.uniform_int(5);
        int n = 1 + rng.uniform_int(8);
        Instance inst = random_instance(rng, m, n, 1.0, 4.0);
        OptResult enumerated = opt_enumerate(inst);
        OptResult bounded = opt_bnb(inst);
        REQUIRE(enumerated.makespan == bounded.makespan);
    }
}

TEST_CASE("witness loads are sorted and reproduce the makespan") {
    Rng rng(56);
    for (int k = 0; k < 300; ++k) {
        Instance inst = random_instance(rng, 1 + rng.uniform_int(5), 1 + rng.uniform_int(7), 1.0, 4.0);
        OptResult r = opt_bnb(inst);
        CHECK(std::is_sorted(r.loads.begin(), r.loads.end(), std::greater<>()));
        CHECK(makespan_of(inst, r.assignment) == r.makespan);
        CHECK(loads_of(inst, r.assignment) == r.loads);
    }
}

TEST_CASE("trivial lower bounds hold on every solve") {
    Rng rng(57);
    for (int k = 0; k < 200; ++k) {
        Instance inst = random_instance(rng, 1 + rng.uniform_int(4), 1 + rng.uniform_int(6), 1.0, 4.0);
        OptResult r = opt_bnb(inst);
        double total_work = 0.0, total_speed = 0.0;
        for (double t : inst.sizes) total_work += t;
        for (double s : inst.speeds) total_speed += s;
        CHECK(r.makespan >= total_work / total_speed - 1e-9);
        CHECK(r.makespan >= inst.sizes[0] / inst.speeds[0] - 1e-9);
        CHECK(r.makespan <= lpt_makespan(inst));
    }
}

TEST_CASE("exhausted node budget is reported, not hidden") {
    Rng rng(58);
    Instance inst = random_instance(rng, 5, 8, 1.0, 4.0);
    OptResult r = opt_bnb(inst, 3);
    CHECK_FALSE(r.proven);
    // The incumbent is still a feasible schedule (the LPT one or better).
    CHECK(r.makespan <= lpt_makespan(inst));
    CHECK(makespan_of(inst, r.assignment) == r.makespan);

    OptResult full = opt_bnb(inst);
    CHECK(full.proven);
    CHECK(full.makespan <= r.makespan);
}
