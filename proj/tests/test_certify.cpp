#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <json.hpp>

#include "ulpt/analysis.hpp"
#include "ulpt/certify.hpp"
#include "ulpt/rng.hpp"
#include "ulpt/worstcase.hpp"

using namespace ulpt;

namespace {

const ConditionResult& find_condition(const std::vector<ConditionResult>& conditions,
                                      const std::string& name) {
    for (const auto& c : conditions)
        if (c.name == name) return c;
    FAIL("condition not found: " << name);
    static ConditionResult dummy;
    return dummy;
}

// A three-processor instance with one very fast processor that LPT leaves
// underloaded; found by randomized search. It violates both the workload
// bound and the fast-processor regime condition, so it certifies as
// non-minimal.
Instance underloaded_fast_processor() {
    return Instance{{7.5, 4.8, 3.3}, {3.2, 3.19, 3.07, 2.5, 2.26, 1.0}, "underloaded-fast"};
}

}  // namespace

TEST_CASE("lpt_minus_last") {
    SECTION("single task leaves every processor empty") {
        TruncatedLpt t = lpt_minus_last(Instance{{2.0, 1.0}, {3.0}, ""});
        CHECK(t.tasks[0].empty());
        CHECK(t.tasks[1].empty());
        CHECK(t.removed_from == 0);
        CHECK(t.loads == std::vector<double>{0.0, 0.0});
    }

    SECTION("tight m=3 instance keeps one task per processor") {
        // The final task's placement is an ulp-level near-tie among all
        // processors; T' does not depend on which side wins.
        TruncatedLpt t = lpt_minus_last(generate_gis_instance(3));
        REQUIRE(t.tasks.size() == 3);
        CHECK(t.tasks[0] == std::vector<int>{0});
        CHECK(t.tasks[1] == std::vector<int>{1});
        CHECK(t.tasks[2] == std::vector<int>{2});
        CHECK((t.removed_from >= 0 && t.removed_from < 3));
    }

    SECTION("identical speeds, hand simulation") {
        TruncatedLpt t = lpt_minus_last(Instance{{1.0, 1.0}, {2.0, 1.0, 1.0}, ""});
        CHECK(t.tasks[0] == std::vector<int>{0});
        CHECK(t.tasks[1] == std::vector<int>{1});
        CHECK(t.loads == std::vector<double>{2.0, 1.0});
        CHECK(t.removed_from == 1);
    }
}

TEST_CASE("mapping_feasible") {
    CHECK(mapping_feasible({}, {}));
    CHECK(mapping_feasible({1.0}, {}));
    CHECK_FALSE(mapping_feasible({}, {1.0}));
    CHECK(mapping_feasible({1.0}, {1.0}));
    CHECK_FALSE(mapping_feasible({1.0}, {1.0, 1.0}));
    CHECK(mapping_feasible({2.0, 1.0}, {1.0, 1.0, 1.0}));
    CHECK_FALSE(mapping_feasible({2.0, 1.0}, {1.5, 1.5}));

    SECTION("monotone in target capacity") {
        Rng rng(61);
        for (int k = 0; k < 300; ++k) {
            int targets = 1 + rng.uniform_int(4);
            int items = 1 + rng.uniform_int(5);
            std::vector<double> caps, sizes;
            for (int i = 0; i < targets; ++i) caps.push_back(rng.uniform(0.5, 3.0));
            for (int j = 0; j < items; ++j) sizes.push_back(rng.uniform(0.2, 2.0));
            if (!mapping_feasible(caps, sizes)) continue;
            auto grown = caps;
            grown[static_cast<std::size_t>(rng.uniform_int(targets))] += rng.uniform(0.0, 2.0);
            CHECK(mapping_feasible(grown, sizes));
        }
    }
}

TEST_CASE("dominates") {
    SECTION("empty optimal set dominates vacuously") {
        // n < m leaves a processor empty in the witness.
        CertifyContext ctx = certify_context(Instance{{2.0, 1.0}, {3.0}, ""});
        CHECK(dominates(ctx, 1, 1));   // empty T*(2), equal speed
        CHECK_FALSE(dominates(ctx, 0, 1));  // faster processor cannot dominate
    }

    SECTION("single optimal task smaller than the truncated task") {
        CertifyContext ctx = certify_context(Instance{{2.0, 1.0}, {2.0, 1.0, 1.0}, ""});
        CHECK(dominates(ctx, 1, 1));
        CHECK_FALSE(dominates(ctx, 0, 0));  // capacity 2 cannot absorb total 3
    }

    SECTION("tight instance admits no domination at all") {
        CertifyContext ctx = certify_context(generate_gis_instance(3));
        for (int p = 0; p < 3; ++p)
            for (int q = 0; q < 3; ++q) CHECK_FALSE(dominates(ctx, p, q));
    }

    CHECK_THROWS_AS(dominates(certify_context(generate_gis_instance(2)), 0, 5),
                    std::invalid_argument);
}

TEST_CASE("check_workload_bound") {
    SECTION("tight family holds with equality") {
        CertifyContext ctx = certify_context(generate_gis_instance(3));
        ConditionResult r = check_workload_bound(ctx);
        CHECK(r.status == ConditionStatus::holds);
    }

    SECTION("single processor holds after normalization") {
        CertifyContext ctx = certify_context(Instance{{2.0}, {3.0, 2.0, 1.0}, ""});
        CHECK(ctx.rho_I == Catch::Approx(1.0).margin(1e-12));
        CHECK(check_workload_bound(ctx).status == ConditionStatus::holds);
    }

    SECTION("underloaded fast processor fails") {
        CertifyContext ctx = certify_context(underloaded_fast_processor());
        CHECK(ctx.rho_I > 1.1);
        CHECK(check_workload_bound(ctx).status == ConditionStatus::fails);
    }

    SECTION("spec-shaped wrapper rejects unnormalized input") {
        Instance gis = generate_gis_instance(3);
        CHECK_THROWS_AS(check_workload_bound(gis, false), std::invalid_argument);
        CHECK(check_workload_bound(gis, true).status == ConditionStatus::holds);
        Instance unnormalized{{1.0, 1.0}, {3.0, 2.0}, ""};
        CHECK_THROWS_AS(check_workload_bound(unnormalized, true), std::invalid_argument);
    }
}

TEST_CASE("check_no_domination") {
    CHECK(check_no_domination(certify_context(generate_gis_instance(3))).status ==
          ConditionStatus::holds);
    CHECK(check_no_domination(certify_context(Instance{{2.0, 1.0}, {2.0, 1.0, 1.0}, ""})).status ==
          ConditionStatus::fails);

    // With a single task the truncated LPT sets are all empty, so the
    // domination mapping has no codomain and no processor dominates.
    CHECK(check_no_domination(certify_context(Instance{{1.0}, {1.0}, ""})).status ==
          ConditionStatus::holds);
}

TEST_CASE("check_structural") {
    SECTION("fewer tasks than processors leaves a processor empty") {
        auto results = check_structural(certify_context(Instance{{2.0, 1.5, 1.0}, {1.0, 1.0}, ""}));
        CHECK(find_condition(results, "empty-processor").status == ConditionStatus::fails);
    }

    SECTION("tight family passes all structural checks") {
        auto results = check_structural(certify_context(generate_gis_instance(3)));
        for (const auto& r : results) CHECK(r.status == ConditionStatus::holds);
    }

    SECTION("two unit tasks on two unit machines fail the fastest-processor check") {
        auto results = check_structural(certify_context(Instance{{1.0, 1.0}, {1.0, 1.0}, ""}));
        CHECK(find_condition(results, "fastest-two-tasks").status == ConditionStatus::fails);
    }

    SECTION("single machine marks the fastest-processor check inapplicable") {
        auto results = check_structural(certify_context(Instance{{1.0}, {1.0, 1.0}, ""}));
        CHECK(find_condition(results, "fastest-two-tasks").status ==
              ConditionStatus::inapplicable);
    }
}

TEST_CASE("check_task_count") {
    SECTION("tight family sits exactly on the bound") {
        CertifyContext ctx = certify_context(generate_gis_instance(3));
        CHECK(check_task_count(ctx).status == ConditionStatus::holds);
    }

    SECTION("ratio 1 is inapplicable") {
        CertifyContext ctx = certify_context(Instance{{1.0}, {2.0, 1.0}, ""});
        CHECK(check_task_count(ctx).status == ConditionStatus::inapplicable);
    }

    SECTION("bound values quoted in the analysis") {
        CHECK(task_count_upper_bound(3, rho(3)) < 5.28);
        CHECK(task_count_upper_bound(3, rho(3)) > 5.2);
        CHECK(task_count_upper_bound(5, rho(5)) < 8.89);
        // Six tasks on three processors can therefore never be minimal
        // at ratio rho(3) or above.
        CHECK(task_count_upper_bound(3, rho(3)) < 6.0);
    }
}

TEST_CASE("check_ratio_regime") {
    SECTION("underloaded fast processor fails the regime condition") {
        auto results = check_ratio_regime(certify_context(underloaded_fast_processor()));
        CHECK(find_condition(results, "speed-workload-regime").status == ConditionStatus::fails);
    }

    SECTION("tight family holds; the 1.5 cap needs n = m + 2") {
        auto results = check_ratio_regime(certify_context(generate_gis_instance(3)));
        CHECK(find_condition(results, "speed-workload-regime").status == ConditionStatus::holds);
        CHECK(find_condition(results, "ratio-below-1.5").status ==
              ConditionStatus::inapplicable);
    }

    SECTION("ratio 1 makes the regime inapplicable") {
        auto results = check_ratio_regime(certify_context(Instance{{1.0}, {2.0, 1.0}, ""}));
        CHECK(find_condition(results, "speed-workload-regime").status ==
              ConditionStatus::inapplicable);
    }

    SECTION("the 1.5 cap evaluator") {
        CHECK(detail::evaluate_ratio_cap(3, 5, 1.55).status == ConditionStatus::fails);
        CHECK(detail::evaluate_ratio_cap(3, 5, 1.38).status == ConditionStatus::holds);
        CHECK(detail::evaluate_ratio_cap(3, 4, 1.55).status == ConditionStatus::inapplicable);
        CHECK(detail::evaluate_ratio_cap(2, 4, 1.55).status == ConditionStatus::inapplicable);
    }
}

TEST_CASE("certify end to end") {
    SECTION("tight instance is consistent with minimality") {
        CertificationReport report = certify(generate_gis_instance(3));
        CHECK(report.verdict == "consistent-with-minimality");
        CHECK(report.rho_I == Catch::Approx(rho(3)).margin(1e-6));
        for (const auto& c : report.conditions)
            CHECK(c.status != ConditionStatus::fails);
    }

    SECTION("adding one unit task to the tight instance breaks tightness") {
        Instance inst = generate_gis_instance(3);
        inst.sizes.push_back(1.0);  // n = m + 2 now
        CertificationReport report = certify(inst);
        bool dropped = report.rho_I <= rho(3) - 1e-6;
        CHECK((report.verdict == "certified-non-minimal" || dropped));
    }

    SECTION("fewer tasks than processors certifies immediately") {
        CertificationReport report = certify(Instance{{2.0, 1.5, 1.0}, {1.0, 1.0}, ""});
        CHECK(report.verdict == "certified-non-minimal");
    }

    SECTION("underloaded fast processor certifies as non-minimal") {
        CertificationReport report = certify(underloaded_fast_processor());
        CHECK(report.verdict == "certified-non-minimal");
    }

    SECTION("budget refusal degrades to inapplicable entries") {
        CertificationReport report = certify(generate_gis_instance(4), 2);
        CHECK(report.verdict == "consistent-with-minimality");
        for (const auto& c : report.conditions)
            CHECK(c.status == ConditionStatus::inapplicable);
        CHECK(std::isnan(report.rho_I));
    }

    SECTION("degenerate size rejected") {
        CHECK_THROWS_AS(certify(Instance{{1.0}, {1.0, 0.0}, ""}), std::invalid_argument);
    }
}

TEST_CASE("certification report serialization") {
    CertificationReport report = certify(generate_gis_instance(2));
    std::string text = certification_report_to_json(report);
    CHECK(text == certification_report_to_json(certify(generate_gis_instance(2))));

    auto doc = nlohmann::json::parse(text);
    CHECK(doc["verdict"] == "consistent-with-minimality");
    CHECK(doc["rho_I"].is_number());
    REQUIRE(doc["conditions"].is_array());
    CHECK(doc["conditions"].size() == 8);
    for (const auto& c : doc["conditions"]) {
        CHECK(c.contains("name"));
        CHECK(c.contains("status"));
        CHECK(c.contains("detail"));
    }
}

TEST_CASE("near-tight instances at n = m + 2 never pass certification") {
    // Sampled counterpart of the structural theorem: ratios beyond the
    // (m-1)-processor bound either certify as non-minimal or stay at or
    // below rho(m).
    Rng rng(71);
    int checked = 0;
    for (int k = 0; k < 500; ++k) {
        Instance inst = random_instance(rng, 3, 5, 1.0, 4.0, false, true);
        double ratio = approx_ratio(inst).ratio;
        CHECK(ratio <= rho(3) + 1e-9);
        if (ratio > rho(2) + 1e-9) {
            ++checked;
            CertificationReport report = certify(inst);
            bool ok = report.verdict == "certified-non-minimal" || ratio <= rho(3);
            CHECK(ok);
        }
    }
    INFO("instances above rho(2): " << checked);
}
