#include <uclab/errors.hpp>
#include <uclab/multiplier_kernel.hpp>
#include <uclab/verify.hpp>

#include <doctest.h>

#include <set>

using namespace uclab;

TEST_CASE("criterion registry is complete and addressable") {
    const auto &all = criteria();
    REQUIRE(all.size() == 20);
    std::set<std::string> names;
    for (std::size_t i = 0; i < all.size(); ++i) {
        CHECK(all[i].id == static_cast<int>(i) + 1);
        names.insert(all[i].name);
        CHECK(find_criterion(all[i].name) == &all[i]);
        CHECK(find_criterion(std::to_string(all[i].id)) == &all[i]);
    }
    CHECK(names.size() == 20);
    CHECK(find_criterion("no-such-criterion") == nullptr);
    CHECK_THROWS_AS(run_criteria({}, "no-such-criterion"), MissingEntry);
}

TEST_CASE("check lines measure margins in the stated direction") {
    CHECK(CheckLine{"u", 1.0, 2.0, true}.passed());
    CHECK_FALSE(CheckLine{"u", 3.0, 2.0, true}.passed());
    CHECK(CheckLine{"l", 3.0, 2.0, false}.passed());
    CHECK(CheckLine{"l", 3.0, 2.0, false}.margin() == 1.0);
}

TEST_CASE("filtering runs exactly one criterion") {
    const auto results = run_criteria({}, "step-kernel-identity");
    REQUIRE(results.size() == 1);
    CHECK(results[0].id == 14);
    CHECK(results[0].passed);
    CHECK(format_result(results[0]).rfind("PASS", 0) == 0);
}

TEST_CASE("a corrupted sinc threshold fails the named criterion") {
    const auto *criterion = find_criterion("dyadic-sinc-bounded");
    REQUIRE(criterion != nullptr);
    CHECK(run_criterion(*criterion, {}).passed);
    testing::set_sinc_series_threshold(10.0);
    const auto corrupted = run_criterion(*criterion, {});
    testing::set_sinc_series_threshold(-1.0);
    CHECK_FALSE(corrupted.passed);
    CHECK(corrupted.name == "dyadic-sinc-bounded");
    CHECK(format_result(corrupted).rfind("FAIL", 0) == 0);
    CHECK(run_criterion(*criterion, {}).passed);
}
