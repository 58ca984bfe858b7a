#include <gtest/gtest.h>

#include "windguide_checks/property_suite.hpp"

using windguide::checks::run_property_suite;

class PropertySuite : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(PropertySuite, AllChecksPass) {
    for (const auto& r : run_property_suite({GetParam(), 1000})) {
        EXPECT_TRUE(r.passed) << r.name << ": worst " << r.worst << " > " << r.tolerance << " " << r.detail;
        EXPECT_EQ(r.draws, r.name == "loiter_speed_vs_scalar_minimization" ? 20u : 1000u) << r.name;
    }
}

INSTANTIATE_TEST_SUITE_P(Seeds, PropertySuite, ::testing::Values(1u, 2u, 97u, 123456789u));
