#include "radialspec/config.hpp"
#include "radialspec/errors.hpp"

#include <gtest/gtest.h>

using namespace radialspec;

TEST(Config, DefaultsAndOverrides)
{
    Config d;
    EXPECT_EQ(d.weyl_cap, 1000000u);
    EXPECT_EQ(d.sign_rank_cap, 4u);
    Config c = parse_config("# caps\nweyl_cap = 100\n  sign_rank_cap=3 # inline\ncut_tolerance = 1e-6\n");
    EXPECT_EQ(c.weyl_cap, 100u);
    EXPECT_EQ(c.sign_rank_cap, 3u);
    EXPECT_DOUBLE_EQ(c.cut_tolerance, 1e-6);
}

TEST(Config, Rejects)
{
    EXPECT_THROW(parse_config("nonsense = 1"), ParameterError);
    EXPECT_THROW(parse_config("weyl_cap = -1"), ParameterError);
    EXPECT_THROW(parse_config("weyl_cap"), ParameterError);
    EXPECT_THROW(parse_config("energy_cap = abc"), ParameterError);
}
