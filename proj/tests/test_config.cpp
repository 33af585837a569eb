#include <gtest/gtest.h>

#include "hydroconf/config.hpp"

namespace hydroconf {
namespace {

TEST(Config, DefaultsRoundTripThroughHeader) {
  RunConfig original;
  original.command = "spectrum";
  RunConfig restored;
  apply_config_text(restored, config_header(original));
  EXPECT_EQ(restored, original);
}

TEST(Config, EditedValuesRoundTrip) {
  RunConfig original;
  original.command = "transmission";
  original.potential = "pgo";
  original.lambda = parse_rational("-1");
  original.mu = parse_rational("0.017");
  original.convention = EnergyConvention::Hartree;
  original.corrected = true;
  original.r_step = 0.1;
  original.taylor_tol = 1.0 / 3.0;
  original.orbitals = "1s,5g";
  original.method = "diagonal";
  RunConfig restored;
  apply_config_text(restored, config_header(original));
  EXPECT_EQ(restored, original);
}

TEST(Config, CsvBodyEndsTheHeaderBlock) {
  RunConfig original;
  original.basis = 9;
  RunConfig restored;
  apply_config_text(restored, config_header(original) + "n,energy\n1,-1.0\n");
  EXPECT_EQ(restored, original);
  RunConfig plain;
  EXPECT_THROW(apply_config_text(plain, "n,energy\n"), ConfigError);
}

TEST(Config, HeaderOmitsWorkerCount) {
  RunConfig config;
  config.threads = 7;
  EXPECT_EQ(config_header(config).find("threads"), std::string::npos);
}

TEST(Config, TextParsingSkipsCommentsAndRecordsKeys) {
  RunConfig config;
  std::set<std::string> seen;
  apply_config_text(config,
                    "# a free comment, not a setting\n"
                    "\n"
                    "basis = 12\n"
                    "# mu=1/4\n",
                    &seen);
  EXPECT_EQ(config.basis, 12);
  EXPECT_EQ(config.mu, Rational(1, 4));
  EXPECT_EQ(seen, (std::set<std::string>{"basis", "mu"}));
}

TEST(Config, ErrorsAreConfigErrors) {
  RunConfig config;
  EXPECT_THROW(set_config_value(config, "nonsense", "1"), ConfigError);
  EXPECT_THROW(set_config_value(config, "basis", "twelve"), ConfigError);
  EXPECT_THROW(set_config_value(config, "basis", "1.5"), ConfigError);
  EXPECT_THROW(set_config_value(config, "r_max", "inf"), ConfigError);
  EXPECT_THROW(set_config_value(config, "potential", "square"), ConfigError);
  EXPECT_THROW(set_config_value(config, "corrected", "maybe"), ConfigError);
  EXPECT_THROW(set_config_value(config, "convention", "kelvin"), ConfigError);
  EXPECT_THROW(set_config_value(config, "mu", "x"), ConfigError);
  EXPECT_THROW(apply_config_text(config, "basis\n"), ConfigError);
  EXPECT_THROW(apply_config_file(config, "/nonexistent/file.conf"), ConfigError);
}

TEST(Config, EveryKeyReadsBack) {
  RunConfig config;
  for (const auto& key : config_keys()) {
    const std::string value = get_config_value(config, key);
    RunConfig copy;
    set_config_value(copy, key, value);
    EXPECT_EQ(get_config_value(copy, key), value) << key;
  }
}

TEST(Config, NumberLists) {
  EXPECT_EQ(parse_number_list("1, 2.5,3"), (std::vector<double>{1.0, 2.5, 3.0}));
  const auto range = parse_number_list("0:1e-5:1e-6");
  ASSERT_EQ(range.size(), 11U);
  EXPECT_NEAR(range.back(), 1e-5, 1e-18);
  EXPECT_THROW(parse_number_list("0:1"), ConfigError);
  EXPECT_THROW(parse_number_list("1:0:0.1"), ConfigError);
  EXPECT_THROW(parse_number_list("1,x"), ConfigError);
  EXPECT_EQ(split_list(" 1s , ,2p"), (std::vector<std::string>{"1s", "2p"}));
}

}  // namespace
}  // namespace hydroconf
