#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "wsnlink/channel.hpp"
#include "wsnlink/modem.hpp"

using namespace wsnlink;

namespace {

ChannelProfile indoor() { return {1.0, 55.0, 4.0, 4.0}; }

}  // namespace

TEST(MeanPathLoss, ReferenceDistanceGivesReferenceLoss) {
  EXPECT_DOUBLE_EQ(mean_path_loss(1.0, indoor()).value, 55.0);
  ChannelProfile ch{2.5, 40.0, 3.0, 0.0};
  EXPECT_DOUBLE_EQ(mean_path_loss(2.5, ch).value, 40.0);
}

TEST(MeanPathLoss, OneDecadeAtExponentTwo) {
  ChannelProfile ch{1.0, 55.0, 2.0, 0.0};
  EXPECT_NEAR(mean_path_loss(10.0, ch).value, 75.0, 1e-12);
}

TEST(MeanPathLoss, IndoorAtSevenAndAHalfMetres) {
  // 55 + 40 log10(7.5)
  EXPECT_NEAR(mean_path_loss(7.5, indoor()).value, 90.0025, 1e-4);
}

TEST(MeanPathLoss, ExtrapolatesBelowReferenceDistance) {
  EXPECT_NEAR(mean_path_loss(0.1, indoor()).value, 15.0, 1e-12);
}

TEST(MeanPathLoss, RejectsNonPositiveOrNonFiniteDistance) {
  EXPECT_THROW(mean_path_loss(0.0, indoor()), DomainError);
  EXPECT_THROW(mean_path_loss(-1.0, indoor()), DomainError);
  EXPECT_THROW(mean_path_loss(std::nan(""), indoor()), DomainError);
  EXPECT_THROW(mean_path_loss(INFINITY, indoor()), DomainError);
}

TEST(MeanPathLoss, StrictlyIncreasingInDistanceExponentAndReference) {
  const ChannelProfile base = indoor();
  double prev = -INFINITY;
  for (double d = 0.2; d < 200.0; d *= 1.1) {
    const double pl = mean_path_loss(d, base).value;
    EXPECT_GT(pl, prev);
    prev = pl;
  }
  ChannelProfile steeper = base;
  steeper.n = 4.5;
  ChannelProfile lossier = base;
  lossier.pl_d0_db = 56.0;
  for (double d : {1.5, 10.0, 80.0}) {
    EXPECT_GT(mean_path_loss(d, steeper).value, mean_path_loss(d, base).value);
    EXPECT_GT(mean_path_loss(d, lossier).value, mean_path_loss(d, base).value);
  }
}

TEST(SampleShadowing, ZeroSigmaIsExactlyZero) {
  ChannelProfile ch = indoor().mean_only();
  Rng rng(3);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(sample_shadowing(ch, rng), 0.0);
}

TEST(SampleShadowing, MomentsMatchNormal) {
  Rng rng(20261016);
  const ChannelProfile ch = indoor();
  const int n = 1'000'000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = sample_shadowing(ch, rng);
    sum += x;
    sum2 += x * x;
  }
  const double mean = sum / n;
  const double sd = std::sqrt(sum2 / n - mean * mean);
  // Standard error of the mean is 4e-3 dB; of the sd, 0.07 %.
  EXPECT_NEAR(mean, 0.0, 0.02);
  EXPECT_NEAR(sd, 4.0, 0.04);
}

TEST(SampleShadowing, FixedSeedRepeats) {
  Rng a(42), b(42), c(43);
  const ChannelProfile ch = indoor();
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const double x = sample_shadowing(ch, a);
    EXPECT_EQ(x, sample_shadowing(ch, b));
    differs = differs || x != sample_shadowing(ch, c);
  }
  EXPECT_TRUE(differs);
}

TEST(SampledPathLoss, ZeroSigmaEqualsMean) {
  Rng rng(1);
  const ChannelProfile ch = indoor().mean_only();
  for (double d : {0.5, 7.5, 30.0})
    EXPECT_EQ(sampled_path_loss(d, ch, rng).value, mean_path_loss(d, ch).value);
}

TEST(SampledPathLoss, AddsTheDrawToTheMean) {
  const ChannelProfile ch = indoor();
  Rng rng(99), twin(99);
  const double x = sample_shadowing(ch, twin);
  EXPECT_DOUBLE_EQ(sampled_path_loss(7.5, ch, rng).value, mean_path_loss(7.5, ch).value + x);
}

TEST(SampledPathLoss, EnsembleMeanMatchesMeanModel) {
  const ChannelProfile ch = indoor();
  Rng rng(5);
  double sum = 0.0;
  const int n = 100'000;
  for (int i = 0; i < n; ++i) sum += sampled_path_loss(12.0, ch, rng).value;
  EXPECT_NEAR(sum / n, mean_path_loss(12.0, ch).value, 0.05);
}

TEST(SnrDb, LinkBudgetArithmetic) {
  EXPECT_DOUBLE_EQ(snr_db(5.0, -104.0, {90.0}).value, 19.0);
  EXPECT_DOUBLE_EQ(snr_db(12.0, -116.0, {128.0}).value, 0.0);
}

TEST(SnrDb, ZeroMarginDistanceAndBeyond) {
  const ChannelProfile ch = indoor();
  const double d_zero = distance_for_path_loss({109.0}, ch);
  EXPECT_NEAR(snr_db(5.0, -104.0, mean_path_loss(d_zero, ch)).value, 0.0, 1e-9);
  EXPECT_LT(snr_db(5.0, -104.0, mean_path_loss(d_zero * 1.01, ch)).value, 0.0);
}

TEST(SnrDb, StrictlyDecreasingWithDistanceOnMeanChannel) {
  const ChannelProfile ch = indoor();
  double prev = INFINITY;
  for (double d = 0.5; d < 100.0; d += 0.5) {
    const double s = snr_db(5.0, -104.0, mean_path_loss(d, ch)).value;
    EXPECT_LT(s, prev);
    prev = s;
  }
}

TEST(DistanceForPathLoss, KnownPoints) {
  const ChannelProfile ch = indoor();
  EXPECT_DOUBLE_EQ(distance_for_path_loss({55.0}, ch), 1.0);
  EXPECT_NEAR(distance_for_path_loss({95.0}, ch), 10.0, 1e-12);
}

TEST(DistanceForPathLoss, InvertsMeanPathLossOnRandomProfiles) {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> d0(0.1, 10.0), pl0(0.0, 80.0), n(1.5, 6.0),
      d(0.01, 1000.0);
  for (int i = 0; i < 100; ++i) {
    const ChannelProfile ch{d0(gen), pl0(gen), n(gen), 0.0};
    const double dist = d(gen);
    const double back = distance_for_path_loss(mean_path_loss(dist, ch), ch);
    EXPECT_NEAR(back, dist, 1e-9 * dist);
    const PathLossDb pl{pl0(gen) + 30.0};
    EXPECT_NEAR(mean_path_loss(distance_for_path_loss(pl, ch), ch).value, pl.value, 1e-9);
  }
}

TEST(ChannelProfile, ValidateNamesTheField) {
  EXPECT_NO_THROW(indoor().validate());
  auto message = [](ChannelProfile ch) {
    try {
      ch.validate();
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message({0.0, 55.0, 4.0, 4.0}).find("d0_m"), std::string::npos);
  EXPECT_NE(message({1.0, -1.0, 4.0, 4.0}).find("pl_d0_db"), std::string::npos);
  EXPECT_NE(message({1.0, 55.0, 0.0, 4.0}).find("n must"), std::string::npos);
  EXPECT_NE(message({1.0, 55.0, 4.0, -1.0}).find("sigma_db"), std::string::npos);
}

TEST(SnrConversions, RoundTripIsIdentity) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> db(-40.0, 60.0);
  for (int i = 0; i < 1000; ++i) {
    const double s = db(gen);
    const double back = snr_linear_to_db(snr_db_to_linear({s})).value;
    EXPECT_NEAR(back, s, 1e-12 * std::max(1.0, std::abs(s)));
  }
}
