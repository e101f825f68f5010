#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "vesselkit/metrics.hpp"
#include "vesselkit/morphology.hpp"

using namespace vesselkit;

TEST(Confusion, Identity) {
  std::mt19937_64 rng(61);
  const auto gt = oracle::random_mask(rng, 13, 11, 0.3);
  const auto c = confusion(gt, gt);
  EXPECT_EQ(c.fp, 0u);
  EXPECT_EQ(c.fn, 0u);
  EXPECT_EQ(c.tp, gt.count());
  const auto r = rates(c);
  EXPECT_EQ(r.tp_rate, 100.0);
  EXPECT_EQ(r.tn_rate, 100.0);
  EXPECT_EQ(r.accuracy, 100.0);
}

TEST(Confusion, AntiIdentity) {
  std::mt19937_64 rng(62);
  const auto gt = oracle::random_mask(rng, 13, 11, 0.3);
  const auto c = confusion(complement(gt), gt);
  EXPECT_EQ(c.tp, 0u);
  EXPECT_EQ(c.tn, 0u);
  EXPECT_EQ(rates(c).tp_rate, 0.0);
  EXPECT_EQ(rates(c).tn_rate, 0.0);
}

TEST(Confusion, TwoByTwo) {
  const auto c = confusion(BinaryMask(2, 2, {1, 0, 1, 0}), BinaryMask(2, 2, {1, 1, 0, 0}));
  EXPECT_EQ(c, (ConfusionCounts{1, 1, 1, 1}));
  const auto r = rates(c);
  EXPECT_EQ(r.tp_rate, 50.0);
  EXPECT_EQ(r.tn_rate, 50.0);
  EXPECT_EQ(r.accuracy, 50.0);
}

TEST(Confusion, FovRestricts) {
  const BinaryMask pred(3, 1, {1, 1, 0});
  const BinaryMask gt(3, 1, {1, 0, 0});
  const BinaryMask fov(3, 1, {1, 0, 1});
  EXPECT_EQ(confusion(pred, gt, fov), (ConfusionCounts{1, 0, 1, 0}));
  EXPECT_THROW(confusion(pred, BinaryMask(2, 1)), std::invalid_argument);
}

TEST(Rates, UndefinedSensitivity) {
  const BinaryMask none(4, 4);
  const auto r = rates(confusion(none, none));
  EXPECT_FALSE(r.tp_rate.has_value());
  EXPECT_EQ(r.tn_rate, 100.0);
  EXPECT_EQ(r.accuracy, 100.0);
}

TEST(Rates, CountsAddUpAndRatesStayInRange) {
  std::mt19937_64 rng(63);
  for (int i = 0; i < 100; ++i) {
    const auto p = oracle::random_mask(rng, 9, 7, 0.4);
    const auto g = oracle::random_mask(rng, 9, 7, 0.2);
    const auto c = confusion(p, g);
    ASSERT_EQ(c.total(), 63u);
    const auto r = rates(c);
    for (const auto& v : {r.tp_rate, r.tn_rate, r.accuracy}) {
      if (v) {
        ASSERT_TRUE(*v >= 0 && *v <= 100);
      }
    }
  }
}

TEST(Aggregate, MeansOfPerImageRates) {
  const auto one = aggregate({{"a", {}, {90.0, 90.0, 90.0}}});
  EXPECT_EQ(one.mean.accuracy, 90.0);
  const auto two = aggregate({{"a", {}, {90.0, 90.0, 90.0}}, {"b", {}, {100.0, 100.0, 100.0}}});
  EXPECT_EQ(two.mean.tp_rate, 95.0);
  EXPECT_EQ(two.mean.tn_rate, 95.0);
  EXPECT_EQ(two.mean.accuracy, 95.0);
  const auto skip = aggregate({{"a", {}, {std::nullopt, 80.0, 80.0}}, {"b", {}, {60.0, 100.0, 100.0}}});
  EXPECT_EQ(skip.mean.tp_rate, 60.0);
  EXPECT_EQ(skip.mean.tn_rate, 90.0);
  EXPECT_THROW(aggregate({}), std::invalid_argument);
}

TEST(Aggregate, PooledUsesSummedCounts) {
  const ConfusionCounts a{1, 0, 9, 0}, b{0, 0, 0, 10};
  const auto r = aggregate({{"a", a, rates(a)}, {"b", b, rates(b)}});
  EXPECT_EQ(r.pooled.tp_rate, 100.0 / 11.0);
  EXPECT_DOUBLE_EQ(*r.mean.tp_rate, 50.0);
}

TEST(Report, CsvAndTable) {
  const ConfusionCounts c{1, 1, 1, 1};
  const auto report = aggregate({{"img", c, rates(c)}});
  std::ostringstream csv;
  write_csv(report, csv);
  EXPECT_EQ(csv.str(),
            "image,tp,fp,tn,fn,tp_rate,tn_rate,accuracy\n"
            "img,1,1,1,1,50.0000,50.0000,50.0000\n"
            "mean,,,,,50.0000,50.0000,50.0000\n"
            "pooled,1,1,1,1,50.0000,50.0000,50.0000\n");
  std::ostringstream table;
  write_table(report, "demo", table);
  EXPECT_NE(table.str().find("TP"), std::string::npos);
  EXPECT_LT(table.str().find("TP"), table.str().find("TN"));
  EXPECT_LT(table.str().find("TN"), table.str().find("ACC"));
  EXPECT_NE(table.str().find("50.00"), std::string::npos);
}
