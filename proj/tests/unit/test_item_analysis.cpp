#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "core/error.hpp"
#include "core/formats.hpp"
#include "core/item_analysis.hpp"
#include "core/text_io.hpp"
#include "support/synthetic.hpp"

using namespace irtbench;

namespace {

ItemParams item(double a, double b, double c, DegenerateFlag flag = DegenerateFlag::kNone) {
  return {"i", a, b, c, flag};
}

DatasetProfile prof(std::string id, double diff, double disc = 0.0, double guess = 0.0) {
  DatasetProfile p;
  p.dataset_id = std::move(id);
  p.pct_difficult = diff;
  p.pct_discriminative = disc;
  p.pct_guessable = guess;
  return p;
}

std::vector<DatasetProfile> fixture_profiles() {
  return formats::load_profiles(std::filesystem::path(IRTBENCH_FIXTURE_DIR) / "cc18_profiles.csv");
}

}  // namespace

TEST_SUITE("item_analysis") {

TEST_CASE("percentages use strict thresholds over estimable items") {
  const std::vector<ItemParams> items{item(1, 1.5, 0), item(1, 0.2, 0), item(1, 2.0, 0)};
  CHECK(formats::rounded(profile_dataset("d", items, {})).pct_difficult == 66.67);
  const std::vector<ItemParams> slopes{item(0.8, 0, 0), item(-0.3, 0, 0), item(0.5, 0, 0)};
  const auto p = formats::rounded(profile_dataset("d", slopes, {}));
  CHECK(p.pct_discriminative == 33.33);
  CHECK(p.pct_negative_discrimination == 33.33);
  const std::vector<ItemParams> edge{item(0.75, 1.0, 0.2), item(0.76, 1.01, 0.21)};
  const auto e = profile_dataset("d", edge, {});
  CHECK(e.pct_difficult == 50.0);
  CHECK(e.pct_discriminative == 50.0);
  CHECK(e.pct_guessable == 50.0);
}

TEST_CASE("degenerate items leave the denominator") {
  const std::vector<ItemParams> items{item(1, 2, 0), item(1, -6, 0, DegenerateFlag::kAllCorrect),
                                      item(1, 6, 0, DegenerateFlag::kAllWrong), item(1, 0, 0)};
  const auto p = profile_dataset("d", items, {});
  CHECK(p.item_count == 2);
  CHECK(p.degenerate_count == 2);
  CHECK(p.pct_difficult == 50.0);
  const std::vector<ItemParams> none{item(1, 6, 0, DegenerateFlag::kAllWrong)};
  try {
    profile_dataset("d", none, {});
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEmptyProfile);
  }
}

TEST_CASE("raising a threshold never raises its percentage") {
  const auto s = testing::make_synthetic(1, 300, 21);
  double prev_d = 101, prev_a = 101, prev_c = 101;
  for (double t = -3.0; t <= 3.0; t += 0.05) {
    ThresholdConfig th;
    th.difficulty_min = t;
    th.discrimination_min = std::max(0.01, t + 3.0);
    th.guessing_min = (t + 3.0) / 20.0;
    const auto p = profile_dataset("d", s.items, th);
    CHECK(p.pct_difficult <= prev_d);
    CHECK(p.pct_discriminative <= prev_a);
    CHECK(p.pct_guessable <= prev_c);
    prev_d = p.pct_difficult;
    prev_a = p.pct_discriminative;
    prev_c = p.pct_guessable;
  }
}

TEST_CASE("threshold validation") {
  ThresholdConfig th;
  th.discrimination_min = 0.0;
  CHECK_THROWS_AS(th.validate(), Error);
  th = {};
  th.difficulty_min = NAN;
  CHECK_THROWS_AS(th.validate(), Error);
}

TEST_CASE("rank_datasets order and tie rule") {
  const std::vector<DatasetProfile> two{prof("X", 40), prof("Y", 70)};
  CHECK(rank_datasets(two, RankKey::kDifficulty) == std::vector<std::string>{"Y", "X"});
  const std::vector<DatasetProfile> tie{prof("B", 50), prof("A", 50)};
  CHECK(rank_datasets(tie, RankKey::kDifficulty) == std::vector<std::string>{"A", "B"});
}

TEST_CASE("rank_datasets is a permutation and ignores input order") {
  testing::Rng rng(3);
  std::vector<DatasetProfile> ps;
  for (int i = 0; i < 30; ++i) ps.push_back(prof("d" + std::to_string(i), std::floor(rng.uniform(0, 5)) * 10));
  const auto base = rank_datasets(ps, RankKey::kDifficulty);
  auto sorted = base;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::string> ids;
  for (const auto& p : ps) ids.push_back(p.dataset_id);
  std::sort(ids.begin(), ids.end());
  CHECK(sorted == ids);
  for (int k = 0; k < 10; ++k) {
    for (std::size_t i = ps.size(); i > 1; --i) std::swap(ps[i - 1], ps[rng.next() % i]);
    CHECK(rank_datasets(ps, RankKey::kDifficulty) == base);
  }
}

TEST_CASE("published-profile fixture") {
  const auto ps = fixture_profiles();
  REQUIRE(ps.size() == 60);
  const auto hard = std::count_if(ps.begin(), ps.end(), [](const auto& p) { return p.pct_difficult > 50.0; });
  CHECK(hard == 7);
  CHECK(std::round(10000.0 * hard / 60.0) / 100.0 == 11.67);
  const auto diff = rank_datasets(ps, RankKey::kDifficulty);
  const auto disc = rank_datasets(ps, RankKey::kDiscrimination);
  CHECK(std::vector<std::string>(diff.begin(), diff.begin() + 3) ==
        std::vector<std::string>{"tic-tac-toe", "credit-approval", "optdigits"});
  CHECK(std::vector<std::string>(disc.begin(), disc.begin() + 3) ==
        std::vector<std::string>{"banknote-authentication", "analcatdata_authorship", "texture"});
  CHECK(difficulty_discrimination_spearman(ps) < 0.0);
}

TEST_CASE("true_score sums probabilities") {
  // a = 1, c = 0: p = 1 / (1 + exp(b - theta)) chosen for 0.9, 0.5, 0.1
  const std::vector<ItemParams> items{item(1, -std::log(9.0), 0), item(1, 0, 0), item(1, std::log(9.0), 0)};
  const auto ts = true_score(0.0, items, "r");
  CHECK(ts.value == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(ts.item_count == 3);
  CHECK(ts.respondent_id == "r");

  const auto s = testing::make_synthetic(1, 100, 8);
  CHECK(true_score(6.0, s.items).value >= 0.99 * 100);
  for (double theta : {-2.0, 0.3, 1.7}) {
    double sum = 0.0, comp = 0.0;
    for (const auto& it : s.items) {
      const double p = it.c + (1 - it.c) / (1 + std::exp(-it.a * (theta - it.b)));
      const double y = p - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
    CHECK(std::abs(true_score(theta, s.items).value - sum) < 1e-12);
  }
}

TEST_CASE("true_score includes degenerate items and is monotone in theta") {
  const std::vector<ItemParams> items{item(1, -6, 0, DegenerateFlag::kAllCorrect), item(1, 0, 0)};
  CHECK(true_score(0.0, items).value == doctest::Approx(p_correct(0.0, 1, -6, 0) + 0.5));
  const auto s = testing::make_synthetic(1, 50, 9);
  double prev = -1;
  for (double t = -6; t <= 6; t += 0.1) {
    const double v = true_score(t, s.items).value;
    CHECK(v > prev);
    CHECK(v >= 0.0);
    CHECK(v <= 50.0);
    prev = v;
  }
}

}
