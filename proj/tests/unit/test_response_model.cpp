#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <numeric>
#include <sstream>

#include "core/error.hpp"
#include "core/response_model.hpp"
#include "support/synthetic.hpp"

using namespace irtbench;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an irtbench::Error");
  return ErrorCode::kParse;
}

ResponseMatrix parse(const std::string& text) {
  std::istringstream in(text);
  return parse_response_matrix(in, "d");
}

LabelVector labels_of(std::vector<std::string> labels) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < labels.size(); ++i) ids.push_back("i" + std::to_string(i + 1));
  return LabelVector(ids, labels);
}

}  // namespace

TEST_SUITE("response_model") {

TEST_CASE("documented 3x3 layout loads in file order") {
  const auto m = parse("item,i1,i2,i3\noptimal,1,1,1\npessimal,0,0,0\nknn,1,0,1\n");
  CHECK(m.rows() == 3);
  CHECK(m.cols() == 3);
  CHECK(m.respondent_ids() == std::vector<std::string>{"optimal", "pessimal", "knn"});
  CHECK(m.item_ids() == std::vector<std::string>{"i1", "i2", "i3"});
  CHECK(m.at(2, 1) == 0);
  CHECK(m.at(2, 2) == 1);
  const auto r = parse("respondent,i1,i2,i3\noptimal,1,1,1\n");
  CHECK(r.respondent_ids().front() == "optimal");
}

TEST_CASE("bad cell is a parse error naming row and column") {
  try {
    parse("respondent,i1,i2,i3\na,1,0,1\nb,1,2,0\n");
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParse);
    const std::string msg = e.what();
    CHECK(msg.find("'b'") != std::string::npos);
    CHECK(msg.find("'i2'") != std::string::npos);
  }
  CHECK(code_of([] { parse("respondent,i1\na,x\n"); }) == ErrorCode::kParse);
  CHECK(code_of([] { parse("respondent,i1,i2\na,1\n"); }) == ErrorCode::kParse);
}

TEST_CASE("duplicates and empty matrices are validation errors") {
  CHECK(code_of([] { parse("respondent,i1,i1\na,1,0\n"); }) == ErrorCode::kValidation);
  CHECK(code_of([] { parse("respondent,i1\na,1\na,0\n"); }) == ErrorCode::kValidation);
  CHECK(code_of([] { parse("respondent,i1\n"); }) == ErrorCode::kValidation);
  CHECK(code_of([] { parse("respondent\na\n"); }) == ErrorCode::kValidation);
  CHECK(code_of([] { ResponseMatrix("d", {"a"}, {"i"}, {3}); }) == ErrorCode::kValidation);
  CHECK(code_of([] { ResponseMatrix("d", {"a"}, {"i", "j"}, {1}); }) == ErrorCode::kValidation);
}

TEST_CASE("missing file is an io error") {
  CHECK(code_of([] { load_response_matrix("/nonexistent/x.csv"); }) == ErrorCode::kIo);
}

TEST_CASE("19 x 500 synthetic matrix round-trips bit-exactly") {
  const auto s = testing::make_synthetic(19, 500, 99, "wide_matrix");
  const auto path = std::filesystem::temp_directory_path() / "irtbench_rm_roundtrip.csv";
  save_response_matrix(path, s.matrix);
  const auto back = load_response_matrix(path, "wide_matrix");
  CHECK(back == s.matrix);
  std::filesystem::remove(path);
  std::ostringstream out;
  write_response_matrix(out, s.matrix);
  CHECK(out.str().rfind("respondent,i1,", 0) == 0);
}

TEST_CASE("plan_split examples and errors") {
  auto p = plan_split(1000);
  CHECK(p.train_count == 700);
  CHECK(p.test_count == 300);
  p = plan_split(10000);
  CHECK(p.test_count == 500);
  CHECK(p.train_count == 9500);
  p = plan_split(10);
  CHECK(p.train_count == 7);
  CHECK(p.test_count == 3);
  // round-half-up: 15 * 0.3 = 4.5 -> 5
  CHECK(plan_split(15).test_count == 5);
  CHECK(code_of([] { plan_split(9); }) == ErrorCode::kTooSmall);
  CHECK(code_of([] { plan_split(100, 1.0); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { plan_split(100, 0.0); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("plan_split is monotone until the cap binds") {
  std::size_t previous = 0;
  bool capped = false;
  for (std::size_t n = 10; n < 5000; ++n) {
    const auto p = plan_split(n);
    CHECK(p.train_count + p.test_count == n);
    CHECK(p.test_count <= 500);
    CHECK(p.test_count >= previous);
    if (capped) CHECK(p.test_count == 500);
    capped = capped || p.test_count == 500;
    previous = p.test_count;
  }
  CHECK(capped);
}

TEST_CASE("artificial rows for [A,A,B]") {
  const auto rows = artificial_responses(labels_of({"A", "A", "B"}), {1, 2, 3});
  REQUIRE(rows.size() == 7);
  for (std::size_t i = 0; i < 7; ++i) CHECK(rows[i].first == kArtificialIds[i]);
  CHECK(rows[0].second == std::vector<std::uint8_t>{1, 1, 1});
  CHECK(rows[1].second == std::vector<std::uint8_t>{0, 0, 0});
  CHECK(rows[2].second == std::vector<std::uint8_t>{1, 1, 0});
  CHECK(rows[3].second == std::vector<std::uint8_t>{0, 0, 1});
}

TEST_CASE("majority ties break by label text") {
  const auto labels = labels_of({"b", "a", "b", "a"});
  CHECK(labels.majority_class() == "a");
  CHECK(labels.minority_class() == "b");
  const auto three = labels_of({"z", "z", "y", "x", "x", "x"});
  CHECK(three.majority_class() == "x");
  CHECK(three.minority_class() == "y");
}

TEST_CASE("two-class majority and minority rows partition the items") {
  testing::Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::string> labels;
    const std::size_t n = 2 + rng.next() % 40;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(rng.uniform() < 0.4 ? "neg" : "pos");
    if (std::count(labels.begin(), labels.end(), "neg") == 0) labels[0] = "neg";
    if (std::count(labels.begin(), labels.end(), "pos") == 0) labels[0] = "pos";
    const auto rows = artificial_responses(labels_of(labels), {7, 8, 9});
    for (std::size_t i = 0; i < n; ++i) CHECK(rows[2].second[i] + rows[3].second[i] == 1);
  }
}

TEST_CASE("random rows are reproducible and hit 1/|classes|") {
  std::vector<std::string> labels;
  for (int i = 0; i < 100000; ++i) labels.push_back(i % 2 ? "A" : "B");
  const auto lv = labels_of(labels);
  const auto a = artificial_responses(lv, {11, 12, 13});
  const auto b = artificial_responses(lv, {11, 12, 13});
  CHECK(a == b);
  CHECK(a[4].second != artificial_responses(lv, {14, 12, 13})[4].second);
  for (int r = 4; r < 7; ++r) {
    const double hits = std::accumulate(a[r].second.begin(), a[r].second.end(), 0.0);
    CHECK(hits / 100000.0 == doctest::Approx(0.5).epsilon(0.02));
  }
}

TEST_CASE("label validation") {
  CHECK(code_of([] { labels_of({"A", "A"}); }) == ErrorCode::kValidation);
  CHECK(code_of([] { LabelVector({"i1", "i2"}, {"A"}); }) == ErrorCode::kValidation);
  std::istringstream bad("item,label\ni1,A\n");
  CHECK(code_of([&] { parse_labels(bad); }) == ErrorCode::kValidation);
  std::istringstream good("item,label\ni1,A\ni2,B\n");
  const auto lv = parse_labels(good);
  CHECK(lv.class_counts().at("A") == 1);
  std::ostringstream out;
  write_labels(out, lv);
  CHECK(out.str() == "item,label\ni1,A\ni2,B\n");
}

TEST_CASE("with_artificial aligns labels by item id") {
  const ResponseMatrix m("d", {"r1"}, {"i2", "i1"}, {1, 0});
  const LabelVector labels({"i1", "i2"}, {"A", "B"});
  ResponseMatrix augmented = with_artificial(m, labels, {1, 2, 3});
  CHECK(augmented.rows() == 8);
  CHECK(augmented.respondent_ids()[3] == "majority");
  // majority class is A (tie -> lexicographic), which is item i1 = column 1
  CHECK(augmented.at(3, 0) == 0);
  CHECK(augmented.at(3, 1) == 1);
  CHECK(is_artificial("rand2"));
  CHECK_FALSE(is_artificial("mlp"));
  const LabelVector wrong({"i1", "i3"}, {"A", "B"});
  CHECK(code_of([&] { with_artificial(m, wrong, {1, 2, 3}); }) == ErrorCode::kValidation);
}

}
