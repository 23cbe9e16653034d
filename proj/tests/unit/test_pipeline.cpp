#include <doctest.h>

#include <filesystem>

#include <nlohmann/json.hpp>

#include "core/error.hpp"
#include "core/formats.hpp"
#include "core/pipeline.hpp"
#include "core/text_io.hpp"
#include "support/synthetic.hpp"

using namespace irtbench;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kFixtures = IRTBENCH_FIXTURE_DIR;

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("irtbench_pipeline_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Manifest corpus_manifest() { return load_manifest(kFixtures / "corpus" / "manifest.json"); }

RunOverrides into(const fs::path& dir) {
  RunOverrides o;
  o.out_dir = dir;
  return o;
}

}  // namespace

TEST_SUITE("cli_report") {

TEST_CASE("manifest parsing") {
  const auto m = corpus_manifest();
  CHECK(m.datasets.size() == 3);
  CHECK(m.seed == 7);
  CHECK(m.datasets[0].responses.is_absolute() == (kFixtures.is_absolute()));
  CHECK(m.to_json()["datasets"][0]["responses"] == "blobs.responses.csv");
  CHECK(m.cuts == std::vector<double>{70, 100});

  CHECK_THROWS_AS(parse_manifest(json::parse(R"({"datasets": []})"), "."), Error);
  CHECK_THROWS_AS(parse_manifest(json::parse(R"({"datasets": [{"id": "a", "responses": "a.csv"}], "colour": 1})"), "."),
                  Error);
  CHECK_THROWS_AS(parse_manifest(json::parse(R"({"datasets": [{"id": "a", "responses": "a.csv"},
                                                               {"id": "a", "responses": "b.csv"}]})"), "."),
                  Error);
  CHECK_THROWS_AS(parse_manifest(json::parse(R"({"datasets": [{"id": "a", "responses": 3}]})"), "."), Error);
  CHECK_THROWS_AS(parse_manifest(json::parse(R"({"datasets": [{"id": "a", "responses": "a"}], "rate": {"tau": 3}})"), "."),
                  Error);
}

TEST_CASE("manifest hash tracks content, not location") {
  const auto dir = scratch("hash");
  Pipeline a(corpus_manifest(), into(dir / "x"));
  Pipeline b(corpus_manifest(), into(dir / "y"));
  CHECK(a.manifest_hash() == b.manifest_hash());
  CHECK(a.manifest_hash().size() == 64);
  RunOverrides seeded = into(dir / "x");
  seeded.seed = 8;
  CHECK(Pipeline(corpus_manifest(), seeded).manifest_hash() != a.manifest_hash());
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("fixture corpus reproduces the golden files") {
  const auto dir = scratch("golden");
  Pipeline p(corpus_manifest(), into(dir));
  p.fit();
  p.analyze();
  p.rate();
  CHECK(p.failures().empty());
  for (const auto* name : {"blobs.items.csv", "spirals.items.csv", "wine_small.items.csv"}) {
    CHECK(fs::exists(dir / "fit" / name));
  }
  CHECK(read_file(dir / "fit" / "blobs.items.csv") == read_file(kFixtures / "golden" / "blobs.items.csv"));
  CHECK(read_file(dir / "analyze" / "profiles.csv") == read_file(kFixtures / "golden" / "profiles.csv"));
  CHECK(read_file(dir / "analyze" / "rankings.json") == read_file(kFixtures / "golden" / "rankings.json"));
  CHECK(read_file(dir / "rate" / "ratings.csv") == read_file(kFixtures / "golden" / "ratings.csv"));
  const auto ratings = read_file(dir / "rate" / "ratings.csv");
  CHECK(ratings.rfind("player,rating,rd,volatility\noptimal,", 0) == 0);
  const auto items = json::parse(read_file(dir / "fit" / "blobs.items.json"));
  CHECK(items.at("random_seeds").size() == 3);
  CHECK(items.at("items").at(0).contains("log_likelihood"));
}

TEST_CASE("threshold override changes percentage columns only") {
  const auto dir = scratch("threshold");
  Pipeline base(corpus_manifest(), into(dir / "base"));
  base.fit();
  base.analyze();
  RunOverrides o = into(dir / "base");
  o.difficulty_min = -0.5;
  Pipeline moved(corpus_manifest(), o);
  moved.analyze();
  const auto before = formats::load_profiles(kFixtures / "golden" / "profiles.csv");
  const auto after = formats::load_profiles(dir / "base" / "analyze" / "profiles.csv");
  REQUIRE(before.size() == after.size());
  bool changed = false;
  for (std::size_t i = 0; i < before.size(); ++i) {
    CHECK(before[i].dataset_id == after[i].dataset_id);
    CHECK(before[i].item_count == after[i].item_count);
    CHECK(before[i].pct_discriminative == after[i].pct_discriminative);
    CHECK(before[i].pct_guessable == after[i].pct_guessable);
    changed = changed || before[i].pct_difficult != after[i].pct_difficult;
  }
  CHECK(changed);
}

TEST_CASE("dataset-level failures do not stop the run") {
  const auto dir = scratch("partial");
  const auto wide = testing::make_synthetic(8, 1001, 5, "wide");
  save_response_matrix(dir / "wide.csv", wide.matrix);
  write_file(dir / "broken.csv", "respondent,i1,i2\na,1,7\nb,0,1\n");
  for (const char* name : {"blobs", "spirals", "wine_small"}) {
    fs::copy_file(kFixtures / "corpus" / (std::string(name) + ".responses.csv"),
                  dir / (std::string(name) + ".responses.csv"));
  }
  const json doc = {{"seed", 1},
                    {"datasets",
                     {{{"id", "blobs"}, {"responses", "blobs.responses.csv"}},
                      {{"id", "spirals"}, {"responses", "spirals.responses.csv"}},
                      {{"id", "wide"}, {"responses", "wide.csv"}},
                      {{"id", "broken"}, {"responses", "broken.csv"}},
                      {{"id", "wine_small"}, {"responses", "wine_small.responses.csv"}}}},
                    {"subset", {{"cuts", {100}}}}};
  write_file(dir / "manifest.json", doc.dump());
  Pipeline p(load_manifest(dir / "manifest.json"), into(dir / "out"));
  p.report();
  REQUIRE(p.failures().size() == 2);
  CHECK(p.failures()[0].dataset_id == "wide");
  CHECK(p.failures()[0].code == static_cast<int>(ErrorCode::kSize));
  CHECK(p.failures()[1].dataset_id == "broken");
  CHECK(p.failures()[1].code == static_cast<int>(ErrorCode::kParse));
  const auto status = json::parse(read_file(dir / "out" / "fit" / "status.json"));
  CHECK(status["datasets"]["wide"]["status"] == "error");
  CHECK(status["datasets"]["blobs"]["status"] == "ok");
  CHECK(status["datasets"]["blobs"]["respondents"] == 12);
  const auto report = json::parse(read_file(dir / "out" / "report.json"));
  CHECK(report["failures"].size() == 2);
  CHECK(report["rate"]["dataset_order"] == json({"blobs", "spirals", "wine_small"}));
}

TEST_CASE("later stages report missing inputs") {
  const auto dir = scratch("missing");
  Pipeline p(corpus_manifest(), into(dir));
  try {
    p.analyze();
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIo);
  }
  p.fit();
  fs::remove(dir / "fit" / "spirals.items.csv");
  try {
    p.analyze();
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("spirals") != std::string::npos);
  }
  CHECK_THROWS_AS(p.stats(), Error);
}

TEST_CASE("rate writes the order sweep on request") {
  const auto dir = scratch("sweep");
  RunOverrides o = into(dir);
  o.order_sweep = true;
  Pipeline p(corpus_manifest(), o);
  p.fit();
  p.rate();
  const auto sweep = json::parse(read_file(dir / "rate" / "order_sweep.json"));
  CHECK(sweep["orders"] == 10);
  CHECK(sweep["max_rating_delta"].get<double>() >= 0.0);
  const auto traj = json::parse(read_file(dir / "rate" / "trajectory.json"));
  CHECK(traj["tau"] == 0.5);
  CHECK(traj["periods"].size() == 3);
}

TEST_CASE("subset and stats on a profile override") {
  const auto dir = scratch("override");
  fs::copy_file(kFixtures / "cc18_profiles.csv", dir / "profiles.csv");
  write_file(dir / "manifest.json",
             json({{"datasets", {{{"id", "a"}, {"responses", "a.csv"}}}}, {"subset", {{"profiles", "profiles.csv"}}}})
                 .dump());
  Pipeline p(load_manifest(dir / "manifest.json"), into(dir / "out"));
  const auto s = p.subset(30);
  CHECK(s.members.size() == 18);
  const auto sub = json::parse(read_file(dir / "out" / "subset" / "subset_30.json"));
  CHECK(sub["members"].size() == 18);
  CHECK(sub["difficulty_ranking"].size() == 60);
  p.subset(50);
  CHECK(read_file(dir / "out" / "subset" / "characterization_50.csv") ==
        "subset,discrimination_avg,discrimination_sd,difficulty_avg,difficulty_sd\n"
        "100%,67.13,30.78,15.93,22.56\n"
        "50%,62.06,38.72,25.19,28.23\n");
}

}
