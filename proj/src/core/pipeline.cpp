#include "core/pipeline.hpp"

#include <algorithm>
#include <mutex>
#include <set>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "core/error.hpp"
#include "core/formats.hpp"
#include "core/parallel.hpp"
#include "core/stats.hpp"
#include "core/text_io.hpp"

namespace irtbench {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed, std::string_view where) {
  for (const auto& [key, value] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      fail(ErrorCode::kValidation, fmt::format("manifest: unknown key '{}' in {}", key, where));
    }
  }
}

template <typename T>
void read_opt(const json& obj, const char* key, T& target) {
  if (obj.contains(key)) target = obj.at(key).get<T>();
}

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : (base / path).lexically_normal();
}

std::string relative_to(const fs::path& path, const fs::path& base) {
  const auto rel = path.lexically_relative(base);
  return (rel.empty() ? path : rel).generic_string();
}

std::string cut_label(double cut) { return fmt::format("{}", cut); }

json rating_json(const Rating& r) { return json{{"r", r.r}, {"rd", r.rd}, {"sigma", r.sigma}}; }

json read_json(const fs::path& path) {
  const auto text = read_file(path);
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::kParse, fmt::format("'{}': {}", path.string(), e.what()));
  }
}

void write_json(const fs::path& path, const json& doc) { write_file(path, doc.dump(2) + "\n"); }

}  // namespace

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    fail(ErrorCode::kNumerical, "SHA-256 digest failed");
  }
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

std::array<std::uint64_t, 3> artificial_seeds(std::uint64_t seed, const std::string& dataset_id) {
  const std::uint64_t base = seed ^ fnv1a64(dataset_id);
  return {splitmix64(base + 1), splitmix64(base + 2), splitmix64(base + 3)};
}

json Manifest::to_json() const {
  json datasets_json = json::array();
  for (const auto& d : datasets) {
    json entry{{"id", d.id}, {"responses", relative_to(d.responses, base_dir)}};
    if (d.labels) entry["labels"] = relative_to(*d.labels, base_dir);
    if (!d.metadata.empty()) entry["metadata"] = d.metadata;
    datasets_json.push_back(std::move(entry));
  }
  json subset_json{{"cuts", cuts}};
  if (profiles_override) subset_json["profiles"] = relative_to(*profiles_override, base_dir);
  return json{
      {"name", name},
      {"created", created},
      {"seed", seed},
      {"datasets", datasets_json},
      {"fit",
       {{"artificial", add_artificial},
        {"max_outer_iterations", fit.max_outer_iterations},
        {"b_convergence_tol", fit.b_convergence_tol},
        {"inner_optimizer_tol", fit.inner_optimizer_tol},
        {"standardize_abilities", fit.standardize_abilities}}},
      {"analyze",
       {{"difficulty_min", thresholds.difficulty_min},
        {"discrimination_min", thresholds.discrimination_min},
        {"guessing_min", thresholds.guessing_min}}},
      {"rate",
       {{"tau", tournament.tau},
        {"dataset_order", tournament.dataset_order},
        {"draw_decimals", tournament.draw_decimals},
        {"order_sweep_orders", order_sweep_orders}}},
      {"subset", subset_json},
      {"stats", {{"alpha", alpha}, {"real_only", stats_real_only}}},
  };
}

Manifest parse_manifest(const json& doc, const fs::path& base_dir) {
  if (!doc.is_object()) fail(ErrorCode::kValidation, "manifest must be a JSON object");
  try {
    reject_unknown_keys(doc, {"name", "created", "seed", "workers", "out_dir", "datasets", "fit",
                              "analyze", "rate", "subset", "stats"},
                        "top level");
    Manifest m;
    m.base_dir = base_dir.lexically_normal();
    read_opt(doc, "name", m.name);
    read_opt(doc, "created", m.created);
    read_opt(doc, "seed", m.seed);
    read_opt(doc, "workers", m.workers);
    m.out_dir = resolve(m.base_dir, doc.value("out_dir", std::string("out")));

    if (!doc.contains("datasets") || !doc.at("datasets").is_array() || doc.at("datasets").empty()) {
      fail(ErrorCode::kValidation, "manifest: 'datasets' must be a non-empty array");
    }
    std::set<std::string> ids;
    for (const auto& d : doc.at("datasets")) {
      reject_unknown_keys(d, {"id", "responses", "labels", "metadata"}, "dataset entry");
      DatasetEntry entry;
      entry.id = d.at("id").get<std::string>();
      if (entry.id.empty() || entry.id.find_first_of("/\\,") != std::string::npos) {
        fail(ErrorCode::kValidation, fmt::format("manifest: invalid dataset id '{}'", entry.id));
      }
      if (!ids.insert(entry.id).second) {
        fail(ErrorCode::kValidation, fmt::format("manifest: duplicate dataset id '{}'", entry.id));
      }
      entry.responses = resolve(m.base_dir, d.at("responses").get<std::string>());
      if (d.contains("labels")) entry.labels = resolve(m.base_dir, d.at("labels").get<std::string>());
      read_opt(d, "metadata", entry.metadata);
      m.datasets.push_back(std::move(entry));
    }
    if (doc.contains("fit")) {
      const auto& f = doc.at("fit");
      reject_unknown_keys(f, {"artificial", "max_outer_iterations", "b_convergence_tol",
                              "inner_optimizer_tol", "standardize_abilities"},
                          "fit");
      read_opt(f, "artificial", m.add_artificial);
      read_opt(f, "max_outer_iterations", m.fit.max_outer_iterations);
      read_opt(f, "b_convergence_tol", m.fit.b_convergence_tol);
      read_opt(f, "inner_optimizer_tol", m.fit.inner_optimizer_tol);
      read_opt(f, "standardize_abilities", m.fit.standardize_abilities);
    }
    if (doc.contains("analyze")) {
      const auto& a = doc.at("analyze");
      reject_unknown_keys(a, {"difficulty_min", "discrimination_min", "guessing_min"}, "analyze");
      read_opt(a, "difficulty_min", m.thresholds.difficulty_min);
      read_opt(a, "discrimination_min", m.thresholds.discrimination_min);
      read_opt(a, "guessing_min", m.thresholds.guessing_min);
    }
    if (doc.contains("rate")) {
      const auto& r = doc.at("rate");
      reject_unknown_keys(r, {"tau", "dataset_order", "draw_decimals", "order_sweep_orders"}, "rate");
      read_opt(r, "tau", m.tournament.tau);
      read_opt(r, "dataset_order", m.tournament.dataset_order);
      read_opt(r, "draw_decimals", m.tournament.draw_decimals);
      read_opt(r, "order_sweep_orders", m.order_sweep_orders);
    }
    if (doc.contains("subset")) {
      const auto& s = doc.at("subset");
      reject_unknown_keys(s, {"cuts", "profiles"}, "subset");
      read_opt(s, "cuts", m.cuts);
      if (s.contains("profiles")) m.profiles_override = resolve(m.base_dir, s.at("profiles").get<std::string>());
    }
    if (doc.contains("stats")) {
      const auto& s = doc.at("stats");
      reject_unknown_keys(s, {"alpha", "real_only"}, "stats");
      read_opt(s, "alpha", m.alpha);
      read_opt(s, "real_only", m.stats_real_only);
    }
    m.fit.validate();
    m.thresholds.validate();
    m.tournament.validate();
    return m;
  } catch (const json::exception& e) {
    fail(ErrorCode::kValidation, fmt::format("manifest: {}", e.what()));
  }
}

Manifest load_manifest(const fs::path& path) {
  const fs::path base = path.parent_path().empty() ? fs::path(".") : path.parent_path();
  return parse_manifest(read_json(path), base);
}

Pipeline::Pipeline(Manifest manifest, const RunOverrides& overrides)
    : manifest_(std::move(manifest)), order_sweep_(overrides.order_sweep) {
  if (overrides.out_dir) manifest_.out_dir = *overrides.out_dir;
  if (overrides.seed) manifest_.seed = *overrides.seed;
  if (overrides.workers) manifest_.workers = *overrides.workers;
  if (overrides.difficulty_min) manifest_.thresholds.difficulty_min = *overrides.difficulty_min;
  if (overrides.discrimination_min) manifest_.thresholds.discrimination_min = *overrides.discrimination_min;
  if (overrides.guessing_min) manifest_.thresholds.guessing_min = *overrides.guessing_min;
  manifest_.thresholds.validate();
  if (manifest_.workers == 0) manifest_.workers = 1;

  hash_ = sha256_hex(manifest_.to_json().dump());
}

void Pipeline::write_manifest() const {
  auto doc = manifest_.to_json();
  doc["manifest_hash"] = hash_;
  doc["tool_version"] = kToolVersion;
  for (std::size_t i = 0; i < manifest_.datasets.size(); ++i) {
    doc["datasets"][i]["random_seeds"] = artificial_seeds(manifest_.seed, manifest_.datasets[i].id);
  }
  write_json(out_dir() / "manifest.json", doc);
}

void Pipeline::fit() {
  write_manifest();
  const auto& datasets = manifest_.datasets;
  std::vector<json> status(datasets.size());
  std::vector<std::optional<DatasetFailure>> failed(datasets.size());
  FitConfig config = manifest_.fit;
  const bool outer_parallel = datasets.size() > 1;
  config.workers = outer_parallel ? 1 : manifest_.workers;

  parallel_for(datasets.size(), outer_parallel ? manifest_.workers : 1, [&](std::size_t idx) {
    const auto& entry = datasets[idx];
    const fs::path dir = out_dir() / "fit";
    try {
      auto matrix = load_response_matrix(entry.responses, entry.id);
      json seeds = json::array();
      bool artificial = false;
      if (manifest_.add_artificial && entry.labels) {
        const auto labels = load_labels(*entry.labels);
        const auto s = artificial_seeds(manifest_.seed, entry.id);
        matrix = with_artificial(matrix, labels, s);
        seeds = s;
        artificial = true;
      }
      const auto result = birnbaum_fit(matrix, config);

      std::vector<formats::AbilityRow> abilities;
      for (std::size_t r = 0; r < matrix.rows(); ++r) {
        const double theta = result.abilities.theta[r];
        abilities.push_back({matrix.respondent_ids()[r], theta, true_score(theta, result.items).value});
      }
      std::size_t negative = 0, degenerate = 0, nonconverged = 0;
      json items_json = json::array();
      for (const auto& it : result.items) {
        negative += !it.degenerate() && it.a < 0.0;
        degenerate += it.degenerate();
        nonconverged += it.flag == DegenerateFlag::kNonconverged;
        items_json.push_back({{"item", it.item_id}, {"a", it.a}, {"b", it.b}, {"c", it.c},
                              {"flag", to_string(it.flag)}, {"log_likelihood", it.log_likelihood},
                              {"iterations", it.iterations}});
      }
      json warnings = json::array();
      if (negative > 0) {
        warnings.push_back(fmt::format("{} item(s) with negative discrimination", negative));
      }
      if (!result.converged) {
        warnings.push_back(fmt::format("alternation stopped after {} iterations (max |delta b| = {})",
                                       result.iterations, result.last_max_delta_b));
      }
      save_response_matrix(dir / (entry.id + ".responses.csv"), matrix);
      write_file(dir / (entry.id + ".items.csv"), formats::item_params_csv(result.items));
      write_file(dir / (entry.id + ".abilities.csv"), formats::abilities_csv(abilities));
      write_json(dir / (entry.id + ".items.json"),
                 json{{"dataset", entry.id},
                      {"respondents", matrix.rows()},
                      {"iterations", result.iterations},
                      {"converged", result.converged},
                      {"last_max_delta_b", result.last_max_delta_b},
                      {"artificial_rows", artificial},
                      {"random_seeds", seeds},
                      {"negative_discrimination", negative},
                      {"degenerate", degenerate},
                      {"warnings", warnings},
                      {"items", items_json}});
      status[idx] = json{{"status", "ok"},
                         {"items", matrix.cols()},
                         {"respondents", matrix.rows()},
                         {"iterations", result.iterations},
                         {"converged", result.converged},
                         {"negative_discrimination", negative},
                         {"degenerate", degenerate},
                         {"nonconverged_items", nonconverged}};
    } catch (const Error& e) {
      failed[idx] = DatasetFailure{entry.id, "fit", static_cast<int>(e.code()), e.what()};
      status[idx] = json{{"status", "error"}, {"code", to_string(e.code())}, {"message", e.what()}};
    }
  });

  json doc{{"manifest_hash", hash_}, {"datasets", json::object()}};
  for (std::size_t i = 0; i < datasets.size(); ++i) {
    doc["datasets"][datasets[i].id] = status[i];
    if (failed[i]) failures_.push_back(*failed[i]);
  }
  write_json(out_dir() / "fit" / "status.json", doc);
}

std::vector<std::string> Pipeline::fitted_datasets() const {
  const auto path = out_dir() / "fit" / "status.json";
  if (!fs::exists(path)) fail(ErrorCode::kIo, fmt::format("'{}' not found; run fit first", path.string()));
  const auto doc = read_json(path);
  std::vector<std::string> ok;
  std::vector<std::string> missing;
  for (const auto& entry : manifest_.datasets) {
    const auto& datasets = doc.at("datasets");
    if (!datasets.contains(entry.id)) {
      missing.push_back(entry.id);
      continue;
    }
    if (datasets.at(entry.id).at("status") != "ok") continue;
    if (!fs::exists(out_dir() / "fit" / (entry.id + ".items.csv")) ||
        !fs::exists(out_dir() / "fit" / (entry.id + ".abilities.csv"))) {
      missing.push_back(entry.id);
      continue;
    }
    ok.push_back(entry.id);
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& id : missing) list += (list.empty() ? "" : ", ") + id;
    fail(ErrorCode::kIo, fmt::format("missing fit output for: {}", list));
  }
  return ok;
}

void Pipeline::analyze() {
  std::vector<DatasetProfile> profiles;
  for (const auto& id : fitted_datasets()) {
    const auto items = formats::parse_item_params_csv(read_file(out_dir() / "fit" / (id + ".items.csv")));
    try {
      profiles.push_back(formats::rounded(profile_dataset(id, items, manifest_.thresholds)));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kEmptyProfile) throw;
      failures_.push_back({id, "analyze", static_cast<int>(e.code()), e.what()});
    }
  }
  if (profiles.empty()) fail(ErrorCode::kEmptyProfile, "no dataset could be profiled");
  std::sort(profiles.begin(), profiles.end(),
            [](const auto& l, const auto& r) { return l.dataset_id < r.dataset_id; });
  write_file(out_dir() / "analyze" / "profiles.csv", formats::profiles_csv(profiles));

  json denominators = json::object();
  for (const auto& p : profiles) {
    denominators[p.dataset_id] = {{"estimable", p.item_count}, {"degenerate", p.degenerate_count}};
  }
  const double rho = difficulty_discrimination_spearman(profiles);
  write_json(out_dir() / "analyze" / "rankings.json",
             json{{"thresholds",
                   {{"difficulty_min", manifest_.thresholds.difficulty_min},
                    {"discrimination_min", manifest_.thresholds.discrimination_min},
                    {"guessing_min", manifest_.thresholds.guessing_min}}},
                  {"difficulty", rank_datasets(profiles, RankKey::kDifficulty)},
                  {"discrimination", rank_datasets(profiles, RankKey::kDiscrimination)},
                  {"guessing", rank_datasets(profiles, RankKey::kGuessing)},
                  {"spearman_difficulty_discrimination", std::isfinite(rho) ? json(rho) : json(nullptr)},
                  {"denominators", denominators}});
}

void Pipeline::rate() {
  std::vector<DatasetScores> per_dataset;
  std::set<std::string> available;
  for (const auto& id : fitted_datasets()) {
    ScoreMap scores;
    for (const auto& row : formats::parse_abilities_csv(read_file(out_dir() / "fit" / (id + ".abilities.csv")))) {
      scores[row.respondent_id] = row.true_score;
    }
    per_dataset.emplace_back(id, std::move(scores));
    available.insert(id);
  }
  if (per_dataset.empty()) fail(ErrorCode::kValidation, "no fitted dataset to rate");

  TournamentConfig config = manifest_.tournament;
  if (!config.dataset_order.empty()) {
    std::erase_if(config.dataset_order, [&](const std::string& id) { return !available.contains(id); });
  }
  const auto result = run_tournament(per_dataset, config);
  write_file(out_dir() / "rate" / "ratings.csv", formats::ratings_csv(result.final_ratings));

  json periods = json::array();
  std::vector<std::string> order;
  for (const auto& snap : result.history) {
    json ratings = json::object();
    for (const auto& [id, r] : snap.ratings) ratings[id] = rating_json(r);
    periods.push_back({{"dataset", snap.dataset_id}, {"ratings", ratings}});
    order.push_back(snap.dataset_id);
  }
  json final_json = json::object();
  for (const auto& [id, r] : result.final_ratings) final_json[id] = rating_json(r);
  write_json(out_dir() / "rate" / "trajectory.json",
             json{{"tau", config.tau},
                  {"draw_decimals", config.draw_decimals},
                  {"dataset_order", order},
                  {"max_volatility_iterations", result.max_volatility_iterations},
                  {"final", final_json},
                  {"periods", periods}});

  if (order_sweep_) {
    const auto sweep = order_sensitivity(per_dataset, config, manifest_.order_sweep_orders, manifest_.seed);
    write_json(out_dir() / "rate" / "order_sweep.json",
               json{{"orders", sweep.orders},
                    {"seed", manifest_.seed},
                    {"max_rating_delta", sweep.max_rating_delta},
                    {"per_player_max_delta", sweep.per_player_max_delta}});
  }
}

SubsetResult Pipeline::subset(double cut_pct) {
  const auto profiles = manifest_.profiles_override
                            ? formats::load_profiles(*manifest_.profiles_override)
                            : formats::load_profiles(out_dir() / "analyze" / "profiles.csv");
  const auto result = build_subset(cut_pct, profiles);

  DatasetMetadata metadata;
  for (const auto& d : manifest_.datasets) {
    if (!d.metadata.empty()) metadata.emplace(d.id, d.metadata);
  }
  std::vector<std::string> all;
  for (const auto& p : profiles) all.push_back(p.dataset_id);
  const std::vector<std::pair<std::string, SubsetCharacterization>> rows = {
      {"100%", characterize(all, profiles, &metadata)},
      {cut_label(cut_pct) + "%", characterize(result.members, profiles, &metadata)},
  };

  const auto label = cut_label(cut_pct);
  const fs::path dir = out_dir() / "subset";
  write_json(dir / ("subset_" + label + ".json"),
             json{{"cut_pct", cut_pct},
                  {"target_size", result.target_size},
                  {"members", result.members},
                  {"from_difficulty", result.from_difficulty},
                  {"from_discrimination", result.from_discrimination},
                  {"overlaps", result.overlaps},
                  {"difficulty_ranking", result.difficulty_ranking},
                  {"discrimination_ranking", result.discrimination_ranking}});
  write_file(dir / ("characterization_" + label + ".csv"), formats::characterization_csv(rows));
  if (!metadata.empty()) write_file(dir / ("metadata_" + label + ".csv"), formats::metadata_csv(rows));
  return result;
}

void Pipeline::stats() {
  const auto path = out_dir() / "rate" / "trajectory.json";
  if (!fs::exists(path)) fail(ErrorCode::kIo, fmt::format("'{}' not found; run rate first", path.string()));
  const auto trajectory = read_json(path);

  BlockDesign design;
  for (const auto& [id, r] : trajectory.at("final").items()) {
    if (manifest_.stats_real_only && is_artificial(id)) continue;
    design.treatments.push_back(id);
  }
  for (const auto& period : trajectory.at("periods")) {
    design.blocks.push_back(period.at("dataset").get<std::string>());
    for (const auto& t : design.treatments) design.values.push_back(period.at("ratings").at(t).at("r").get<double>());
  }

  const auto fr = friedman(design);
  write_json(out_dir() / "stats" / "friedman.json",
             json{{"statistic", fr.statistic},
                  {"df", fr.df},
                  {"p_value", fr.p_value},
                  {"blocks", "per-period rating snapshots"},
                  {"block_count", design.n()},
                  {"treatments", design.treatments},
                  {"mean_ranks", fr.mean_ranks},
                  {"tie_fraction", fr.tie_fraction},
                  {"tie_warning", fr.tie_fraction > 0.10}});

  json nem{{"alpha", manifest_.alpha}};
  try {
    const auto nr = nemenyi(design, manifest_.alpha);
    nem["q_alpha"] = nr.q_alpha;
    nem["critical_difference"] = nr.critical_difference;
    nem["mean_ranks"] = nr.mean_ranks;
    nem["treatments"] = design.treatments;
    write_file(out_dir() / "stats" / "nemenyi.csv", formats::nemenyi_csv(design.treatments, nr));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kUnsupported && e.code() != ErrorCode::kValidation) throw;
    nem["skipped"] = e.what();
  }
  write_json(out_dir() / "stats" / "nemenyi.json", nem);
}

void Pipeline::report() {
  fit();
  analyze();
  rate();
  std::vector<SubsetResult> subsets;
  std::vector<std::string> subset_errors;
  for (double cut : manifest_.cuts) {
    try {
      subsets.push_back(subset(cut));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kTooSmall) throw;
      subset_errors.push_back(fmt::format("cut {}%: {}", cut_label(cut), e.what()));
    }
  }
  stats();

  json doc;
  doc["tool_version"] = kToolVersion;
  doc["manifest_hash"] = hash_;
  doc["created"] = manifest_.created;
  doc["manifest"] = read_json(out_dir() / "manifest.json");
  doc["fit"] = read_json(out_dir() / "fit" / "status.json").at("datasets");
  doc["analyze"] = read_json(out_dir() / "analyze" / "rankings.json");
  const auto profiles = formats::load_profiles(out_dir() / "analyze" / "profiles.csv");
  json profiles_json = json::array();
  for (const auto& p : profiles) {
    profiles_json.push_back({{"dataset", p.dataset_id},
                             {"pct_difficult", p.pct_difficult},
                             {"pct_discriminative", p.pct_discriminative},
                             {"pct_guessable", p.pct_guessable},
                             {"pct_negative_a", p.pct_negative_discrimination},
                             {"items", p.item_count}});
  }
  doc["analyze"]["profiles"] = profiles_json;
  const auto trajectory = read_json(out_dir() / "rate" / "trajectory.json");
  RatingMap final_ratings;
  for (const auto& [id, r] : trajectory.at("final").items()) {
    final_ratings[id] = Rating{id, r.at("r").get<double>(), r.at("rd").get<double>(), r.at("sigma").get<double>()};
  }
  json ranking = json::array();
  for (const auto& r : ranked(final_ratings)) {
    const auto ci = conservative_interval(r);
    ranking.push_back({{"player", r.player_id}, {"rating", r.r}, {"rd", r.rd}, {"volatility", r.sigma},
                       {"interval", {ci.low, ci.high}}});
  }
  doc["rate"] = {{"tau", trajectory.at("tau")},
                 {"draw_decimals", trajectory.at("draw_decimals")},
                 {"dataset_order", trajectory.at("dataset_order")},
                 {"max_volatility_iterations", trajectory.at("max_volatility_iterations")},
                 {"ranking", ranking}};
  json subsets_json = json::array();
  for (const auto& s : subsets) {
    subsets_json.push_back(read_json(out_dir() / "subset" / ("subset_" + cut_label(s.cut_pct) + ".json")));
  }
  doc["subsets"] = subsets_json;
  doc["subset_errors"] = subset_errors;
  doc["stats"] = {{"friedman", read_json(out_dir() / "stats" / "friedman.json")},
                  {"nemenyi", read_json(out_dir() / "stats" / "nemenyi.json")}};
  json failures = json::array();
  for (const auto& f : failures_) {
    failures.push_back({{"dataset", f.dataset_id}, {"stage", f.stage}, {"message", f.message}});
  }
  doc["failures"] = failures;
  write_json(out_dir() / "report.json", doc);

  std::string md;
  md += fmt::format("# Benchmark report: {}\n\n", manifest_.name);
  md += fmt::format("- manifest hash: `{}`\n", hash_);
  md += fmt::format("- tool version: {}\n", kToolVersion);
  if (!manifest_.created.empty()) md += fmt::format("- created: {}\n", manifest_.created);
  md += fmt::format("- Glicko-2 tau: {}; draws when True-Scores agree to {} decimals\n",
                    manifest_.tournament.tau, manifest_.tournament.draw_decimals);
  md += "- Friedman blocks: per-period rating snapshots\n\n";
  md += "## Dataset profiles\n\n| dataset | % difficult | % discriminative | % guessable | % negative a | items |\n";
  md += "|---|---:|---:|---:|---:|---:|\n";
  for (const auto& p : profiles) {
    md += fmt::format("| {} | {:.2f} | {:.2f} | {:.2f} | {:.2f} | {} |\n", p.dataset_id, p.pct_difficult,
                      p.pct_discriminative, p.pct_guessable, p.pct_negative_discrimination, p.item_count);
  }
  md += "\n## Classifier rating ranking\n\n| classifier | rating | RD | volatility |\n|---|---:|---:|---:|\n";
  for (const auto& r : ranked(final_ratings)) {
    md += fmt::format("| {} | {:.2f} | {:.2f} | {:.4f} |\n", r.player_id, r.r, r.rd, r.sigma);
  }
  md += "\n## Benchmark subsets\n\n| cut | members | from difficulty | from discrimination |\n|---:|---:|---:|---:|\n";
  for (const auto& s : subsets) {
    md += fmt::format("| {}% | {} | {} | {} |\n", cut_label(s.cut_pct), s.members.size(), s.from_difficulty,
                      s.from_discrimination);
  }
  for (const auto& e : subset_errors) md += fmt::format("\n- skipped {}\n", e);
  const auto& fr = doc["stats"]["friedman"];
  md += fmt::format("\n## Friedman test\n\nchi-square = {:.6g}, df = {}, p = {:.6g}\n",
                    fr.at("statistic").get<double>(), fr.at("df").get<int>(), fr.at("p_value").get<double>());
  if (!failures_.empty()) {
    md += "\n## Failures\n\n";
    for (const auto& f : failures_) md += fmt::format("- {} ({}): {}\n", f.dataset_id, f.stage, f.message);
  }
  write_file(out_dir() / "report.md", md);
}

}  // namespace irtbench
