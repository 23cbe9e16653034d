#include "core/formats.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "core/error.hpp"
#include "core/text_io.hpp"

namespace irtbench::formats {
namespace {

std::vector<std::vector<std::string>> parse_table(const std::string& text,
                                                  const std::vector<std::string>& header,
                                                  std::string_view what) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || split_csv_line(line) != header) {
    fail(ErrorCode::kParse, fmt::format("{}: unexpected header", what));
  }
  std::vector<std::vector<std::string>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      fail(ErrorCode::kParse, fmt::format("{}: line {} has {} fields, expected {}", what, line_no,
                                          fields.size(), header.size()));
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

std::string pct(double v) { return fmt::format("{:.2f}", v); }

}  // namespace

std::string item_params_csv(std::span<const ItemParams> items) {
  std::string out = "item,a,b,c,flag\n";
  for (const auto& it : items) {
    out += fmt::format("{},{},{},{},{}\n", it.item_id, format_exact(it.a), format_exact(it.b),
                       format_exact(it.c), to_string(it.flag));
  }
  return out;
}

std::vector<ItemParams> parse_item_params_csv(const std::string& text) {
  std::vector<ItemParams> items;
  for (auto& f : parse_table(text, {"item", "a", "b", "c", "flag"}, "item parameters")) {
    ItemParams it;
    it.item_id = f[0];
    it.a = parse_double(f[1], "a");
    it.b = parse_double(f[2], "b");
    it.c = parse_double(f[3], "c");
    it.flag = parse_degenerate_flag(f[4]);
    items.push_back(std::move(it));
  }
  return items;
}

std::string abilities_csv(std::span<const AbilityRow> rows) {
  std::string out = "respondent,theta,true_score\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{}\n", r.respondent_id, format_exact(r.theta), format_exact(r.true_score));
  }
  return out;
}

std::vector<AbilityRow> parse_abilities_csv(const std::string& text) {
  std::vector<AbilityRow> rows;
  for (auto& f : parse_table(text, {"respondent", "theta", "true_score"}, "abilities")) {
    rows.push_back({f[0], parse_double(f[1], "theta"), parse_double(f[2], "true_score")});
  }
  return rows;
}

std::string profiles_csv(std::span<const DatasetProfile> profiles) {
  std::string out = "dataset,pct_difficult,pct_discriminative,pct_guessable,pct_negative_a,items\n";
  for (const auto& p : profiles) {
    out += fmt::format("{},{},{},{},{},{}\n", p.dataset_id, pct(p.pct_difficult),
                       pct(p.pct_discriminative), pct(p.pct_guessable),
                       pct(p.pct_negative_discrimination), p.item_count);
  }
  return out;
}

std::vector<DatasetProfile> parse_profiles_csv(const std::string& text) {
  std::vector<DatasetProfile> out;
  std::set<std::string> seen;
  for (auto& f : parse_table(text,
                             {"dataset", "pct_difficult", "pct_discriminative", "pct_guessable",
                              "pct_negative_a", "items"},
                             "profiles")) {
    DatasetProfile p;
    p.dataset_id = f[0];
    if (!seen.insert(p.dataset_id).second) {
      fail(ErrorCode::kValidation, fmt::format("profiles: duplicate dataset '{}'", p.dataset_id));
    }
    p.pct_difficult = parse_double(f[1], "pct_difficult");
    p.pct_discriminative = parse_double(f[2], "pct_discriminative");
    p.pct_guessable = parse_double(f[3], "pct_guessable");
    p.pct_negative_discrimination = parse_double(f[4], "pct_negative_a");
    p.item_count = static_cast<std::size_t>(parse_double(f[5], "items"));
    for (double v : {p.pct_difficult, p.pct_discriminative, p.pct_guessable, p.pct_negative_discrimination}) {
      if (!(v >= 0.0 && v <= 100.0)) {
        fail(ErrorCode::kValidation, fmt::format("profiles: '{}' has a percentage outside [0, 100]", p.dataset_id));
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<DatasetProfile> load_profiles(const std::filesystem::path& path) {
  return parse_profiles_csv(read_file(path));
}

DatasetProfile rounded(DatasetProfile p) {
  const auto r2 = [](double v) { return std::round(v * 100.0) / 100.0; };
  p.pct_difficult = r2(p.pct_difficult);
  p.pct_discriminative = r2(p.pct_discriminative);
  p.pct_guessable = r2(p.pct_guessable);
  p.pct_negative_discrimination = r2(p.pct_negative_discrimination);
  return p;
}

std::string ratings_csv(const RatingMap& ratings) {
  std::string out = "player,rating,rd,volatility\n";
  for (const auto& r : ranked(ratings)) {
    out += fmt::format("{},{:.2f},{:.2f},{:.4f}\n", r.player_id, r.r, r.rd, r.sigma);
  }
  return out;
}

std::string characterization_csv(
    std::span<const std::pair<std::string, SubsetCharacterization>> rows) {
  std::string out = "subset,discrimination_avg,discrimination_sd,difficulty_avg,difficulty_sd\n";
  for (const auto& [label, c] : rows) {
    out += fmt::format("{},{},{},{},{}\n", label, pct(c.discrimination.mean), pct(c.discrimination.sd),
                       pct(c.difficulty.mean), pct(c.difficulty.sd));
  }
  return out;
}

std::string metadata_csv(std::span<const std::pair<std::string, SubsetCharacterization>> rows) {
  std::set<std::string> fields;
  for (const auto& [label, c] : rows) {
    for (const auto& [field, s] : c.metadata) fields.insert(field);
  }
  std::string out = "field";
  for (const auto& [label, c] : rows) {
    out += fmt::format(",{0}_mean,{0}_median,{0}_sd", label);
  }
  out += '\n';
  for (const auto& field : fields) {
    out += field;
    for (const auto& [label, c] : rows) {
      const auto it = c.metadata.find(field);
      if (it == c.metadata.end()) {
        out += ",,,";
      } else {
        out += fmt::format(",{:.2f},{:.2f},{:.2f}", it->second.mean, it->second.median, it->second.sd);
      }
    }
    out += '\n';
  }
  return out;
}

std::string nemenyi_csv(std::span<const std::string> treatments, const NemenyiResult& result) {
  const std::size_t k = treatments.size();
  std::string out = "classifier";
  for (const auto& t : treatments) out += "," + t;
  out += '\n';
  for (std::size_t i = 0; i < k; ++i) {
    out += treatments[i];
    for (std::size_t j = 0; j < k; ++j) out += "," + format_exact(result.p_values[i * k + j]);
    out += '\n';
  }
  return out;
}

}  // namespace irtbench::formats
