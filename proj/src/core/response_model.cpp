#include "core/response_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>

#include "core/error.hpp"
#include "core/text_io.hpp"

namespace irtbench {
namespace {

void require_unique(const std::vector<std::string>& ids, std::string_view what) {
  std::unordered_set<std::string> seen;
  for (const auto& id : ids) {
    if (id.empty()) fail(ErrorCode::kValidation, fmt::format("empty {} id", what));
    if (!seen.insert(id).second) {
      fail(ErrorCode::kValidation, fmt::format("duplicate {} id '{}'", what, id));
    }
  }
}

}  // namespace

ResponseMatrix::ResponseMatrix(std::string dataset_id, std::vector<std::string> respondents,
                               std::vector<std::string> items, std::vector<std::uint8_t> cells)
    : dataset_id_(std::move(dataset_id)),
      respondents_(std::move(respondents)),
      items_(std::move(items)),
      cells_(std::move(cells)) {
  if (respondents_.empty() || items_.empty()) {
    fail(ErrorCode::kValidation, fmt::format("dataset '{}': empty response matrix", dataset_id_));
  }
  if (cells_.size() != respondents_.size() * items_.size()) {
    fail(ErrorCode::kValidation,
         fmt::format("dataset '{}': {} cells for a {}x{} matrix", dataset_id_, cells_.size(),
                     respondents_.size(), items_.size()));
  }
  require_unique(respondents_, "respondent");
  require_unique(items_, "item");
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i] > 1) {
      fail(ErrorCode::kValidation, fmt::format("cell ({}, {}) is not 0/1", i / items_.size(),
                                               i % items_.size()));
    }
  }
}

std::vector<std::uint8_t> ResponseMatrix::column(std::size_t c) const {
  std::vector<std::uint8_t> out(rows());
  for (std::size_t r = 0; r < rows(); ++r) out[r] = at(r, c);
  return out;
}

ResponseMatrix ResponseMatrix::with_rows(const std::vector<ResponseRow>& extra) const {
  auto respondents = respondents_;
  auto cells = cells_;
  for (const auto& [id, row] : extra) {
    if (row.size() != cols()) {
      fail(ErrorCode::kValidation,
           fmt::format("row '{}' has {} cells, expected {}", id, row.size(), cols()));
    }
    respondents.push_back(id);
    cells.insert(cells.end(), row.begin(), row.end());
  }
  return ResponseMatrix(dataset_id_, std::move(respondents), items_, std::move(cells));
}

LabelVector::LabelVector(std::vector<std::string> item_ids, std::vector<std::string> labels)
    : items_(std::move(item_ids)), labels_(std::move(labels)) {
  if (items_.size() != labels_.size()) {
    fail(ErrorCode::kValidation,
         fmt::format("{} item ids but {} labels", items_.size(), labels_.size()));
  }
  if (items_.empty()) fail(ErrorCode::kValidation, "label vector is empty");
  require_unique(items_, "item");
  for (const auto& label : labels_) {
    if (label.empty()) fail(ErrorCode::kValidation, "empty class label");
    ++counts_[label];
  }
  if (counts_.size() < 2) {
    fail(ErrorCode::kValidation, "labels must contain at least 2 distinct classes");
  }
}

const std::string& LabelVector::majority_class() const {
  // std::map iterates labels ascending, so strict '>' keeps the smallest on ties.
  auto best = counts_.begin();
  for (auto it = counts_.begin(); it != counts_.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  return best->first;
}

const std::string& LabelVector::minority_class() const {
  // Chosen among the classes other than the majority, smallest label on ties.
  const std::string& majority = majority_class();
  auto best = counts_.end();
  for (auto it = counts_.begin(); it != counts_.end(); ++it) {
    if (it->first == majority) continue;
    if (best == counts_.end() || it->second < best->second) best = it;
  }
  return best->first;
}

LabelVector LabelVector::reordered(const std::vector<std::string>& order) const {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < items_.size(); ++i) index.emplace(items_[i], i);
  if (order.size() != items_.size()) {
    fail(ErrorCode::kValidation,
         fmt::format("label file has {} items, matrix has {}", items_.size(), order.size()));
  }
  std::vector<std::string> labels;
  labels.reserve(order.size());
  for (const auto& id : order) {
    const auto it = index.find(id);
    if (it == index.end()) fail(ErrorCode::kValidation, fmt::format("no label for item '{}'", id));
    labels.push_back(labels_[it->second]);
  }
  return LabelVector(order, std::move(labels));
}

SplitPlan plan_split(std::size_t total_instances, double ratio, std::size_t test_cap) {
  if (total_instances < 10) {
    fail(ErrorCode::kTooSmall,
         fmt::format("{} instances; at least 10 are required to split", total_instances));
  }
  if (!(ratio > 0.0 && ratio < 1.0)) {
    fail(ErrorCode::kInvalidArgument, fmt::format("split ratio {} outside (0, 1)", ratio));
  }
  // Round half up; the epsilon absorbs representation error in 1 - ratio.
  const double raw = static_cast<double>(total_instances) * (1.0 - ratio);
  auto test = static_cast<std::size_t>(std::floor(raw + 0.5 + 1e-9));
  test = std::min(test, test_cap);
  SplitPlan plan;
  plan.total_instances = total_instances;
  plan.test_count = test;
  plan.train_count = total_instances - test;
  plan.ratio = ratio;
  plan.test_cap = test_cap;
  return plan;
}

bool is_artificial(const std::string& respondent_id) {
  return std::find(kArtificialIds.begin(), kArtificialIds.end(), respondent_id) !=
         kArtificialIds.end();
}

std::vector<ResponseRow> artificial_responses(const LabelVector& labels,
                                              const std::array<std::uint64_t, 3>& seeds) {
  const auto& truth = labels.labels();
  const std::size_t n = truth.size();
  std::vector<std::string> classes;
  for (const auto& [label, count] : labels.class_counts()) classes.push_back(label);

  auto matching = [&](const std::string& cls) {
    std::vector<std::uint8_t> row(n);
    for (std::size_t i = 0; i < n; ++i) row[i] = truth[i] == cls ? 1 : 0;
    return row;
  };

  std::vector<ResponseRow> rows;
  rows.emplace_back("optimal", std::vector<std::uint8_t>(n, 1));
  rows.emplace_back("pessimal", std::vector<std::uint8_t>(n, 0));
  rows.emplace_back("majority", matching(labels.majority_class()));
  rows.emplace_back("minority", matching(labels.minority_class()));
  for (std::size_t k = 0; k < seeds.size(); ++k) {
    // mt19937_64 output is fixed by the standard; the mapping to a class index
    // is done here so rows do not depend on the library's distributions.
    std::mt19937_64 engine(seeds[k]);
    std::vector<std::uint8_t> row(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
      const auto pick = std::min(classes.size() - 1,
                                 static_cast<std::size_t>(u * static_cast<double>(classes.size())));
      row[i] = classes[pick] == truth[i] ? 1 : 0;
    }
    rows.emplace_back(kArtificialIds[4 + k], std::move(row));
  }
  return rows;
}

ResponseMatrix with_artificial(const ResponseMatrix& matrix, const LabelVector& labels,
                               const std::array<std::uint64_t, 3>& seeds) {
  for (const auto& id : matrix.respondent_ids()) {
    if (is_artificial(id)) {
      fail(ErrorCode::kValidation,
           fmt::format("dataset '{}' already contains a row named '{}'", matrix.dataset_id(), id));
    }
  }
  const auto aligned = labels.reordered(matrix.item_ids());
  return matrix.with_rows(artificial_responses(aligned, seeds));
}

ResponseMatrix parse_response_matrix(std::istream& in, std::string dataset_id) {
  std::string line;
  if (!std::getline(in, line)) {
    fail(ErrorCode::kValidation, fmt::format("dataset '{}': empty file", dataset_id));
  }
  auto header = split_csv_line(line);
  // "item" is accepted as the corner label for older exports.
  if (header.empty() || (header[0] != "respondent" && header[0] != "item")) {
    fail(ErrorCode::kParse, fmt::format("dataset '{}': header must start with 'respondent'",
                                        dataset_id));
  }
  std::vector<std::string> items(header.begin() + 1, header.end());
  std::vector<std::string> respondents;
  std::vector<std::uint8_t> cells;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      fail(ErrorCode::kParse, fmt::format("dataset '{}': line {} has {} fields, expected {}",
                                          dataset_id, line_no, fields.size(), header.size()));
    }
    const std::size_t row = respondents.size();
    respondents.push_back(fields[0]);
    for (std::size_t c = 1; c < fields.size(); ++c) {
      const auto& cell = fields[c];
      if (cell != "0" && cell != "1") {
        fail(ErrorCode::kParse,
             fmt::format("dataset '{}': cell at row {} ('{}'), column {} ('{}') is '{}', expected 0 or 1",
                         dataset_id, row + 1, fields[0], c, header[c], cell));
      }
      cells.push_back(cell == "1" ? 1 : 0);
    }
  }
  return ResponseMatrix(std::move(dataset_id), std::move(respondents), std::move(items),
                        std::move(cells));
}

ResponseMatrix load_response_matrix(const std::filesystem::path& path, std::string dataset_id) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, fmt::format("cannot open '{}'", path.string()));
  return parse_response_matrix(in, std::move(dataset_id));
}

ResponseMatrix load_response_matrix(const std::filesystem::path& path) {
  return load_response_matrix(path, path.stem().string());
}

void write_response_matrix(std::ostream& out, const ResponseMatrix& matrix) {
  out << "respondent";
  for (const auto& id : matrix.item_ids()) out << ',' << id;
  out << '\n';
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    out << matrix.respondent_ids()[r];
    for (auto cell : matrix.row(r)) out << ',' << (cell ? '1' : '0');
    out << '\n';
  }
}

void save_response_matrix(const std::filesystem::path& path, const ResponseMatrix& matrix) {
  std::ostringstream buffer;
  write_response_matrix(buffer, matrix);
  write_file(path, buffer.str());
}

LabelVector parse_labels(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || split_csv_line(line) != std::vector<std::string>{"item", "label"}) {
    fail(ErrorCode::kParse, "label file header must be 'item,label'");
  }
  std::vector<std::string> items;
  std::vector<std::string> labels;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto fields = split_csv_line(line);
    if (fields.size() != 2) {
      fail(ErrorCode::kParse, fmt::format("label file line {} has {} fields", line_no, fields.size()));
    }
    items.push_back(std::move(fields[0]));
    labels.push_back(std::move(fields[1]));
  }
  return LabelVector(std::move(items), std::move(labels));
}

LabelVector load_labels(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, fmt::format("cannot open '{}'", path.string()));
  return parse_labels(in);
}

void write_labels(std::ostream& out, const LabelVector& labels) {
  out << "item,label\n";
  for (std::size_t i = 0; i < labels.item_ids().size(); ++i) {
    out << labels.item_ids()[i] << ',' << labels.labels()[i] << '\n';
  }
}

}  // namespace irtbench
