#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace irtbench {

/// Dense dichotomous response matrix: one row per respondent (classifier),
/// one column per item (test instance). Immutable once constructed.
class ResponseMatrix {
 public:
  /// `cells` is row-major with `respondents.size() * items.size()` entries,
  /// each exactly 0 or 1. Throws Error(kValidation) otherwise.
  ResponseMatrix(std::string dataset_id, std::vector<std::string> respondents,
                 std::vector<std::string> items, std::vector<std::uint8_t> cells);

  const std::string& dataset_id() const noexcept { return dataset_id_; }
  const std::vector<std::string>& respondent_ids() const noexcept { return respondents_; }
  const std::vector<std::string>& item_ids() const noexcept { return items_; }

  std::size_t rows() const noexcept { return respondents_.size(); }
  std::size_t cols() const noexcept { return items_.size(); }

  std::uint8_t at(std::size_t row, std::size_t col) const { return cells_[row * cols() + col]; }
  std::span<const std::uint8_t> row(std::size_t r) const {
    return {cells_.data() + r * cols(), cols()};
  }
  std::vector<std::uint8_t> column(std::size_t c) const;
  const std::vector<std::uint8_t>& cells() const noexcept { return cells_; }

  /// Returns a copy with `extra` rows appended below the existing ones.
  ResponseMatrix with_rows(
      const std::vector<std::pair<std::string, std::vector<std::uint8_t>>>& extra) const;

  friend bool operator==(const ResponseMatrix&, const ResponseMatrix&) = default;

 private:
  std::string dataset_id_;
  std::vector<std::string> respondents_;
  std::vector<std::string> items_;
  std::vector<std::uint8_t> cells_;
};

/// True class label for every test instance.
class LabelVector {
 public:
  LabelVector(std::vector<std::string> item_ids, std::vector<std::string> labels);

  const std::vector<std::string>& item_ids() const noexcept { return items_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::map<std::string, std::size_t>& class_counts() const noexcept { return counts_; }

  /// Most frequent class; ties go to the lexicographically smallest label.
  const std::string& majority_class() const;
  /// Least frequent class; ties go to the lexicographically smallest label.
  const std::string& minority_class() const;

  /// Labels permuted to follow `order` (every id must be present).
  LabelVector reordered(const std::vector<std::string>& order) const;

 private:
  std::vector<std::string> items_;
  std::vector<std::string> labels_;
  std::map<std::string, std::size_t> counts_;
};

struct SplitPlan {
  std::size_t total_instances = 0;
  std::size_t train_count = 0;
  std::size_t test_count = 0;
  double ratio = 0.7;
  std::size_t test_cap = 500;
};

SplitPlan plan_split(std::size_t total_instances, double ratio = 0.7, std::size_t test_cap = 500);

inline constexpr std::array<const char*, 7> kArtificialIds = {
    "optimal", "pessimal", "majority", "minority", "rand1", "rand2", "rand3"};

bool is_artificial(const std::string& respondent_id);

using ResponseRow = std::pair<std::string, std::vector<std::uint8_t>>;

/// The seven label-derived baseline classifiers, in kArtificialIds order.
std::vector<ResponseRow> artificial_responses(const LabelVector& labels,
                                              const std::array<std::uint64_t, 3>& seeds);

/// Appends the artificial rows to `matrix`. Labels are matched to columns by item id.
ResponseMatrix with_artificial(const ResponseMatrix& matrix, const LabelVector& labels,
                               const std::array<std::uint64_t, 3>& seeds);

ResponseMatrix parse_response_matrix(std::istream& in, std::string dataset_id);
ResponseMatrix load_response_matrix(const std::filesystem::path& path);
ResponseMatrix load_response_matrix(const std::filesystem::path& path, std::string dataset_id);
void write_response_matrix(std::ostream& out, const ResponseMatrix& matrix);
void save_response_matrix(const std::filesystem::path& path, const ResponseMatrix& matrix);

LabelVector parse_labels(std::istream& in);
LabelVector load_labels(const std::filesystem::path& path);
void write_labels(std::ostream& out, const LabelVector& labels);

}  // namespace irtbench
