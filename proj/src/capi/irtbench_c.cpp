#include "irtbench/irtbench.h"

#include <cmath>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "core/error.hpp"
#include "core/irt.hpp"
#include "core/item_analysis.hpp"
#include "core/pipeline.hpp"
#include "core/rating.hpp"
#include "core/response_model.hpp"

struct irtb_matrix {
  irtbench::ResponseMatrix matrix;
};

struct irtb_fit {
  irtbench::BirnbaumResult result;
  std::vector<double> true_scores;
};

struct irtb_pipeline {
  irtbench::Pipeline pipeline;
  std::string out_dir;
};

namespace {

thread_local std::string last_error;

irtb_status set_error(irtb_status status, const char* message) {
  last_error = message;
  return status;
}

// Runs body and maps exceptions onto status codes.
template <typename F>
irtb_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return IRTB_OK;
  } catch (const irtbench::Error& e) {
    return set_error(static_cast<irtb_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(IRTB_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(IRTB_E_INTERNAL, e.what());
  } catch (...) {
    return set_error(IRTB_E_INTERNAL, "unknown error");
  }
}

void require(bool condition, const char* what) {
  if (!condition) irtbench::fail(irtbench::ErrorCode::kInvalidArgument, what);
}

}  // namespace

extern "C" {

const char* irtb_last_error(void) { return last_error.c_str(); }

const char* irtb_status_string(irtb_status status) {
  switch (status) {
    case IRTB_OK: return "ok";
    case IRTB_E_INTERNAL: return "internal";
    default:
      if (status >= IRTB_E_PARSE && status <= IRTB_E_INVALID_ARGUMENT) {
        return irtbench::to_string(static_cast<irtbench::ErrorCode>(status));
      }
      return "unknown";
  }
}

const char* irtb_version(void) { return irtbench::kToolVersion; }

double irtb_p_correct(double theta, double a, double b, double c) {
  return irtbench::p_correct(theta, a, b, c);
}

void irtb_conservative_interval(double rating, double rd, double* low, double* high) {
  const auto ci = irtbench::conservative_interval(irtbench::Rating{"", rating, rd});
  if (low) *low = ci.low;
  if (high) *high = ci.high;
}

irtb_status irtb_glicko2_update(const irtb_rating* player, const irtb_rating* opponents,
                                const double* scores, size_t count, double tau, irtb_rating* out) {
  return guarded([&] {
    require(player && out, "player and out must not be null");
    require(count == 0 || (opponents && scores), "opponents and scores must not be null");
    std::vector<irtbench::MatchResult> results;
    for (size_t i = 0; i < count; ++i) {
      results.push_back({irtbench::Rating{"", opponents[i].r, opponents[i].rd, opponents[i].sigma}, scores[i]});
    }
    const auto r = irtbench::update_rating(irtbench::Rating{"", player->r, player->rd, player->sigma}, results, tau);
    *out = irtb_rating{r.r, r.rd, r.sigma};
  });
}

irtb_status irtb_plan_split(size_t total_instances, double ratio, size_t test_cap, size_t* train,
                            size_t* test) {
  return guarded([&] {
    require(train && test, "train and test must not be null");
    const auto plan = irtbench::plan_split(total_instances, ratio, test_cap);
    *train = plan.train_count;
    *test = plan.test_count;
  });
}

irtb_status irtb_matrix_load(const char* path, const char* dataset_id, irtb_matrix** out) {
  return guarded([&] {
    require(path && out, "path and out must not be null");
    *out = nullptr;
    auto m = dataset_id ? irtbench::load_response_matrix(path, dataset_id) : irtbench::load_response_matrix(path);
    *out = new irtb_matrix{std::move(m)};
  });
}

irtb_status irtb_matrix_save(const irtb_matrix* matrix, const char* path) {
  return guarded([&] {
    require(matrix && path, "matrix and path must not be null");
    irtbench::save_response_matrix(path, matrix->matrix);
  });
}

void irtb_matrix_free(irtb_matrix* matrix) { delete matrix; }

size_t irtb_matrix_rows(const irtb_matrix* matrix) { return matrix ? matrix->matrix.rows() : 0; }

size_t irtb_matrix_cols(const irtb_matrix* matrix) { return matrix ? matrix->matrix.cols() : 0; }

irtb_status irtb_matrix_cell(const irtb_matrix* matrix, size_t row, size_t col, int* value) {
  return guarded([&] {
    require(matrix && value, "matrix and value must not be null");
    require(row < matrix->matrix.rows() && col < matrix->matrix.cols(), "cell index out of range");
    *value = matrix->matrix.at(row, col);
  });
}

irtb_status irtb_matrix_add_artificial(irtb_matrix* matrix, const char* labels_path, const uint64_t seeds[3]) {
  return guarded([&] {
    require(matrix && labels_path && seeds, "arguments must not be null");
    const auto labels = irtbench::load_labels(labels_path);
    matrix->matrix = irtbench::with_artificial(matrix->matrix, labels, {seeds[0], seeds[1], seeds[2]});
  });
}

void irtb_fit_options_default(irtb_fit_options* options) {
  if (!options) return;
  const irtbench::FitConfig defaults;
  options->max_outer_iterations = defaults.max_outer_iterations;
  options->b_convergence_tol = defaults.b_convergence_tol;
  options->standardize_abilities = defaults.standardize_abilities ? 1 : 0;
  options->workers = defaults.workers;
}

irtb_status irtb_fit_run(const irtb_matrix* matrix, const irtb_fit_options* options, irtb_fit** out) {
  return guarded([&] {
    require(matrix && out, "matrix and out must not be null");
    *out = nullptr;
    irtbench::FitConfig config;
    if (options) {
      config.max_outer_iterations = options->max_outer_iterations;
      config.b_convergence_tol = options->b_convergence_tol;
      config.standardize_abilities = options->standardize_abilities != 0;
      config.workers = options->workers == 0 ? 1 : options->workers;
    }
    auto fit = std::make_unique<irtb_fit>();
    fit->result = irtbench::birnbaum_fit(matrix->matrix, config);
    for (double theta : fit->result.abilities.theta) {
      fit->true_scores.push_back(irtbench::true_score(theta, fit->result.items).value);
    }
    *out = fit.release();
  });
}

void irtb_fit_free(irtb_fit* fit) { delete fit; }

size_t irtb_fit_item_count(const irtb_fit* fit) { return fit ? fit->result.items.size() : 0; }

size_t irtb_fit_respondent_count(const irtb_fit* fit) { return fit ? fit->result.abilities.theta.size() : 0; }

int irtb_fit_iterations(const irtb_fit* fit) { return fit ? fit->result.iterations : 0; }

int irtb_fit_converged(const irtb_fit* fit) { return fit && fit->result.converged ? 1 : 0; }

irtb_status irtb_fit_item(const irtb_fit* fit, size_t index, double* a, double* b, double* c, int* flag) {
  return guarded([&] {
    require(fit, "fit must not be null");
    require(index < fit->result.items.size(), "item index out of range");
    const auto& it = fit->result.items[index];
    if (a) *a = it.a;
    if (b) *b = it.b;
    if (c) *c = it.c;
    if (flag) *flag = static_cast<int>(it.flag);
  });
}

irtb_status irtb_fit_ability(const irtb_fit* fit, size_t index, double* theta, double* true_score) {
  return guarded([&] {
    require(fit, "fit must not be null");
    require(index < fit->true_scores.size(), "respondent index out of range");
    if (theta) *theta = fit->result.abilities.theta[index];
    if (true_score) *true_score = fit->true_scores[index];
  });
}

void irtb_pipeline_options_default(irtb_pipeline_options* options) {
  if (!options) return;
  options->out_dir = nullptr;
  options->has_seed = 0;
  options->seed = 0;
  options->workers = 0;
  options->difficulty_min = NAN;
  options->discrimination_min = NAN;
  options->guessing_min = NAN;
  options->order_sweep = 0;
}

irtb_status irtb_pipeline_open(const char* manifest_path, const irtb_pipeline_options* options,
                               irtb_pipeline** out) {
  return guarded([&] {
    require(manifest_path && out, "manifest_path and out must not be null");
    *out = nullptr;
    irtbench::RunOverrides overrides;
    if (options) {
      if (options->out_dir) overrides.out_dir = options->out_dir;
      if (options->has_seed) overrides.seed = options->seed;
      if (options->workers) overrides.workers = options->workers;
      if (!std::isnan(options->difficulty_min)) overrides.difficulty_min = options->difficulty_min;
      if (!std::isnan(options->discrimination_min)) overrides.discrimination_min = options->discrimination_min;
      if (!std::isnan(options->guessing_min)) overrides.guessing_min = options->guessing_min;
      overrides.order_sweep = options->order_sweep != 0;
    }
    irtbench::Pipeline pipeline(irtbench::load_manifest(manifest_path), overrides);
    std::string dir = pipeline.out_dir().string();
    *out = new irtb_pipeline{std::move(pipeline), std::move(dir)};
  });
}

void irtb_pipeline_free(irtb_pipeline* pipeline) { delete pipeline; }

#define IRTB_PIPELINE_STAGE(name)                             \
  irtb_status irtb_pipeline_##name(irtb_pipeline* pipeline) { \
    return guarded([&] {                                      \
      require(pipeline, "pipeline must not be null");         \
      pipeline->pipeline.name();                              \
    });                                                       \
  }

IRTB_PIPELINE_STAGE(fit)
IRTB_PIPELINE_STAGE(analyze)
IRTB_PIPELINE_STAGE(rate)
IRTB_PIPELINE_STAGE(stats)
IRTB_PIPELINE_STAGE(report)

#undef IRTB_PIPELINE_STAGE

irtb_status irtb_pipeline_subset(irtb_pipeline* pipeline, double cut_pct, size_t* members) {
  return guarded([&] {
    require(pipeline, "pipeline must not be null");
    const auto result = pipeline->pipeline.subset(cut_pct);
    if (members) *members = result.members.size();
  });
}

const char* irtb_pipeline_manifest_hash(const irtb_pipeline* pipeline) {
  return pipeline ? pipeline->pipeline.manifest_hash().c_str() : "";
}

const char* irtb_pipeline_out_dir(const irtb_pipeline* pipeline) {
  return pipeline ? pipeline->out_dir.c_str() : "";
}

size_t irtb_pipeline_cut_count(const irtb_pipeline* pipeline) {
  return pipeline ? pipeline->pipeline.manifest().cuts.size() : 0;
}

double irtb_pipeline_cut(const irtb_pipeline* pipeline, size_t index) {
  if (!pipeline || index >= pipeline->pipeline.manifest().cuts.size()) return NAN;
  return pipeline->pipeline.manifest().cuts[index];
}

size_t irtb_pipeline_failure_count(const irtb_pipeline* pipeline) {
  return pipeline ? pipeline->pipeline.failures().size() : 0;
}

irtb_status irtb_pipeline_failure(const irtb_pipeline* pipeline, size_t index, const char** dataset_id,
                                  const char** stage, const char** message) {
  return guarded([&] {
    require(pipeline, "pipeline must not be null");
    const auto& failures = pipeline->pipeline.failures();
    require(index < failures.size(), "failure index out of range");
    if (dataset_id) *dataset_id = failures[index].dataset_id.c_str();
    if (stage) *stage = failures[index].stage.c_str();
    if (message) *message = failures[index].message.c_str();
  });
}

}  // extern "C"
