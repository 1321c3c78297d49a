#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace augequiv {

enum class Mode { RealAug, ClosedSet, OpenSet };

std::string to_string(Mode mode);
Mode mode_from_string(const std::string& name);

/// One measured top-1 accuracy at (n_base, added real, added synthetic).
struct ExperimentRecord {
    std::string dataset_id;
    Mode mode = Mode::RealAug;
    std::string classifier_id;
    std::int64_t n_base = 0;
    std::int64_t added_real = 0;
    std::int64_t added_syn = 0;
    double accuracy = 0.0;  // top-1 percentage in [0, 100]

    bool operator==(const ExperimentRecord&) const = default;
};

/// Model-selection score used when ranking the 31 basis subsets.
enum class Criterion { R2, AdjustedR2, Rmse };

std::string to_string(Criterion criterion);
Criterion criterion_from_string(const std::string& name);

/// Loss space for the equivalence-law regression.
enum class LossSpace { Log, Linear };

std::string to_string(LossSpace loss);
LossSpace loss_from_string(const std::string& name);

/// Per-dataset study parameters: grid of (n_base, ratios) plus fitting knobs.
struct StudyConfig {
    std::string dataset_id;
    std::int64_t n_total = 0;  // full original training-set size
    double epsilon = 1.0;
    double ratio_cap = 100.0;
    Criterion criterion = Criterion::AdjustedR2;
    LossSpace loss = LossSpace::Log;
    // (n_base, ratios r = n_real+/n_base), sorted by n_base, no duplicates.
    std::vector<std::pair<std::int64_t, std::vector<double>>> tuple_grid;

    void validate() const;  // throws ConfigError
};

/// One (n_real, n_syn, accuracy) point of a fitting slice. n_real is the
/// TOTAL real amount (n_base + added real); n_syn the added synthetic amount.
struct SlicePoint {
    double n_real = 0.0;
    double n_syn = 0.0;
    double accuracy = 0.0;

    bool operator==(const SlicePoint&) const = default;
};

/// Parses comma-delimited rows with the mandatory header
/// `dataset,mode,classifier,n_base,added_real,added_syn,accuracy`
/// (any column order). Throws ParseError naming the offending row/column.
std::vector<ExperimentRecord> parse_records(std::istream& in);
std::vector<ExperimentRecord> parse_records(const std::string& text);

/// Canonical CSV text; parse_records(serialize_records(r)) == r.
std::string serialize_records(const std::vector<ExperimentRecord>& records);

/// Names of the bundled benchmark-table fixtures, sorted.
std::vector<std::string> fixture_names();

/// Raw CSV text of a bundled fixture. Throws DataError on unknown name.
const std::string& fixture_csv(const std::string& name);

/// Parsed records of a bundled fixture. Throws DataError on unknown name.
std::vector<ExperimentRecord> load_fixture(const std::string& name);

/// Extracts the fitting slice for (dataset, syn mode, n_base):
/// real_aug rows map to (n_base + added_real, 0), `mode` rows to
/// (n_base, added_syn); the baseline is deduplicated and replicate rows are
/// averaged. Throws DataError when fewer than 5 points result.
std::vector<SlicePoint> slice_for_base(const std::vector<ExperimentRecord>& records,
                                       const std::string& dataset_id, Mode mode,
                                       std::int64_t n_base);

}  // namespace augequiv
