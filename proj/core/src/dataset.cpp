#include "augequiv/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "augequiv/error.hpp"

namespace augequiv {

namespace detail {
struct Fixture {
    const char* name;
    const char* csv;
};
// Generated from the bundled fixture CSVs at configure time.
extern const Fixture kFixtures[];
extern const int kFixtureCount;
}  // namespace detail

std::string to_string(Mode mode) {
    switch (mode) {
        case Mode::RealAug: return "real_aug";
        case Mode::ClosedSet: return "closed_set";
        case Mode::OpenSet: return "open_set";
    }
    throw ConfigError("invalid mode value");
}

Mode mode_from_string(const std::string& name) {
    if (name == "real_aug") return Mode::RealAug;
    if (name == "closed_set") return Mode::ClosedSet;
    if (name == "open_set") return Mode::OpenSet;
    throw ParseError("unknown mode '" + name +
                     "' (expected real_aug, closed_set or open_set)");
}

std::string to_string(Criterion criterion) {
    switch (criterion) {
        case Criterion::R2: return "r2";
        case Criterion::AdjustedR2: return "adjusted_r2";
        case Criterion::Rmse: return "rmse";
    }
    throw ConfigError("invalid criterion value");
}

Criterion criterion_from_string(const std::string& name) {
    if (name == "r2") return Criterion::R2;
    if (name == "adjusted_r2") return Criterion::AdjustedR2;
    if (name == "rmse") return Criterion::Rmse;
    throw ParseError("unknown criterion '" + name +
                     "' (expected r2, adjusted_r2 or rmse)");
}

std::string to_string(LossSpace loss) {
    switch (loss) {
        case LossSpace::Log: return "log";
        case LossSpace::Linear: return "linear";
    }
    throw ConfigError("invalid loss value");
}

LossSpace loss_from_string(const std::string& name) {
    if (name == "log") return LossSpace::Log;
    if (name == "linear") return LossSpace::Linear;
    throw ParseError("unknown loss '" + name + "' (expected log or linear)");
}

void StudyConfig::validate() const {
    if (dataset_id.empty()) throw ConfigError("config: dataset id is empty");
    if (n_total <= 0) throw ConfigError("config: n_total must be positive");
    if (!(epsilon > 0.0)) throw ConfigError("config: epsilon must be positive");
    if (!(ratio_cap > 0.0)) throw ConfigError("config: cap must be positive");
    std::int64_t prev = -1;
    for (const auto& [n_base, ratios] : tuple_grid) {
        if (n_base <= 0) throw ConfigError("config: grid n_base must be positive");
        if (n_base <= prev)
            throw ConfigError("config: grid n_base values must be strictly increasing");
        prev = n_base;
        if (n_base > n_total)
            throw ConfigError("config: grid n_base " + std::to_string(n_base) +
                              " exceeds n_total " + std::to_string(n_total));
        if (ratios.empty())
            throw ConfigError("config: grid entry for n_base " + std::to_string(n_base) +
                              " has no ratios");
        for (double r : ratios)
            if (!(r > 0.0))
                throw ConfigError("config: grid ratios must be positive (n_base " +
                                  std::to_string(n_base) + ")");
    }
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(trim(field));
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

std::int64_t parse_int_field(const std::string& text, int row, const std::string& col) {
    std::size_t pos = 0;
    std::int64_t value = 0;
    try {
        value = std::stoll(text, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != text.size() || text.empty())
        throw ParseError("row " + std::to_string(row) + ", column '" + col +
                         "': expected an integer, got '" + text + "'");
    if (value < 0)
        throw ParseError("row " + std::to_string(row) + ", column '" + col +
                         "': must be nonnegative, got '" + text + "'");
    return value;
}

double parse_double_field(const std::string& text, int row, const std::string& col) {
    std::size_t pos = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != text.size() || text.empty())
        throw ParseError("row " + std::to_string(row) + ", column '" + col +
                         "': expected a number, got '" + text + "'");
    return value;
}

constexpr const char* kColumns[] = {"dataset", "mode",      "classifier", "n_base",
                                    "added_real", "added_syn", "accuracy"};

}  // namespace

std::vector<ExperimentRecord> parse_records(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw ParseError("empty input: expected a header row");
    std::vector<std::string> header = split_csv_line(line);
    std::map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (col.count(header[i]))
            throw ParseError("duplicate header column '" + header[i] + "'");
        col[header[i]] = i;
    }
    for (const char* name : kColumns)
        if (!col.count(name))
            throw ParseError(std::string("missing header column '") + name + "'");

    std::vector<ExperimentRecord> records;
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != header.size())
            throw ParseError("row " + std::to_string(row) + ": expected " +
                             std::to_string(header.size()) + " fields, got " +
                             std::to_string(fields.size()));
        ExperimentRecord rec;
        rec.dataset_id = fields[col["dataset"]];
        if (rec.dataset_id.empty())
            throw ParseError("row " + std::to_string(row) + ", column 'dataset': empty");
        try {
            rec.mode = mode_from_string(fields[col["mode"]]);
        } catch (const ParseError& e) {
            throw ParseError("row " + std::to_string(row) + ", column 'mode': " +
                             e.what());
        }
        rec.classifier_id = fields[col["classifier"]];
        if (rec.classifier_id.empty())
            throw ParseError("row " + std::to_string(row) +
                             ", column 'classifier': empty");
        rec.n_base = parse_int_field(fields[col["n_base"]], row, "n_base");
        rec.added_real = parse_int_field(fields[col["added_real"]], row, "added_real");
        rec.added_syn = parse_int_field(fields[col["added_syn"]], row, "added_syn");
        rec.accuracy = parse_double_field(fields[col["accuracy"]], row, "accuracy");
        if (!std::isfinite(rec.accuracy) || rec.accuracy < 0.0 || rec.accuracy > 100.0)
            throw ParseError("row " + std::to_string(row) +
                             ", column 'accuracy': must lie in [0, 100], got '" +
                             fields[col["accuracy"]] + "'");
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<ExperimentRecord> parse_records(const std::string& text) {
    std::istringstream in(text);
    return parse_records(in);
}

std::string serialize_records(const std::vector<ExperimentRecord>& records) {
    std::string out = "dataset,mode,classifier,n_base,added_real,added_syn,accuracy\n";
    char buf[64];
    for (const auto& r : records) {
        out += r.dataset_id;
        out += ',';
        out += to_string(r.mode);
        out += ',';
        out += r.classifier_id;
        std::snprintf(buf, sizeof(buf), ",%lld,%lld,%lld,",
                      static_cast<long long>(r.n_base),
                      static_cast<long long>(r.added_real),
                      static_cast<long long>(r.added_syn));
        out += buf;
        std::snprintf(buf, sizeof(buf), "%.17g", r.accuracy);
        // prefer the shortest representation that round-trips
        for (int prec = 1; prec < 17; ++prec) {
            char shorter[64];
            std::snprintf(shorter, sizeof(shorter), "%.*g", prec, r.accuracy);
            if (std::stod(shorter) == r.accuracy) {
                std::snprintf(buf, sizeof(buf), "%s", shorter);
                break;
            }
        }
        out += buf;
        out += '\n';
    }
    return out;
}

std::vector<std::string> fixture_names() {
    std::vector<std::string> names;
    names.reserve(detail::kFixtureCount);
    for (int i = 0; i < detail::kFixtureCount; ++i)
        names.push_back(detail::kFixtures[i].name);
    std::sort(names.begin(), names.end());
    return names;
}

const std::string& fixture_csv(const std::string& name) {
    static std::map<std::string, std::string> cache;
    auto it = cache.find(name);
    if (it != cache.end()) return it->second;
    for (int i = 0; i < detail::kFixtureCount; ++i) {
        if (name == detail::kFixtures[i].name)
            return cache.emplace(name, detail::kFixtures[i].csv).first->second;
    }
    throw DataError("unknown fixture '" + name + "'");
}

std::vector<ExperimentRecord> load_fixture(const std::string& name) {
    return parse_records(fixture_csv(name));
}

std::vector<SlicePoint> slice_for_base(const std::vector<ExperimentRecord>& records,
                                       const std::string& dataset_id, Mode mode,
                                       std::int64_t n_base) {
    if (mode == Mode::RealAug)
        throw DataError("slice_for_base: mode must be a synthetic-augmentation mode");
    std::map<std::pair<double, double>, std::pair<double, int>> acc;  // sum, count
    for (const auto& r : records) {
        if (r.dataset_id != dataset_id || r.n_base != n_base) continue;
        std::pair<double, double> key;
        if (r.mode == Mode::RealAug)
            key = {static_cast<double>(n_base + r.added_real), 0.0};
        else if (r.mode == mode)
            key = {static_cast<double>(n_base), static_cast<double>(r.added_syn)};
        else
            continue;
        auto& slot = acc[key];
        slot.first += r.accuracy;
        slot.second += 1;
    }
    std::vector<SlicePoint> points;
    points.reserve(acc.size());
    for (const auto& [key, slot] : acc)
        points.push_back({key.first, key.second, slot.first / slot.second});
    if (points.size() < 5)
        throw DataError("slice " + dataset_id + "/" + to_string(mode) + "/" +
                        std::to_string(n_base) + ": only " +
                        std::to_string(points.size()) +
                        " distinct points, need at least 5");
    return points;
}

}  // namespace augequiv
