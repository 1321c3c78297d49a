#include "augequiv/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "augequiv/error.hpp"

namespace augequiv {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, int line, const std::string& key) {
    std::size_t pos = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (text.empty() || pos != text.size())
        throw ConfigError("config line " + std::to_string(line) + ": key '" + key +
                          "' needs a numeric value, got '" + text + "'");
    return value;
}

std::int64_t parse_integer(const std::string& text, int line, const std::string& key) {
    double v = parse_number(text, line, key);
    auto i = static_cast<std::int64_t>(v);
    if (static_cast<double>(i) != v)
        throw ConfigError("config line " + std::to_string(line) + ": key '" + key +
                          "' needs an integer value, got '" + text + "'");
    return i;
}

}  // namespace

StudyConfig load_config(std::istream& in) {
    StudyConfig config;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string text = trim(line);
        if (text.empty() || text[0] == '#') continue;
        std::size_t eq = text.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected 'key = value', got '" + text + "'");
        std::string key = trim(text.substr(0, eq));
        std::string value = trim(text.substr(eq + 1));
        if (key == "dataset") {
            config.dataset_id = value;
        } else if (key == "n_total") {
            config.n_total = parse_integer(value, line_no, key);
        } else if (key == "epsilon") {
            config.epsilon = parse_number(value, line_no, key);
        } else if (key == "cap") {
            config.ratio_cap = parse_number(value, line_no, key);
        } else if (key == "criterion") {
            try {
                config.criterion = criterion_from_string(value);
            } catch (const ParseError& e) {
                throw ConfigError("config line " + std::to_string(line_no) + ": " +
                                  e.what());
            }
        } else if (key == "loss") {
            try {
                config.loss = loss_from_string(value);
            } catch (const ParseError& e) {
                throw ConfigError("config line " + std::to_string(line_no) + ": " +
                                  e.what());
            }
        } else if (key == "grid") {
            std::size_t colon = value.find(':');
            if (colon == std::string::npos)
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": grid entry must look like 'n_base: r1,r2,...'");
            std::int64_t n_base =
                parse_integer(trim(value.substr(0, colon)), line_no, "grid n_base");
            for (const auto& [existing, _] : config.tuple_grid)
                if (existing == n_base)
                    throw ConfigError("config line " + std::to_string(line_no) +
                                      ": duplicate grid n_base " +
                                      std::to_string(n_base));
            std::vector<double> ratios;
            std::stringstream rs(value.substr(colon + 1));
            std::string item;
            while (std::getline(rs, item, ','))
                ratios.push_back(parse_number(trim(item), line_no, "grid ratio"));
            if (ratios.empty())
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": grid entry has no ratios");
            config.tuple_grid.emplace_back(n_base, std::move(ratios));
        } else {
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": unknown key '" + key + "'");
        }
    }
    std::sort(config.tuple_grid.begin(), config.tuple_grid.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    config.validate();
    return config;
}

StudyConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read " + path);
    return load_config(in);
}

std::string serialize_config(const StudyConfig& config) {
    std::string out;
    char buf[160];
    out += "dataset = " + config.dataset_id + "\n";
    out += "n_total = " + std::to_string(config.n_total) + "\n";
    std::snprintf(buf, sizeof(buf), "epsilon = %.10g\ncap = %.10g\n", config.epsilon,
                  config.ratio_cap);
    out += buf;
    out += "criterion = " + to_string(config.criterion) + "\n";
    out += "loss = " + to_string(config.loss) + "\n";
    for (const auto& [n_base, ratios] : config.tuple_grid) {
        out += "grid = " + std::to_string(n_base) + ":";
        for (std::size_t i = 0; i < ratios.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%s%.10g", i ? "," : " ", ratios[i]);
            out += buf;
        }
        out += "\n";
    }
    return out;
}

namespace {

StudyConfig make_preset(const std::string& dataset_id, std::int64_t n_total,
                        std::vector<std::pair<std::int64_t, std::vector<double>>> grid) {
    StudyConfig c;
    c.dataset_id = dataset_id;
    c.n_total = n_total;
    c.tuple_grid = std::move(grid);
    c.validate();
    return c;
}

}  // namespace

StudyConfig preset_config(const std::string& name) {
    const std::vector<double> r123 = {1.0, 2.0, 3.0};
    if (name == "cifar10")
        return make_preset("cifar10", 50000, {{500, r123}, {5000, r123}, {25000, r123}});
    if (name == "imagenet100" || name == "imagenet100_vit") {
        const std::vector<double> r = {0.2, 0.4, 0.6, 0.8, 1.0, 2.0, 3.0, 4.0};
        return make_preset("imagenet100", 130000, {{6500, r}, {26000, r}});
    }
    if (name == "bloodmnist")
        return make_preset("bloodmnist", 12000, {{1200, r123}, {6000, r123}});
    throw ConfigError("unknown preset '" + name + "' (expected cifar10, imagenet100, "
                      "imagenet100_vit or bloodmnist)");
}

std::vector<std::string> preset_names() {
    return {"bloodmnist", "cifar10", "imagenet100", "imagenet100_vit"};
}

namespace {

const std::vector<std::pair<std::string, std::vector<std::string>>>& fixture_groups() {
    static const std::vector<std::pair<std::string, std::vector<std::string>>> groups = {
        {"bloodmnist", {"bloodmnist_real", "bloodmnist_edm"}},
        {"cifar10", {"cifar10_real", "cifar10_edm", "cifar10_cifake"}},
        {"imagenet100", {"imagenet100_real", "imagenet100_dit", "imagenet100_sd3"}},
        {"imagenet100_vit",
         {"imagenet100_real_vit", "imagenet100_dit_vit", "imagenet100_sd3_vit"}},
    };
    return groups;
}

}  // namespace

std::vector<ExperimentRecord> load_fixture_group(const std::string& name) {
    for (const auto& [group, files] : fixture_groups()) {
        if (group != name) continue;
        std::vector<ExperimentRecord> records;
        for (const auto& file : files) {
            auto part = load_fixture(file);
            records.insert(records.end(), part.begin(), part.end());
        }
        return records;
    }
    return load_fixture(name);  // throws DataError on unknown name
}

std::vector<std::string> fixture_group_names() {
    std::vector<std::string> names;
    for (const auto& [group, _] : fixture_groups()) names.push_back(group);
    return names;
}

}  // namespace augequiv
