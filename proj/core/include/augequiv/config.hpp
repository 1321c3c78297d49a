#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "augequiv/dataset.hpp"

namespace augequiv {

/// Plain `key = value` study config. Recognized keys: dataset, n_total,
/// epsilon, cap, criterion, loss, and repeated `grid = n_base: r1,r2,...`
/// lines. Blank lines and `#` comments are skipped. Throws ConfigError on an
/// unknown key, non-numeric value, or duplicate grid n_base; the result is
/// validated before return.
StudyConfig load_config(std::istream& in);
StudyConfig load_config_file(const std::string& path);

/// Canonical text form; load_config(serialize_config(c)) round-trips.
std::string serialize_config(const StudyConfig& config);

/// Bundled study presets: cifar10, imagenet100, bloodmnist (the ViT study
/// reuses the imagenet100 preset with the *_vit fixture group). Throws
/// ConfigError on an unknown name.
StudyConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

/// Fixture groups loadable with one name: each preset name maps to the
/// fixture files of that study (cifar10 -> real + closed + open tables, ...),
/// plus imagenet100_vit; a single fixture file name is also accepted.
/// Throws DataError on an unknown name.
std::vector<ExperimentRecord> load_fixture_group(const std::string& name);
std::vector<std::string> fixture_group_names();

}  // namespace augequiv
