#include <doctest.h>

#include <sstream>

#include "augequiv/dataset.hpp"
#include "augequiv/error.hpp"

using namespace augequiv;

TEST_CASE("parser accepts any column order") {
    std::string csv =
        "accuracy,dataset,classifier,n_base,mode,added_syn,added_real\n"
        "74.20,cifar10,resnet110,5000,closed_set,0,0\n"
        "81.51,cifar10,resnet110,5000,closed_set,5000,0\n";
    auto records = parse_records(csv);
    REQUIRE(records.size() == 2);
    CHECK(records[0].dataset_id == "cifar10");
    CHECK(records[0].mode == Mode::ClosedSet);
    CHECK(records[0].n_base == 5000);
    CHECK(records[1].added_syn == 5000);
    CHECK(records[1].accuracy == doctest::Approx(81.51));
}

TEST_CASE("serialization round-trips exactly") {
    std::vector<ExperimentRecord> records = {
        {"cifar10", Mode::RealAug, "resnet110", 500, 1000, 0, 53.17},
        {"bloodmnist", Mode::OpenSet, "resnet110", 1200, 0, 3600, 88.0},
        {"x", Mode::ClosedSet, "clip", 1, 2, 3, 0.123456789},
    };
    CHECK(parse_records(serialize_records(records)) == records);
}

TEST_CASE("parser names the offending row and column") {
    std::string header = "dataset,mode,classifier,n_base,added_real,added_syn,accuracy\n";
    CHECK_THROWS_WITH_AS(parse_records(header + "cifar10,weird,r,1,0,0,50\n"),
                         doctest::Contains("row 2, column 'mode'"), ParseError);
    CHECK_THROWS_WITH_AS(parse_records(header + "cifar10,real_aug,r,1.5,0,0,50\n"),
                         doctest::Contains("column 'n_base'"), ParseError);
    CHECK_THROWS_WITH_AS(parse_records(header + "cifar10,real_aug,r,1,0,0,150\n"),
                         doctest::Contains("column 'accuracy'"), ParseError);
    CHECK_THROWS_WITH_AS(parse_records(header + "cifar10,real_aug,r,1,0,0\n"),
                         doctest::Contains("row 2"), ParseError);
    CHECK_THROWS_WITH_AS(parse_records(std::string("dataset,mode\n")),
                         doctest::Contains("missing header column"), ParseError);
    CHECK_THROWS_AS(parse_records(std::string()), ParseError);
}

TEST_CASE("bundled fixtures parse with the published row counts") {
    auto names = fixture_names();
    REQUIRE(names.size() == 13);
    CHECK(load_fixture("cifar10_real").size() == 12);
    CHECK(load_fixture("cifar10_edm").size() == 24);
    CHECK(load_fixture("cifar10_cifake").size() == 21);
    CHECK(load_fixture("bloodmnist_real").size() == 7);
    CHECK(load_fixture("bloodmnist_edm").size() == 18);
    CHECK(load_fixture("imagenet100_real").size() == 11);
    CHECK(load_fixture("imagenet100_dit").size() == 16);
    CHECK_THROWS_AS(load_fixture("nonesuch"), DataError);
}

TEST_CASE("slice assembly merges real and synthetic axes") {
    auto records = load_fixture("cifar10_real");
    auto syn = load_fixture("cifar10_edm");
    records.insert(records.end(), syn.begin(), syn.end());
    auto slice = slice_for_base(records, "cifar10", Mode::ClosedSet, 5000);
    REQUIRE(slice.size() == 9);  // baseline + 3 real-axis + 5 syn-axis points
    // baseline appears in both source tables and must deduplicate
    CHECK(slice.front() == SlicePoint{5000.0, 0.0, 74.20});
    bool found_real = false, found_syn = false;
    for (const auto& p : slice) {
        if (p.n_real == 15000.0 && p.n_syn == 0.0) {
            CHECK(p.accuracy == doctest::Approx(87.29));
            found_real = true;
        }
        if (p.n_real == 5000.0 && p.n_syn == 10000.0) {
            CHECK(p.accuracy == doctest::Approx(83.66));
            found_syn = true;
        }
    }
    CHECK(found_real);
    CHECK(found_syn);
}

TEST_CASE("slice assembly averages replicate measurements") {
    std::vector<ExperimentRecord> records = {
        {"d", Mode::RealAug, "r", 100, 0, 0, 50.0},
        {"d", Mode::RealAug, "r", 100, 100, 0, 60.0},
        {"d", Mode::RealAug, "r", 100, 200, 0, 62.0},
        {"d", Mode::ClosedSet, "r", 100, 0, 100, 54.0},
        {"d", Mode::ClosedSet, "r", 100, 0, 100, 56.0},  // replicate
        {"d", Mode::ClosedSet, "r", 100, 0, 200, 58.0},
    };
    auto slice = slice_for_base(records, "d", Mode::ClosedSet, 100);
    REQUIRE(slice.size() == 5);
    for (const auto& p : slice)
        if (p.n_syn == 100.0) CHECK(p.accuracy == doctest::Approx(55.0));
}

TEST_CASE("slices below five points are rejected") {
    std::vector<ExperimentRecord> records = {
        {"d", Mode::RealAug, "r", 100, 0, 0, 50.0},
        {"d", Mode::ClosedSet, "r", 100, 0, 100, 54.0},
    };
    CHECK_THROWS_WITH_AS(slice_for_base(records, "d", Mode::ClosedSet, 100),
                         doctest::Contains("at least 5"), DataError);
    // other-mode rows never leak into the slice
    CHECK_THROWS_AS(slice_for_base(records, "d", Mode::OpenSet, 100), DataError);
}
