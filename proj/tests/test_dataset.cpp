#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "aid/dataset.hpp"

using namespace aid;

namespace {

struct TempCsv {
    std::string path;
    explicit TempCsv(const std::string& content) {
        path = std::string("/tmp/aid_test_") + std::to_string(counter++) + ".csv";
        std::ofstream out(path);
        out << content;
    }
    ~TempCsv() { std::remove(path.c_str()); }
    static int counter;
};
int TempCsv::counter = 0;

}  // namespace

TEST_CASE("parses a small dataset") {
    TempCsv file(
        "series_id,period,value\n"
        "A,1,2.5\n"
        "A,2,0\n"
        "A,3,4\n"
        "B,1,1\n"
        "B,2,1\n");
    const auto ds = parse_dataset_csv(file.path, 52);
    REQUIRE(ds.records.size() == 2);
    CHECK(ds.records[0].series.id == "A");
    CHECK(ds.records[0].series.values == std::vector<double>{2.5, 0.0, 4.0});
    CHECK(ds.records[1].series.values == std::vector<double>{1.0, 1.0});
    CHECK(ds.records[0].series.frequency == 52);
}

TEST_CASE("periods may start anywhere but must be contiguous") {
    TempCsv file(
        "series_id,period,value\n"
        "A,5,1\n"
        "A,6,2\n"
        "A,7,3\n");
    const auto ds = parse_dataset_csv(file.path);
    CHECK(ds.records[0].series.values == std::vector<double>{1, 2, 3});

    TempCsv gap(
        "series_id,period,value\n"
        "A,1,1\n"
        "A,3,2\n");
    CHECK_THROWS_WITH_AS(static_cast<void>(parse_dataset_csv(gap.path)),
                         doctest::Contains("gap in periods for series 'A'"),
                         std::runtime_error);
}

TEST_CASE("rejects negatives, duplicates and malformed rows") {
    TempCsv negative(
        "series_id,period,value\n"
        "A,1,1\n"
        "A,2,-1\n");
    CHECK_THROWS_WITH_AS(static_cast<void>(parse_dataset_csv(negative.path)),
                         doctest::Contains("line 3"), std::runtime_error);

    TempCsv duplicate(
        "series_id,period,value\n"
        "A,3,1\n"
        "A,3,2\n");
    CHECK_THROWS_WITH_AS(static_cast<void>(parse_dataset_csv(duplicate.path)),
                         doctest::Contains("duplicate (A,3)"), std::runtime_error);

    TempCsv malformed(
        "series_id,period,value\n"
        "A,1,abc\n");
    CHECK_THROWS_WITH_AS(static_cast<void>(parse_dataset_csv(malformed.path)),
                         doctest::Contains("line 2"), std::runtime_error);

    TempCsv bad_header("id,period,value\nA,1,1\n");
    CHECK_THROWS(static_cast<void>(parse_dataset_csv(bad_header.path)));
}

TEST_CASE("exogenous columns pass through") {
    TempCsv file(
        "series_id,period,value,promo,holiday\n"
        "A,1,3,0,1\n"
        "A,2,4,1,0\n");
    const auto ds = parse_dataset_csv(file.path);
    REQUIRE(ds.exog_names == std::vector<std::string>{"promo", "holiday"});
    CHECK(ds.records[0].exog[0] == std::vector<double>{0.0, 1.0});
    CHECK(ds.records[0].exog[1] == std::vector<double>{1.0, 0.0});
}

TEST_CASE("write and re-read round trip") {
    TempCsv file(
        "series_id,period,value,promo\n"
        "A,1,3,0\n"
        "A,2,4.25,1\n"
        "B,1,0,0\n"
        "B,2,9,1\n");
    const auto ds = parse_dataset_csv(file.path);
    const std::string out_path = "/tmp/aid_test_roundtrip.csv";
    write_dataset_csv(out_path, ds);
    const auto again = parse_dataset_csv(out_path);
    std::remove(out_path.c_str());
    REQUIRE(again.records.size() == ds.records.size());
    for (std::size_t s = 0; s < ds.records.size(); ++s) {
        CHECK(again.records[s].series.id == ds.records[s].series.id);
        CHECK(again.records[s].series.values == ds.records[s].series.values);
        CHECK(again.records[s].exog == ds.records[s].exog);
    }
}

TEST_CASE("comment lines are skipped") {
    TempCsv file(
        "# schema: aid-dataset v1\n"
        "series_id,period,value\n"
        "# a comment\n"
        "A,1,1\n"
        "A,2,2\n");
    const auto ds = parse_dataset_csv(file.path);
    CHECK(ds.records[0].series.values == std::vector<double>{1.0, 2.0});
}
