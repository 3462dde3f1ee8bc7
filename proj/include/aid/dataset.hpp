#pragma once

#include <string>
#include <vector>

#include "aid/series.hpp"

namespace aid {

struct SeriesRecord {
    DemandSeries series;
    std::vector<std::vector<double>> exog;  // [column][period], aligned with values
};

/// A collection of series sharing one frequency, sorted by id.
struct Dataset {
    std::vector<SeriesRecord> records;
    std::vector<std::string> exog_names;
    int frequency = 52;
};

/**
 * Reads the CSV schema `series_id,period,value[,exog...]`. Periods must be
 * contiguous integers per series (any starting point; they are recompacted
 * to 1..n), values non-negative. Malformed rows, duplicates and gaps are
 * rejected with the offending line or series named. Lines starting with '#'
 * are comments.
 */
Dataset parse_dataset_csv(const std::string& path, int frequency = 52);

/// Writes the same schema back (period recompacted to 1..n).
void write_dataset_csv(const std::string& path, const Dataset& dataset);

}  // namespace aid
