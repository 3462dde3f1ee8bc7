#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace aid {

/// A single SKU's equally spaced sales history. Periods are the implicit
/// positions 1..n; calendar labels are the caller's concern.
struct DemandSeries {
    std::string id;
    std::vector<double> values;  // units sold per period, finite and >= 0
    int frequency = 52;          // periods per seasonal cycle

    std::size_t size() const { return values.size(); }
};

/// Occurrence/size/interval split of a series.
///
/// Intervals are the gaps between consecutive non-zero observations, so two
/// consecutive non-zero demands give an interval of one. The interval of the
/// first non-zero observation equals its 1-based period (a virtual demand at
/// period 0), which makes a leading zero-run show up as a long first
/// interval. Trailing zeroes produce no interval; their count is kept in
/// `trailing_zeros`.
struct Decomposition {
    std::vector<int> occurrence;               // o_t in {0,1}, length n
    std::vector<double> sizes;                 // z at the non-zero periods
    std::vector<std::size_t> size_period;      // 1-based source period per size
    std::vector<std::size_t> intervals;        // q_j, one per non-zero period
    std::vector<std::size_t> interval_period;  // 1-based closing period per interval
    std::size_t trailing_zeros = 0;
    bool degenerate = false;  // all-zero input: no sizes, no intervals
};

/// Throws std::invalid_argument when a series violates its invariants
/// (empty, non-finite or negative values).
void validate(const DemandSeries& series);

Decomposition decompose(const DemandSeries& series);

/// Rebuilds the value sequence of length n from a decomposition: sizes are
/// placed at their source periods, everything else is zero. Throws when a
/// size period lies outside 1..n.
std::vector<double> reassemble(const Decomposition& d, std::size_t n);

/// Deletes flagged observations and recompacts the remaining ones to
/// periods 1..m. Used when classifying, never for forecasting. Throws when
/// the flag vector has a different length or everything is flagged.
DemandSeries drop_flagged(const DemandSeries& series, const std::vector<int>& flags);

}  // namespace aid
