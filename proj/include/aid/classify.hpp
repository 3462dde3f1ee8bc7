#pragma once

#include <span>
#include <vector>

#include "aid/models.hpp"
#include "aid/series.hpp"
#include "aid/smoothing.hpp"
#include "aid/stockout.hpp"

namespace aid {

enum class TopClass { regular, smooth_intermittent, lumpy_intermittent };
enum class Valueness { count, fractional };
enum class SbcQuadrant { smooth, intermittent, erratic, lumpy };

const char* to_string(TopClass c);
const char* to_string(Valueness v);
const char* to_string(SbcQuadrant q);

/// Index 0..5 of a (top, valueness) pair; ordering matches the six model
/// kinds: regular count/fractional, smooth count/fractional, lumpy
/// count/fractional.
int class_index(TopClass top, Valueness valueness);

struct DemandClass {
    TopClass top = TopClass::regular;
    Valueness valueness = Valueness::fractional;
    bool binary_special = false;   // zeroes plus one repeated value
    bool values_integer = false;   // all remaining values integer-valued
    std::vector<FittedModel> evidence;  // the candidates of the branch taken
    StockoutReport stockouts;
};

struct SBCClass {
    double adi = 0.0;
    double cv2 = 0.0;
    SbcQuadrant quadrant = SbcQuadrant::smooth;
};

/// True iff every value is within 1e-9 of an integer.
bool is_count(std::span<const double> values);

/**
 * The full two-stage classification: detect stockouts at the given level and
 * drop the flagged observations, split regular/intermittent on the remaining
 * zeroes, then pick the finer category by AIC among the candidate models of
 * the branch. Series shorter than 10 observations are rejected.
 */
DemandClass classify(const DemandSeries& series, double nu, const SmoothConfig& config = {});

/// Reference quadrant classification from the mean demand interval and the
/// squared coefficient of variation of the sizes (cutoffs 1.32 / 0.49).
/// Never looks at stockout flags.
SBCClass sbc_classify(const DemandSeries& series);

}  // namespace aid
