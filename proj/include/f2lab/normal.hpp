#pragma once

namespace f2lab {

/// Quantile of the standard normal distribution (Wichura's AS 241
/// PPND16 rational approximation; absolute error well below 1e-9 on
/// (0, 1)). Throws std::invalid_argument outside (0, 1).
double inverse_normal_cdf(double prob);

}  // namespace f2lab
