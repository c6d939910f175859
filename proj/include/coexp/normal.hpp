#pragma once

namespace coexp {

// Standard normal CDF.
double norm_cdf(double x);

// Standard normal quantile (inverse CDF), Wichura's AS241 double-precision
// rational approximation. Throws std::domain_error for p outside (0,1).
double norm_ppf(double p);

}
