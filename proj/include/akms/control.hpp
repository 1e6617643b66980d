#ifndef AKMS_CONTROL_HPP
#define AKMS_CONTROL_HPP

#include "akms/error.hpp"

namespace akms {

/// Tolerance budget for the special-function kernel.
struct AccuracyBudget {
    double rel_tol = 1e-12;
    int max_terms = 500;

    void validate() const {
        if (!(rel_tol > 0.0)) throw domain_error("AccuracyBudget: rel_tol must be > 0");
        if (max_terms < 1) throw domain_error("AccuracyBudget: max_terms must be >= 1");
    }
};

/// Truncation policy for the distribution/metric series.
/// Terms are summed until the relative contribution drops below rel_tol
/// (minimum of 3 terms) or max_terms is reached. hard_cap bounds max_terms.
struct SeriesControl {
    int max_terms = 20;
    double rel_tol = 1e-4;
    int hard_cap = 200;

    void validate() const {
        if (max_terms < 1) throw domain_error("SeriesControl: max_terms must be >= 1");
        if (!(rel_tol > 0.0)) throw domain_error("SeriesControl: rel_tol must be > 0");
        if (max_terms > hard_cap) throw domain_error("SeriesControl: max_terms exceeds hard_cap");
    }
};

} // namespace akms

#endif
