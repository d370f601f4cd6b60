#pragma once

#include <string>
#include <vector>

#include "prophet/classic.hpp"

namespace prophet {

struct CaseRow {
    std::string quantity;
    double value = 0.0;
    std::string reference;  // expected value or bound, human readable
    bool ok = false;
};

struct CaseReport {
    std::string id;
    std::string title;
    std::vector<CaseRow> rows;
    std::string verdict;  // e.g. "below-half", "holds"
    bool ok = false;      // all rows held
};

/// Registered counterexample / guarantee case ids.
std::vector<std::string> reproduce_case_ids();

/// Builds the registered instance, solves or evaluates it, and checks
/// every quantity against its expected value. Throws on an unknown id.
CaseReport reproduce_counterexample(const std::string& id);

/// Instances behind the registered cases (exposed for tests and the CLI).
Instance hem_counterexample_priors();
Instance dp3_counterexample_priors();
Instance median3_counterexample_priors();
Instance medianh_counterexample_priors();
Instance dph3_counterexample_priors();
Instance hemh3_counterexample_priors();

}  // namespace prophet
