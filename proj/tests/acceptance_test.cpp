// Acceptance suite: one line per criterion, exit status 0 only if all
// criteria hold. Tolerances are pinned in the case registry and the
// seeded suites this binary drives.

#include <cstdio>
#include <string>
#include <vector>

#include "prophet/cases.hpp"
#include "prophet/suites.hpp"

namespace {

int failures = 0;

void line(const std::string& id, bool ok, const std::string& detail) {
    std::printf("[%s] %s: %s\n", ok ? "PASS" : "FAIL", id.c_str(), detail.c_str());
    if (!ok) ++failures;
}

std::string case_detail(const prophet::CaseReport& rep) {
    std::string out = rep.title;
    int bad = 0;
    for (const auto& row : rep.rows)
        if (!row.ok) {
            out += " | breach: " + row.quantity + " = " + std::to_string(row.value) +
                   " (expected " + row.reference + ")";
            ++bad;
        }
    if (bad == 0) out += " | all " + std::to_string(rep.rows.size()) + " quantities in range";
    return out;
}

std::string suite_detail(const prophet::SuiteResult& s) {
    return s.description + " | " + std::to_string(s.failures) + " failures of " +
           std::to_string(s.total) + " (allowed " + std::to_string(s.allowed_failures) + ")";
}

bool run_case(const std::string& criterion, const std::string& id) {
    const prophet::CaseReport rep = prophet::reproduce_counterexample(id);
    line(criterion, rep.ok, id + ": " + case_detail(rep));
    return rep.ok;
}

bool run_suite_line(const std::string& criterion, const prophet::SuiteResult& s) {
    line(criterion, s.ok(), s.id + ": " + suite_detail(s));
    return s.ok();
}

}  // namespace

int main() {
    using namespace prophet;

    run_case("criterion 1", "hem-2box");
    run_case("criterion 2", "dp-3box");
    run_case("criterion 3", "median-3box");
    run_case("criterion 4", "medianh-2box");

    {
        const CaseReport a = reproduce_counterexample("dph-3box");
        const CaseReport b = reproduce_counterexample("hemh-3box");
        line("criterion 5", a.ok && b.ok,
             "dph-3box: " + case_detail(a) + " || hemh-3box: " + case_detail(b));
    }

    {
        const SuiteResult hem = suite_positive_two_box(true, 500);
        const SuiteResult dp = suite_positive_two_box(false, 500);
        line("criterion 6", hem.ok() && dp.ok(),
             suite_detail(hem) + " || " + suite_detail(dp));
    }

    run_suite_line("criterion 7", suite_kw_threshold(1000));
    run_case("criterion 8", "general-tightness");
    run_suite_line("criterion 9", suite_iid_fixed_point(500));

    {
        const SuiteResult cor = suite_iid_deviation(500);
        const CaseReport appc = reproduce_counterexample("iid-percentage");
        line("criterion 10", cor.ok() && appc.ok,
             suite_detail(cor) + " || iid-percentage: " + case_detail(appc));
    }

    run_case("criterion 11", "iid-tightness");
    run_case("criterion 12", "logconcave");

    {
        const SuiteResult mc = suite_mc_agreement(200, 100000);
        const SuiteResult br = suite_br_oracle(100);
        line("criterion 13", mc.ok() && br.ok(), suite_detail(mc) + " || " + suite_detail(br));
    }

    run_suite_line("criterion 14", suite_hem_fixpoint(200));

    std::printf("%d of 14 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
