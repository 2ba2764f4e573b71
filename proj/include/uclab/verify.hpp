#ifndef UCLAB_VERIFY_HPP
#define UCLAB_VERIFY_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace uclab {

struct CheckLine {
    std::string label;
    double measured = 0.0;
    double bound = 0.0;
    bool upper = true; // measured <= bound when true, measured >= bound otherwise

    double margin() const { return upper ? bound - measured : measured - bound; }
    bool passed() const { return margin() >= 0.0; }
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    // The check with the smallest relative margin.
    double measured = 0.0;
    double bound = 0.0;
    double margin = 0.0;
    std::vector<CheckLine> checks;
    std::string error;
    double seconds = 0.0;
};

struct VerifyContext {
    std::uint64_t seed = 1;
    unsigned threads = 0;
};

struct Criterion {
    int id;
    std::string name;
    std::string summary;
    std::function<std::vector<CheckLine>(const VerifyContext &)> run;
};

const std::vector<Criterion> &criteria();
const Criterion *find_criterion(const std::string &name_or_id);

CriterionResult run_criterion(const Criterion &criterion, const VerifyContext &context);
// Runs every criterion, or only the named one when `only` is nonempty (MissingEntry if unknown).
std::vector<CriterionResult> run_criteria(const VerifyContext &context, const std::string &only = {});

std::string format_result(const CriterionResult &result);

} // namespace uclab

#endif
