// acceptance.hpp - The acceptance suite shared by the test binary and the `check` subcommand

#pragma once

#include <functional>
#include <string>
#include <vector>

namespace cspin {

struct CriterionResult {
    int id{0};
    std::string name;
    bool passed{false};
    std::string detail;  // achieved values and thresholds
    double seconds{0.0};
};

inline constexpr int acceptance_criterion_count = 11;

std::string criterion_name(int id);
CriterionResult run_criterion(int id);

// Runs the selected criteria (all when `ids` is empty), invoking `on_result` after each one.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids = {},
                                            const std::function<void(const CriterionResult&)>& on_result = {});

} // namespace cspin
