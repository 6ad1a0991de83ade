#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace armoo {

enum class ErrorCode {
    // input errors
    EmptyDataset,
    MalformedCell,
    MalformedRow,
    EmptyTransaction,
    DuplicateItem,
    InvalidDensity,
    EmptyItemSet,
    InvalidItemIndex,
    MalformedEncoding,
    GeneLengthMismatch,
    InvalidParameter,
    InvalidDivisions,
    DegenerateWeight,
    EmptySolutionSet,
    EmptyReferenceFront,
    PointBelowReference,
    MissingReferenceFront,
    MalformedFrontFile,
    MalformedConfig,
    IoFailure,
    // rule semantics
    UndefinedConfidence,
    InvalidRule,
    NaNObjective,
    SelectionOverdraw,
    NeighborhoodOverdraw,
    // infeasibility
    TooFewItems,
    SeedingImpossible,
    RepairExhausted,
    PopulationTooLargeForRuleSpace,
    InstanceTooLarge,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Process exit code for an error: 2 for bad input, 3 for an infeasible
/// instance, 1 for anything that indicates a bug.
int exit_code_for(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail);

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace armoo
