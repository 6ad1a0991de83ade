#include "armoo/error.hpp"

namespace armoo {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::MalformedCell: return "MalformedCell";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::EmptyTransaction: return "EmptyTransaction";
    case ErrorCode::DuplicateItem: return "DuplicateItem";
    case ErrorCode::InvalidDensity: return "InvalidDensity";
    case ErrorCode::EmptyItemSet: return "EmptyItemSet";
    case ErrorCode::InvalidItemIndex: return "InvalidItemIndex";
    case ErrorCode::MalformedEncoding: return "MalformedEncoding";
    case ErrorCode::GeneLengthMismatch: return "GeneLengthMismatch";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::InvalidDivisions: return "InvalidDivisions";
    case ErrorCode::DegenerateWeight: return "DegenerateWeight";
    case ErrorCode::EmptySolutionSet: return "EmptySolutionSet";
    case ErrorCode::EmptyReferenceFront: return "EmptyReferenceFront";
    case ErrorCode::PointBelowReference: return "PointBelowReference";
    case ErrorCode::MissingReferenceFront: return "MissingReferenceFront";
    case ErrorCode::MalformedFrontFile: return "MalformedFrontFile";
    case ErrorCode::MalformedConfig: return "MalformedConfig";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::UndefinedConfidence: return "UndefinedConfidence";
    case ErrorCode::InvalidRule: return "InvalidRule";
    case ErrorCode::NaNObjective: return "NaNObjective";
    case ErrorCode::SelectionOverdraw: return "SelectionOverdraw";
    case ErrorCode::NeighborhoodOverdraw: return "NeighborhoodOverdraw";
    case ErrorCode::TooFewItems: return "TooFewItems";
    case ErrorCode::SeedingImpossible: return "SeedingImpossible";
    case ErrorCode::RepairExhausted: return "RepairExhausted";
    case ErrorCode::PopulationTooLargeForRuleSpace: return "PopulationTooLargeForRuleSpace";
    case ErrorCode::InstanceTooLarge: return "InstanceTooLarge";
    }
    return "Unknown";
}

int exit_code_for(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::TooFewItems:
    case ErrorCode::SeedingImpossible:
    case ErrorCode::RepairExhausted:
    case ErrorCode::PopulationTooLargeForRuleSpace:
    case ErrorCode::InstanceTooLarge:
        return 3;
    case ErrorCode::UndefinedConfidence:
    case ErrorCode::InvalidRule:
    case ErrorCode::NaNObjective:
    case ErrorCode::SelectionOverdraw:
        return 1;
    default:
        return 2;
    }
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + (detail.empty() ? "" : ": " + detail))
    , code_(code)
{
}

} // namespace armoo
