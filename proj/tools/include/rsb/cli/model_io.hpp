#pragma once

#include "rsb/model.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace rsb::cli {

/// Raised on malformed model documents; the message names the offending field.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A model together with the labels used in its file.
struct LabeledModel {
    MdpModel model;
    std::vector<std::string> state_labels;
    std::vector<std::string> action_labels;

    std::size_t state_index(const std::string& label) const;
    std::size_t action_index(const std::string& label) const;
    /// Action labels of `rule`, space separated.
    std::string format_rule(const DecisionRule& rule) const;
    /// Parses "a,b,c" (one action label per state, file order).
    DecisionRule parse_rule(const std::string& text) const;
};

/// Parses the JSON model format:
///
///   {
///     "states": ["1", "2", "3"],
///     "actions": ["0", "1"],
///     "direction": "min",
///     "transitions": { "0": [[...], ...], "1": [[...], ...] },
///     "stage": [[c(1,0), c(1,1)], ...]
///   }
///
/// Labels map to dense indices in file order. Stochasticity is not checked.
LabeledModel parse_model_file(const std::string& text);

LabeledModel load_model_file(const std::string& path);

/// Inverse of parse_model_file; reals are written with round-trip precision.
std::string format_model_file(const LabeledModel& model);

void save_model_file(const LabeledModel& model, const std::string& path);

/// Labels "1".."n" for states and "0".."k-1" for actions.
LabeledModel with_default_labels(MdpModel model);

}  // namespace rsb::cli
