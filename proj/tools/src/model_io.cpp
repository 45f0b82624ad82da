#include "rsb/cli/model_io.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace rsb::cli {

using nlohmann::json;

namespace {

std::vector<std::string> read_labels(const json& doc, const char* field) {
    if (!doc.contains(field)) throw ParseError(std::string("missing field '") + field + "'");
    const json& arr = doc.at(field);
    if (!arr.is_array() || arr.empty())
        throw ParseError(std::string("field '") + field + "' must be a non-empty array");
    std::vector<std::string> labels;
    std::set<std::string> seen;
    for (const json& item : arr) {
        if (!item.is_string())
            throw ParseError(std::string("field '") + field + "' must contain strings");
        const std::string label = item.get<std::string>();
        if (!seen.insert(label).second)
            throw ParseError(std::string("duplicate label '") + label + "' in '" + field + "'");
        labels.push_back(label);
    }
    return labels;
}

Matrix read_matrix(const json& value, std::size_t rows, std::size_t cols, const std::string& field) {
    if (!value.is_array() || value.size() != rows) {
        throw ParseError("field '" + field + "' must have " + std::to_string(rows) + " rows");
    }
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const json& row = value[r];
        if (!row.is_array() || row.size() != cols) {
            throw ParseError("field '" + field + "' row " + std::to_string(r) + " must have " +
                             std::to_string(cols) + " entries");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            if (!row[c].is_number())
                throw ParseError("field '" + field + "' has a non-numeric entry");
            m(r, c) = row[c].get<double>();
        }
    }
    return m;
}

}  // namespace

std::size_t LabeledModel::state_index(const std::string& label) const {
    for (std::size_t i = 0; i < state_labels.size(); ++i)
        if (state_labels[i] == label) return i;
    throw ParseError("unknown state label '" + label + "'");
}

std::size_t LabeledModel::action_index(const std::string& label) const {
    for (std::size_t i = 0; i < action_labels.size(); ++i)
        if (action_labels[i] == label) return i;
    throw ParseError("unknown action label '" + label + "'");
}

std::string LabeledModel::format_rule(const DecisionRule& rule) const {
    std::string out;
    for (std::size_t x = 0; x < rule.size(); ++x) {
        if (x > 0) out += ' ';
        out += action_labels.at(rule[x]);
    }
    return out;
}

DecisionRule LabeledModel::parse_rule(const std::string& text) const {
    std::vector<std::size_t> actions;
    std::stringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) actions.push_back(action_index(token));
    if (actions.size() != state_labels.size()) {
        throw ParseError("rule '" + text + "' names " + std::to_string(actions.size()) +
                         " actions, model has " + std::to_string(state_labels.size()) + " states");
    }
    return DecisionRule(std::move(actions));
}

LabeledModel parse_model_file(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed model document: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("model document must be a JSON object");

    LabeledModel out;
    out.state_labels = read_labels(doc, "states");
    out.action_labels = read_labels(doc, "actions");
    const std::size_t n = out.state_labels.size();
    const std::size_t k = out.action_labels.size();

    if (!doc.contains("direction") || !doc["direction"].is_string())
        throw ParseError("missing field 'direction'");
    const std::string dir = doc["direction"].get<std::string>();
    Direction direction;
    if (dir == "max") {
        direction = Direction::maximize;
    } else if (dir == "min") {
        direction = Direction::minimize;
    } else {
        throw ParseError("field 'direction' must be \"max\" or \"min\", got \"" + dir + "\"");
    }

    if (!doc.contains("transitions") || !doc["transitions"].is_object())
        throw ParseError("field 'transitions' must be an object keyed by action label");
    const json& trans = doc["transitions"];
    if (trans.size() != k)
        throw ParseError("field 'transitions' must have one matrix per action");
    std::vector<Matrix> kernels;
    for (const auto& label : out.action_labels) {
        if (!trans.contains(label))
            throw ParseError("field 'transitions' has no matrix for action '" + label + "'");
        kernels.push_back(read_matrix(trans[label], n, n, "transitions." + label));
    }

    if (!doc.contains("stage")) throw ParseError("missing field 'stage'");
    Matrix stage = read_matrix(doc["stage"], n, k, "stage");

    out.model = MdpModel(std::move(kernels), std::move(stage), direction);
    return out;
}

LabeledModel load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open model file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_model_file(buf.str());
}

std::string format_model_file(const LabeledModel& m) {
    const MdpModel& model = m.model;
    json doc = json::object();
    doc["states"] = m.state_labels;
    doc["actions"] = m.action_labels;
    doc["direction"] = model.direction() == Direction::maximize ? "max" : "min";
    json trans = json::object();
    for (std::size_t a = 0; a < model.action_count(); ++a) {
        json rows = json::array();
        for (std::size_t x = 0; x < model.state_count(); ++x) {
            auto r = model.transition(x, a);
            rows.push_back(std::vector<double>(r.begin(), r.end()));
        }
        trans[m.action_labels[a]] = rows;
    }
    doc["transitions"] = trans;
    json stage = json::array();
    for (std::size_t x = 0; x < model.state_count(); ++x) {
        auto r = model.stage().row(x);
        stage.push_back(std::vector<double>(r.begin(), r.end()));
    }
    doc["stage"] = stage;
    return doc.dump(2) + "\n";
}

void save_model_file(const LabeledModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << format_model_file(model);
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

LabeledModel with_default_labels(MdpModel model) {
    LabeledModel out;
    for (std::size_t x = 0; x < model.state_count(); ++x)
        out.state_labels.push_back(std::to_string(x + 1));
    for (std::size_t a = 0; a < model.action_count(); ++a)
        out.action_labels.push_back(std::to_string(a));
    out.model = std::move(model);
    return out;
}

}  // namespace rsb::cli
