#include "ioconf/action.hpp"

namespace ioconf {

Action parse_action(const std::string& token) {
    if (token.size() < 2)
        throw std::invalid_argument("action '" + token + "' needs a ? or ! marker");
    char marker = token.back();
    std::string name = token.substr(0, token.size() - 1);
    if (marker == '?') return input_action(name);
    if (marker == '!') return output_action(name);
    throw std::invalid_argument("action '" + token + "' needs a ? or ! marker");
}

void Alphabet::add_input(const std::string& name) {
    if (name == "delta")
        throw std::invalid_argument("namespace clash: 'delta' is reserved as the quiescence output");
    inputs_.insert(name);
}

void Alphabet::add_output(const std::string& name) {
    outputs_.insert(name);
}

std::vector<Action> Alphabet::inputs() const {
    std::vector<Action> out;
    for (const auto& n : inputs_) out.push_back(input_action(n));
    return out;
}

std::vector<Action> Alphabet::outputs() const {
    std::vector<Action> out;
    for (const auto& n : outputs_) out.push_back(output_action(n));
    return out;
}

std::vector<Action> Alphabet::all() const {
    std::vector<Action> out = inputs();
    for (auto& a : outputs()) out.push_back(a);
    return out;
}

} // namespace ioconf
