#include "gmat/labels.hpp"

#include "gmat/error.hpp"

namespace gmat {

void NodeLabelMap::add(NodeId id, std::string label) {
    if (id < by_id_.size() && by_id_[id]) {
        throw PreconditionError("node " + std::to_string(id) + " already labelled '" +
                                *by_id_[id] + "'");
    }
    if (by_label_.contains(label)) {
        throw PreconditionError("label '" + label + "' assigned to more than one node");
    }
    if (id >= by_id_.size()) {
        by_id_.resize(std::size_t{id} + 1);
    }
    by_id_[id] = label;
    by_label_.emplace(std::move(label), id);
}

std::optional<std::string_view> NodeLabelMap::label(NodeId id) const {
    if (id >= by_id_.size() || !by_id_[id]) {
        return std::nullopt;
    }
    return std::string_view(*by_id_[id]);
}

std::optional<NodeId> NodeLabelMap::find(std::string_view label) const {
    const auto it = by_label_.find(label);
    if (it == by_label_.end()) {
        return std::nullopt;
    }
    return it->second;
}

NodeId NodeLabelMap::id(std::string_view label) const {
    if (const auto found = find(label)) {
        return *found;
    }
    throw PreconditionError("unknown node label '" + std::string(label) + "'");
}

std::string NodeLabelMap::display(NodeId id) const {
    if (const auto l = label(id)) {
        return std::string(*l);
    }
    return std::to_string(id);
}

} // namespace gmat
