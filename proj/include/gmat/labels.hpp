#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gmat/graph.hpp"

namespace gmat {

/// Bijection between dense node ids and UTF-8 labels. Not every node needs a
/// label.
class NodeLabelMap {
public:
    /// Throws `PreconditionError` if `id` already has a label or `label` is
    /// already taken.
    void add(NodeId id, std::string label);

    std::optional<std::string_view> label(NodeId id) const;
    std::optional<NodeId> find(std::string_view label) const;

    /// Like `find`, but throws `PreconditionError` for an unknown label.
    NodeId id(std::string_view label) const;

    /// The label, or the decimal id when the node has none.
    std::string display(NodeId id) const;

    std::size_t size() const noexcept { return by_label_.size(); }
    bool empty() const noexcept { return by_label_.empty(); }

    /// One past the largest labelled id, 0 when empty.
    std::size_t id_bound() const noexcept { return by_id_.size(); }

private:
    struct Hash {
        using is_transparent = void;
        std::size_t operator()(std::string_view s) const noexcept {
            return std::hash<std::string_view>{}(s);
        }
    };

    std::vector<std::optional<std::string>> by_id_;
    std::unordered_map<std::string, NodeId, Hash, std::equal_to<>> by_label_;
};

} // namespace gmat
