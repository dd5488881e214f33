#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace tpbd {

// Strictly increasing positive collocation nodes t_0 < ... < t_{n-1}.
class node_sequence {
public:
    explicit node_sequence(std::vector<rational> nodes) : nodes_(std::move(nodes)) {
        if (nodes_.empty()) throw invalid_nodes("node sequence is empty");
        if (nodes_.front().sign() <= 0) throw invalid_nodes("nodes must be positive");
        for (std::size_t i = 1; i < nodes_.size(); ++i)
            if (!(nodes_[i - 1] < nodes_[i]))
                throw invalid_nodes("nodes must be strictly increasing (position " +
                                    std::to_string(i + 1) + ")");
    }

    // Nodes 1, 2, ..., n.
    static node_sequence integers(std::size_t n) {
        std::vector<rational> v;
        for (std::size_t i = 1; i <= n; ++i) v.emplace_back(static_cast<long>(i));
        return node_sequence(std::move(v));
    }

    // Comma-separated rational tokens, e.g. "1,3/2,2".
    static node_sequence parse(std::string_view text) {
        std::vector<rational> v;
        std::size_t start = 0;
        while (start <= text.size()) {
            const auto comma = text.find(',', start);
            const auto end = comma == std::string_view::npos ? text.size() : comma;
            std::string_view tok = text.substr(start, end - start);
            while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
            while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
            v.push_back(rational::parse(tok));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        return node_sequence(std::move(v));
    }

    std::size_t size() const { return nodes_.size(); }
    const rational& operator[](std::size_t i) const { return nodes_[i]; }
    const std::vector<rational>& values() const { return nodes_; }

private:
    std::vector<rational> nodes_;
};

} // namespace tpbd
