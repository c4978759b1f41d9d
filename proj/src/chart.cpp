#include "alg/chart.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace alg {

bool is_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

Chart::Chart(std::string name, std::vector<std::string> coords) : name_(std::move(name)), coords_(std::move(coords)) {
    for (std::size_t k = 0; k < coords_.size(); ++k) {
        const std::string& c = coords_[k];
        if (!is_identifier(c)) throw std::invalid_argument("invalid coordinate name '" + c + "'");
        if (c == "i" || func_from_name(c)) throw std::invalid_argument("reserved coordinate name '" + c + "'");
        if (std::find(coords_.begin(), coords_.begin() + static_cast<long>(k), c) != coords_.begin() + static_cast<long>(k))
            throw std::invalid_argument("duplicate coordinate '" + c + "'");
        vars_.push_back(coordinate_var(c));
    }
}

std::optional<std::size_t> Chart::index_of(const std::string& coord) const {
    auto it = std::find(coords_.begin(), coords_.end(), coord);
    if (it == coords_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - coords_.begin());
}

}  // namespace alg
