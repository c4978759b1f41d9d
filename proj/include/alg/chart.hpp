#pragma once

#include <optional>
#include <string>
#include <vector>

#include "alg/scalar.hpp"

namespace alg {

/// Named coordinate system (x^1..x^n) on an open set; n = 0 is a point.
class Chart {
public:
    Chart() = default;
    Chart(std::string name, std::vector<std::string> coords);

    const std::string& name() const { return name_; }
    const std::vector<std::string>& coords() const { return coords_; }
    std::size_t dim() const { return coords_.size(); }
    std::optional<std::size_t> index_of(const std::string& coord) const;
    bool contains(const std::string& coord) const { return index_of(coord).has_value(); }
    Scalar coordinate(std::size_t i) const { return Scalar::coordinate(coords_.at(i)); }
    VarId var(std::size_t i) const { return vars_.at(i); }

    friend bool operator==(const Chart& a, const Chart& b) { return a.coords_ == b.coords_; }

private:
    std::string name_;
    std::vector<std::string> coords_;
    std::vector<VarId> vars_;
};

bool is_identifier(const std::string& s);

}  // namespace alg
