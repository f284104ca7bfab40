#pragma once

#include <optional>
#include <string>
#include <vector>

#include "permprof/rational.hpp"

namespace permprof {

/// Named statistics carrying exact and decimal renderings side by side.
/// When an exact value is present the double is its nearest rounding.
class StatReport {
  public:
    struct Entry {
        std::string name;
        std::optional<Rational> exact;
        double approx = 0.0;
    };

    void add_exact(std::string name, Rational value) {
        const double d = to_double_nearest(value);
        entries_.push_back({std::move(name), std::move(value), d});
    }

    void add_approx(std::string name, double value) {
        entries_.push_back({std::move(name), std::nullopt, value});
    }

    const std::vector<Entry>& entries() const { return entries_; }

  private:
    std::vector<Entry> entries_;
};

}  // namespace permprof
