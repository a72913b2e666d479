#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "polylim/errors.hpp"
#include "polylim/exact.hpp"

namespace polylim {

/// Exact Bernoulli numbers B_0..B_max (B_1 = -1/2) from
/// sum_{j=0}^{m} C(m+1, j) B_j = 0.
class BernoulliTable {
public:
    static constexpr unsigned kDefaultSize = 60;

    explicit BernoulliTable(unsigned max_index = kDefaultSize)
    {
        values_.reserve(max_index + 1);
        values_.emplace_back(1);
        for (unsigned m = 1; m <= max_index; ++m) {
            if (m > 1 && m % 2 == 1) {
                values_.emplace_back(0);
                continue;
            }
            BigRational acc = 0;
            for (unsigned j = 0; j < m; ++j) {
                acc += BigRational(binomial(m + 1, j)) * values_[j];
            }
            values_.push_back(-acc / BigRational(m + 1));
        }
        doubles_.reserve(values_.size());
        for (const auto& v : values_) {
            doubles_.push_back(v.convert_to<double>());
        }
    }

    [[nodiscard]] unsigned max_index() const noexcept { return static_cast<unsigned>(values_.size() - 1); }

    [[nodiscard]] const BigRational& exact(unsigned m) const
    {
        check(m);
        return values_[m];
    }

    [[nodiscard]] double approx(unsigned m) const
    {
        check(m);
        return doubles_[m];
    }

    /// Shared read-only table of the default size.
    static const BernoulliTable& standard()
    {
        static const BernoulliTable table;
        return table;
    }

private:
    void check(unsigned m) const
    {
        if (m > max_index()) {
            throw capacity_error("Bernoulli index " + std::to_string(m) + " beyond table size "
                                 + std::to_string(max_index()));
        }
    }

    std::vector<BigRational> values_;
    std::vector<double> doubles_;
};

inline ExactRational bernoulli(unsigned m)
{
    return ExactRational(BernoulliTable::standard().exact(m));
}

} // namespace polylim
