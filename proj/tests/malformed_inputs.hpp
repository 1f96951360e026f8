#pragma once

#include <string>
#include <vector>

namespace keo::corpus {

/// Each must fail to parse with a SyntaxError or WrongMomentumCount carrying a position.
inline const std::vector<std::string> malformed_inputs = {
    "",
    "   ",
    "1/2 *",
    "1/2 p m^(-1) p",
    "1/2 * p m^(-1 p",
    "1/2 * p m(-1) p",
    "1/2 * p m^-1 p",
    "1/2 * p q p",
    "1/2 * p m^(1/0) p",
    "1/2 * p m^(x) p",
    "1/2 * p^3 m^(-1)",
    "1/2 * p m^(-1) p +",
    "1/2 * p m^(-1) p ++ 1/2 * p p",
    "* p m^(-1) p",
    "1/2 * p m^(-1) p )",
    "1/2 * p m^(-1)",
    "1/2 * p p p m^(-1)",
    "1/2 * m^(-1)",
    "1/4 * p m^(-1) p + 1/4 * p",
    "0.5 * p m^(-1) p",
};

} // namespace keo::corpus
