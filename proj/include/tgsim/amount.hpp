// Copyright (c) 2026 The tgsim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace tgsim {

// All token amounts are exact integers denominated in Drip.
// 1 CFX == 10^18 Drip; interest and reward payouts floor to whole Drip.
using drip_amount = boost::multiprecision::cpp_int;
using rational = boost::multiprecision::cpp_rational;

inline const drip_amount drip_per_cfx = drip_amount("1000000000000000000");

inline drip_amount cfx_to_drip(std::uint64_t cfx) { return drip_amount(cfx) * drip_per_cfx; }

// Floor of a non-negative rational to whole Drip.
inline drip_amount floor_to_drip(const rational& exact) {
    return numerator(exact) / denominator(exact);
}

inline double drip_to_cfx(const drip_amount& d) {
    return static_cast<double>(rational(d, drip_per_cfx));
}

} // namespace tgsim
