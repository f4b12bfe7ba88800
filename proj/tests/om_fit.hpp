#pragma once

#include <array>
#include <vector>

#include "oracles.hpp"
#include "reference_cases.hpp"

namespace reference {

// Least-squares O&M rates {wt, bess, el, fc} from the reported operation
// costs: operation = years * (wt*r_wt + bess*r_bess + el*r_el + fc*r_fc).
inline std::array<double, 4> refit_om_rates(double years) {
  std::vector<std::vector<double>> ata(4, std::vector<double>(4, 0.0));
  std::vector<double> atb(4, 0.0);
  for (const Case& c : kCases) {
    const std::array<double, 4> row{years * c.plan.wt_count, years * c.plan.bess_energy,
                                    years * c.plan.el_power, years * c.plan.fc_power};
    for (int i = 0; i < 4; ++i) {
      atb[i] += row[i] * c.operation;
      for (int j = 0; j < 4; ++j) ata[i][j] += row[i] * row[j];
    }
  }
  const auto x = oracle::solve_square(ata, atb);
  return x ? std::array<double, 4>{(*x)[0], (*x)[1], (*x)[2], (*x)[3]}
           : std::array<double, 4>{};
}

}  // namespace reference
