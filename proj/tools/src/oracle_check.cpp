#include "lmgdtc/experiment/oracle_check.hpp"

#include <algorithm>
#include <cmath>

#include "lmgdtc/observables.hpp"
#include "lmgdtc/oracle.hpp"

namespace lmgdtc::experiment {

json run_oracle_check(const OracleCheckOptions& o) {
  json cases = json::array();
  bool pass = true;
  for (int n : o.sizes) {
    const FloquetPropagator prop(SpinSystem(n), HamiltonianParams{1.0, o.h_field, 1e-5}, o.tau);
    for (double eps : o.epsilons) {
      const FloquetConfig cfg = prop.config(eps);
      const OracleSeries ref = oracle_evolve_and_measure(n, cfg, o.n_steps);
      double dm = 0.0, dipr = 0.0;
      prop.run(eps, o.n_steps, [&](int step, const Eigen::VectorXcd& psi) {
        const auto k = static_cast<std::size_t>(step);
        dm = std::max(dm, std::abs(magnetization(psi, prop.system()) - ref.magnetization.points()[k].value));
        dipr = std::max(dipr, std::abs(ipr(psi) - ref.ipr.points()[k].value));
      });
      const double q = qfi(prop, eps, o.qfi_steps).value;
      const double q_ref = oracle_qfi(n, cfg, o.qfi_steps);
      const double q_rel = std::abs(q - q_ref) / std::max(std::abs(q_ref), 1e-300);
      const bool ok = dm <= o.series_tolerance && dipr <= o.series_tolerance && q_rel <= o.qfi_tolerance;
      pass = pass && ok;
      cases.push_back({{"N", n},
                       {"epsilon", eps},
                       {"max_abs_dev_magnetization", dm},
                       {"max_abs_dev_ipr", dipr},
                       {"symmetric_sector_leakage", ref.max_leakage},
                       {"qfi", q},
                       {"qfi_oracle", q_ref},
                       {"qfi_rel_dev", q_rel},
                       {"pass", ok}});
    }
  }
  return {{"h", o.h_field},
          {"tau", o.tau},
          {"n_steps", o.n_steps},
          {"qfi_steps", o.qfi_steps},
          {"series_tolerance", o.series_tolerance},
          {"qfi_tolerance", o.qfi_tolerance},
          {"cases", cases},
          {"pass", pass}};
}

}  // namespace lmgdtc::experiment
