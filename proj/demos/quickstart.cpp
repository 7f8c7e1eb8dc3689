// Builds the linear proxy for a small cube, audits one random function
// against the l_inf norm, and prints the lower-bound example at n = 9.

#include <iostream>

#include "pisier_lab/pisier_lab.hpp"

int main() {
  using namespace pisier_lab;

  const ProxyKernel kernel(3);
  std::cout << "ell=3: E|phi| = " << phi_l1(kernel) << ", E|P| (n=16) = " << proxy_l1(kernel, 16)
            << '\n';

  const auto f = random_vector_function(8, 4, 7);
  const auto norm = Norm::linf();
  const auto audit = decomposition_audit(f, norm, SandwichTransform::for_norm(norm, 4));
  std::cout << "audit: ||lin f|| / ||f|| = " << audit.ratio() << " <= " << audit.derived_constant
            << (audit.all_hold() ? "  (all checks hold)" : "  (VIOLATION)") << '\n';

  const auto report = lower_bound_report(9, WitnessVariant::kTruncated, true);
  std::cout << report.dump(2) << '\n';
}
