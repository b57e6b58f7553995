// Prints the single-mode Hamiltonian, its normal forms under both schemes and
// the resulting vacuum energies.

#include <iostream>
#include <vector>

#include "zpe/exprdsl.hpp"
#include "zpe/field.hpp"
#include "zpe/opalgebra.hpp"

int main() {
  using namespace zpe;
  const std::vector<ModeFrequency> mode{{0, Scalar(1)}};
  const OperatorPoly h = build_hamiltonian_sym(mode);
  const auto paper = CommutatorScheme::paper();
  const auto standard = CommutatorScheme::standard();

  std::cout << "H            = " << format(h) << "\n";
  std::cout << "H (modified) = " << format(normal_order(h, paper)) << "\n";
  std::cout << "H (standard) = " << format(normal_order(h, standard)) << "\n";
  std::cout << "N[H]         = " << format(normal_order_prescription(h)) << "\n\n";

  const ModeSet box(Rational(1), {{0, 0, 1}, {0, 0, -1}, {1, 0, 0}, {-1, 0, 0}});
  std::cout << "box L=1, 4 modes\n";
  std::cout << "  <0|H|0> standard        = " << vacuum_energy(box, standard) << "\n";
  std::cout << "  <0|N[H]|0> standard     = "
            << vacuum_energy(box, standard, {}, VacuumVariant::NormalOrderingPrescription) << "\n";
  std::cout << "  <0|H|0> modified scheme = " << vacuum_energy(box, paper) << "\n";
}
