// Analyzes a small ranked-ballot dataset on S_4 with a Parseval frame
// compatible with the adjacent transpositions, then reconstructs it.

#include <iostream>
#include <sstream>

#include <fmt/format.h>

#include "permuframe/permuframe.hpp"

int main() {
  using namespace permuframe;

  std::istringstream ballots(
      "# candidates: Ada,Bo,Cy,Di\n"
      "ranking,count\n"
      "\"1,2,3,4\",30\n"
      "\"2,1,3,4\",12\n"
      "\"4,3,2,1\",25\n"
      "\"1,3,2,4\",8\n");
  const auto parsed = parse_rankings(ballots, 4);

  auto ordering = std::make_shared<const GroupOrdering>(GroupOrdering::lex(4));
  const auto frame = build_compatible_frame(ordering, parse_genset(4, "adjacent"),
                                            EigenspaceFramePolicy::onb());
  const Eigen::VectorXd f = to_signal(parsed.dataset, *ordering);

  const auto report = coefficient_report(frame, f);
  for (const auto& g : report.groups)
    fmt::print("({:>7}) lambda = {:>6.3f}  energy = {:10.4f}\n", g.shape.to_string(), g.eigenvalue,
               g.energy);
  fmt::print("sum of energies = {:.6f}, ||f||^2 = {:.6f}\n", report.total_energy, report.signal_energy);

  const Eigen::VectorXd back = synthesize(frame, report.coefficients);
  fmt::print("reconstruction error = {:.3e}\n", (back - f).norm());
  return 0;
}
