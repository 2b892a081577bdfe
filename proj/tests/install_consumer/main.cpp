#include <landflow/polyvec.hpp>

#include <iostream>

int main() {
  const auto g = landflow::generator_pair(1);
  const auto b = landflow::lie_bracket(g.x, g.y);
  std::cout << b.to_string() << "\n";
  return b.to_string() == "3*x1^2 d1" ? 0 : 1;
}
