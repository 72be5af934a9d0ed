#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ctqec/linalg.hpp"

namespace ctqec {

enum class Pauli : char { I = 'I', X = 'X', Y = 'Y', Z = 'Z' };

/// 2x2 matrix of a single Pauli symbol.
const Mat& pauli_matrix(Pauli p);

/// Tensor product of Pauli symbols with a complex coefficient, e.g. IZZ. The
/// leftmost symbol is the most significant tensor factor.
struct PauliString {
  std::vector<Pauli> symbols;
  Complex coefficient{1.0, 0.0};

  static PauliString parse(std::string_view text, Complex coefficient = {1.0, 0.0});

  Mat matrix() const;
  int n_qubits() const { return static_cast<int>(symbols.size()); }
  std::string label() const;
};

}  // namespace ctqec
