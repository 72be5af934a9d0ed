#include "ctqec/pauli.hpp"

#include <stdexcept>

namespace ctqec {

const Mat& pauli_matrix(Pauli p) {
  static const Mat id = Mat::Identity(2, 2);
  static const Mat x = (Mat(2, 2) << 0, 1, 1, 0).finished();
  static const Mat y = (Mat(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished();
  static const Mat z = (Mat(2, 2) << 1, 0, 0, -1).finished();
  switch (p) {
    case Pauli::I: return id;
    case Pauli::X: return x;
    case Pauli::Y: return y;
    case Pauli::Z: return z;
  }
  throw std::invalid_argument("pauli_matrix: bad symbol");
}

PauliString PauliString::parse(std::string_view text, Complex coefficient) {
  PauliString s;
  s.coefficient = coefficient;
  s.symbols.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case 'I': s.symbols.push_back(Pauli::I); break;
      case 'X': s.symbols.push_back(Pauli::X); break;
      case 'Y': s.symbols.push_back(Pauli::Y); break;
      case 'Z': s.symbols.push_back(Pauli::Z); break;
      default:
        throw std::invalid_argument("PauliString: unknown symbol in label");
    }
  }
  if (s.symbols.empty()) throw std::invalid_argument("PauliString: empty label");
  return s;
}

Mat PauliString::matrix() const {
  Mat out = pauli_matrix(symbols.front());
  for (std::size_t i = 1; i < symbols.size(); ++i)
    out = tensor(out, pauli_matrix(symbols[i]));
  return coefficient * out;
}

std::string PauliString::label() const {
  std::string text;
  for (Pauli p : symbols) text.push_back(static_cast<char>(p));
  return text;
}

}  // namespace ctqec
