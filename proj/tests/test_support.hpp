#pragma once

#include <string>

#include "bolcat/catalog.hpp"

inline const bolcat::catalog::Catalog& test_catalog() {
  static const bolcat::catalog::Catalog cat =
      bolcat::catalog::load_catalog(bolcat::catalog::default_data_dir());
  return cat;
}

inline bolcat::liealg::LieAlgebra::Ptr test_algebra(const std::string& tag) {
  return test_catalog().entry(tag).algebra;
}

inline bolcat::liealg::Element elem(const bolcat::liealg::LieAlgebra::Ptr& a,
                                    std::initializer_list<int> coeffs) {
  bolcat::RatVec v;
  for (int c : coeffs) v.push_back(bolcat::Rat(c));
  return bolcat::liealg::Element(a, v);
}

// Basis element by 1-based index, matching the catalog file convention.
inline bolcat::liealg::Element basis1(const bolcat::liealg::LieAlgebra::Ptr& a, int i) {
  return bolcat::liealg::Element::basis(a, i - 1);
}
