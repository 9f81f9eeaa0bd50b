// Known consistent-presentation counts by order and class, used as
// regression pins for the enumerator.
#pragma once

#include <cstdint>
#include <vector>

#include "ssp/zp.hpp"

namespace ssp {

struct GoldenRow {
  int n;
  std::uint64_t class1;
  std::uint64_t class2;
  std::uint64_t class3;
};

inline const std::vector<GoldenRow>& golden_rows(int p) {
  static const std::vector<GoldenRow> p3 = {
      {2, 1, 0, 0},     {3, 1, 2, 0},        {4, 1, 8, 0},
      {5, 1, 26, 0},    {6, 1, 98, 144},     {7, 1, 458, 1728},
      {8, 1, 2834, 16848}, {9, 1, 22112, 159408}, {10, 1, 200474, 1551312}};
  static const std::vector<GoldenRow> p5 = {
      {2, 1, 0, 0},      {3, 1, 4, 0},       {4, 1, 24, 0},
      {5, 1, 124, 0},    {6, 1, 724, 2400},  {7, 1, 6124, 72000},
      {8, 1, 93124, 1860000}};
  static const std::vector<GoldenRow> p7 = {
      {2, 1, 0, 0},      {3, 1, 6, 0},       {4, 1, 48, 0},
      {5, 1, 342, 0},    {6, 1, 2694, 14112}, {7, 1, 33270, 790272}};
  switch (p) {
    case 3: return p3;
    case 5: return p5;
    case 7: return p7;
    default: throw validation_error("no reference counts for p = " + std::to_string(p));
  }
}

inline bool has_golden_rows(int p) { return p == 3 || p == 5 || p == 7; }

// Largest n covered by the fast regression gate; larger rows are long runs.
inline int golden_gating_n(int p) {
  switch (p) {
    case 3: return 8;
    case 5: return 6;
    case 7: return 5;
    default: return 0;
  }
}

}  // namespace ssp
