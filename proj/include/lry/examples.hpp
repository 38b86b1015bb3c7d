#pragma once

#include "lry/model.hpp"

namespace lry {

/// Ten districts with A's support per segment 0.38 x 5, 0.9, 0.36, 0.36,
/// 0.34, 0.34 (total 4.2). The optimal preferences cross between k = 5 and
/// k = 6, and one coin-flip candidate leaves A two districts below geo(A) = 4.
inline SplitProfile example_two_gap_profile() {
  SplitProfile p;
  p.n = 10;
  for (const char* s : {"0.38", "0.38", "0.38", "0.38", "0.38", "0.9", "0.36", "0.36", "0.34", "0.34"})
    p.segments_a.push_back(Ratio::parse(s));
  return p;
}

}  // namespace lry
