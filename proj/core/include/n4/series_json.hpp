#pragma once

#include <string>
#include <string_view>

#include "n4/series.hpp"

namespace n4 {

/// Canonical JSON: {"q_den", "x_den", "q_order", "terms": [{"q", "x", "re", "im"}...]}
/// with terms sorted by (q, x). A windowed series also carries "x_window": [lo, hi].
/// An exact series writes q_order as "inf".
std::string to_json(const JacobiSeries& s, int indent = -1);

/// Inverse of to_json. Throws std::invalid_argument on malformed input.
JacobiSeries series_from_json(std::string_view text);

/// Plain-text rendering, one q-level per line.
std::string to_text(const JacobiSeries& s);

} // namespace n4
