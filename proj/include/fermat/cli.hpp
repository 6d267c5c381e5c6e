#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fermat/core.hpp"
#include "fermat/weiszfeld.hpp"

namespace fermat::cli {

// Exit codes of `fermat-solve`.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitMaxIter = 2;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// CSV instance: one anchor per row, "x1,...,xn". A non-numeric first row is
/// a header; if its last column is named "weight" (or "w"), that column holds
/// the anchor weights. Blank lines and lines starting with '#' are skipped.
Instance parse_csv(std::string_view text);

/// JSON instance: {"anchors": [[...], ...], "weights": [...]}, weights optional.
Instance parse_json(std::string_view text);

/// Reads `path`, choosing JSON for a ".json" extension or a leading '{'.
Instance load_instance(const std::string& path);

/// Parses "x1,...,xn".
Point parse_point(std::string_view text);

/// %.17g, or "null" for non-finite values.
std::string format_real(double v);

/// Writes "iter,x1,...,xn,phi,step_norm" rows.
void write_trace_csv(std::ostream& out, const weiszfeld::IterationTrace& trace, std::size_t dim);

/// Full command-line run. `args` excludes the program name. The report goes to
/// `out`; diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fermat::cli
