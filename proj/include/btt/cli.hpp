#pragma once

// The `btt` command line and the JSON-level commands behind it. The Python
// module calls the same commands, so both front ends produce identical JSON.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "btt/json_io.hpp"

namespace btt::cli {

enum Exit : int { Ok = 0, ParseError = 1, Semantic = 2, UnknownVerdict = 3 };

struct CommandResult {
  io::json body;
  int exit_code = Ok;
};

using FieldOverride = std::optional<Field>;

CommandResult validate(const io::json& map, const FieldOverride& field = std::nullopt);
CommandResult evaluate(const io::json& map, const std::string& cell, const QPoint& x,
                       const FieldOverride& field = std::nullopt);
CommandResult lattice(const io::json& map, const QPoint& vertex, const std::vector<long>& u,
                      const FieldOverride& field = std::nullopt);
CommandResult generic_fiber(const io::json& map, const FieldOverride& field = std::nullopt);
CommandResult split(const io::json& map, const SplitOptions& opts, const FieldOverride& field = std::nullopt);

struct SelfCheck {
  std::uint64_t seed = 0;
  std::size_t samples = 0;
};

/// `morphism` is {"target": <map>, "matrix": [[scalar]]}. With samples > 0 a
/// seeded sampling of Φ(x)(e) <= Φ′(x)(F e) is reported next to the verdict.
CommandResult hom(const io::json& map, const io::json& morphism, const SelfCheck& check,
                  const FieldOverride& field = std::nullopt);

CommandResult tree_neighbors(const Field& field, const std::string& center);
CommandResult tree_geodesic(const Field& field, const std::string& from, const std::string& to);
CommandResult tree_helly(const Field& field, const std::vector<std::string>& keys);
/// DOT text in body (a JSON string).
CommandResult tree_dot(const Field& field, const std::string& center, int radius, int cap);

/// Splitting depth: BTT_BUDGET_DEPTH if set and valid, else the default.
int default_depth();

/// "key = value" lines, one per leaf, in document order.
std::string to_text(const io::json& j);

/// Full command line (args exclude the program name). Writes the result to
/// `out`, diagnostics to `err`; returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace btt::cli
