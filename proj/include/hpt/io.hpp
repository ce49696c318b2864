#pragma once

// JSON problem files and result export. Scalars are strings ("p" or "p/q");
// objects are emitted with sorted keys, arrays in canonical basis order.

#include "hpt/contraction.hpp"
#include "hpt/dgla.hpp"
#include "hpt/perturbation.hpp"
#include "hpt/transfer.hpp"

#include "json.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hpt::io {

using Json = nlohmann::json;

/// Malformed input. line/column are 1-based for syntax errors and 0 when the
/// problem is in the content (then `where` holds a JSON pointer).
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t line, std::size_t column, std::string where = {})
      : std::runtime_error(what), line_(line), column_(column), where_(std::move(where)) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& where() const { return where_; }

private:
  std::size_t line_;
  std::size_t column_;
  std::string where_;
};

/// Problem file:
///   {"generators": [{"name": "a", "degree": 0}, ...],
///    "differential": {"u": {"c": "1"}},
///    "bracket": [["a", "b", {"c": "1"}], ...],
///    "contraction": {"generators": [...], "differential": {...},
///                    "nabla": {...}, "pi": {...}, "h": {...}},   (optional)
///    "maxWeight": 3}                                              (optional)
/// Maps are {source: {target: scalar}}; missing maps are zero.
struct Problem {
  PreBracket g;
  std::optional<RawContraction> contraction;  // unchecked
  std::optional<int> max_weight;
};

Json parse_json(std::string_view text);
Problem parse_problem(std::string_view text);
Problem load_problem(const std::string& path);
std::string read_file(const std::string& path);

Json problem_to_json(const PreBracket& g, const RawContraction* contraction, std::optional<int> max_weight);

Json module_to_json(const GradedModule& m);
GradedModule module_from_json(const Json& j, const std::string& where);
/// {source: {target: scalar}} with empty columns omitted.
Json map_to_json(const GradedMap& f);
GradedMap map_from_json(const Json& j, const GradedModule& source, const GradedModule& target, int degree,
                        const std::string& where);
/// Weight-block form: {"degree": d, "blocks": {"<source weight>-><target weight>": {...}}}.
Json map_to_json_blocks(const GradedMap& f, const SymCoalgebra& source, const SymCoalgebra& target);

Json report_to_json(const Report& r);
std::string pretty_report(const Report& r, const std::string& title);

/// {"module": [...], "maxArity": W, "brackets": {"k": [{"args": [...], "value": {...}}]}}.
Json linf_to_json(const LInftyStructure& l);
LInftyStructure linf_from_json(const Json& j);

Json tau_to_json(const TransferState& s);
Json coderivation_to_json(const TransferState& s);
Json final_contraction_to_json(const FinalContraction& f);

/// Two-space indented text with a trailing newline.
std::string dump(const Json& j);

}  // namespace hpt::io
