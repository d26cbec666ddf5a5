#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "prpairs/forms.hpp"
#include "prpairs/multfunc.hpp"
#include "prpairs/types.hpp"

namespace prp::cli {

// ---- literal parsers -------------------------------------------------------

BinaryQuadraticForm parse_form(const std::string& s);   // [a,b,c], optionally prefixed P=
LinearForm parse_linear(const std::string& s);          // [u,v]
MultiplicativeFunction parse_function(const std::string& s);
TwistData parse_twist(const std::string& chi, double t);  // chi as q:index
ExponentMap parse_exponents(const std::string& s);      // 2:4,3:4
std::vector<i64> parse_int_list(const std::string& s);  // 5,13,17
std::vector<double> parse_real_list(const std::string& s);
i64 parse_int(const std::string& s);
double parse_real(const std::string& s);
BigInt parse_bigint(const std::string& s);
bool parse_bool(const std::string& s);

// Shortest round-trip decimal.
std::string format_double(double x);

// ---- experiment specs ------------------------------------------------------

enum class ParamType { Int, BigInt, Real, Bool, Text, Form, Linear, Function, IntList, RealList, Exponents };

struct ParamDef {
  std::string key;
  ParamType type;
  std::string default_value;  // empty with required = true means mandatory
  bool required = false;
  bool positional = false;
  std::string help;
  std::vector<std::string> choices;  // for Text
};

struct SubcommandSchema {
  std::string name;
  std::string help;
  std::vector<ParamDef> params;
  const ParamDef* find(const std::string& key) const;
};

const std::vector<SubcommandSchema>& schemas();
const SubcommandSchema& schema(const std::string& subcommand);

// operation name -> subcommand that exposes it
const std::vector<std::pair<std::string, std::string>>& operation_registry();

struct ExperimentSpec {
  std::string subcommand;
  std::map<std::string, std::string> params;

  // Rejects unknown keys and ill-typed values and fills defaults.
  void validate_and_normalize();
  std::string serialize() const;  // canonical key = value text
  static ExperimentSpec parse(const std::string& text);
  std::string run_id() const;     // FNV-1a 64 of serialize(), hex

  const std::string& get(const std::string& key) const;
  i64 get_int(const std::string& key) const { return parse_int(get(key)); }
  double get_real(const std::string& key) const { return parse_real(get(key)); }
  bool get_bool(const std::string& key) const { return parse_bool(get(key)); }
};

// ---- results ---------------------------------------------------------------

using Cell = std::variant<i64, double, std::string>;

struct ResultRow {
  std::string run_id;
  std::vector<std::pair<std::string, Cell>> columns;
  std::string provenance;

  ResultRow& add(std::string name, Cell value) {
    columns.emplace_back(std::move(name), std::move(value));
    return *this;
  }
};

enum class Format { Json, Csv };

std::string render(const std::vector<ResultRow>& rows, Format format);

// Writes to a temporary file beside path and renames over it.
void write_atomic(const std::string& path, const std::string& content);

struct RunOptions {
  u64 cap_n = 20'000;
};

std::vector<ResultRow> run(const ExperimentSpec& spec, const RunOptions& options = {});

// sweep over one numeric axis; rows in the given order
std::vector<ResultRow> sweep(const ExperimentSpec& templ, const std::string& axis, const std::vector<std::string>& values,
                             const RunOptions& options = {});

// Entry point used by the executable; returns the process exit code.
int main_entry(int argc, char** argv);

}  // namespace prp::cli
