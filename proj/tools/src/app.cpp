#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "prpairs/errors.hpp"
#include "prpairs/parallel.hpp"
#include "prpairs_cli/cli.hpp"

namespace prp::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct SubcommandBinding {
  CLI::App* app;
  std::map<std::string, std::string> values;
  std::vector<std::pair<std::string, CLI::Option*>> options;
};

std::vector<std::string> split_values(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '[' || ch == '(') ++depth;
    if (ch == ']' || ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  std::vector<std::string> trimmed;
  for (auto& v : out) {
    auto a = v.find_first_not_of(" \t"), b = v.find_last_not_of(" \t");
    if (a == std::string::npos) throw DomainError("sweep: empty entry in value list");
    trimmed.push_back(v.substr(a, b - a + 1));
  }
  return trimmed;
}

void merge_set(ExperimentSpec& spec, const std::vector<std::string>& sets) {
  for (const auto& kv : sets) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw DomainError("--set expects key=value, got '" + kv + "'");
    spec.params[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
}

}  // namespace

int main_entry(int argc, char** argv) {
  CLI::App app{"Partition-regularity and multiplicative-function experiments"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  unsigned threads = 0;
  u64 cap_n = RunOptions{}.cap_n;
  std::string out_path, format = "json", config_path;
  app.add_option("--threads", threads, "worker threads; 0 uses every core");
  app.add_option("--cap-n", cap_n, "largest accepted grid size or search bound");
  app.add_option("--out", out_path, "write results here atomically instead of stdout");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--config", config_path, "key = value file; command-line values win");

  std::vector<std::unique_ptr<SubcommandBinding>> bindings;
  for (const auto& sc : schemas()) {
    auto b = std::make_unique<SubcommandBinding>();
    b->app = app.add_subcommand(sc.name, sc.help);
    for (const auto& p : sc.params) {
      std::string& slot = b->values[p.key];
      CLI::Option* opt = nullptr;
      std::string help = p.help + (p.default_value.empty() ? "" : " (default " + p.default_value + ")");
      if (p.positional) {
        opt = b->app->add_option(p.key, slot, help);
      } else if (p.type == ParamType::Bool) {
        opt = b->app->add_option("--" + p.key, slot, help)->expected(0, 1)->default_str("true");
      } else {
        opt = b->app->add_option("--" + p.key, slot, help);
        if (!p.choices.empty()) opt->check(CLI::IsMember(p.choices));
      }
      b->options.emplace_back(p.key, opt);
    }
    bindings.push_back(std::move(b));
  }

  std::string sweep_sub, sweep_axis, sweep_values;
  std::vector<std::string> sweep_sets;
  auto* sweep_app = app.add_subcommand("sweep", "run one subcommand over a list of parameter values");
  sweep_app->add_option("sub", sweep_sub, "subcommand to sweep");
  sweep_app->add_option("--axis", sweep_axis, "numeric parameter to vary")->required();
  sweep_app->add_option("--values", sweep_values, "comma-separated values, in output order")->required();
  sweep_app->add_option("--set", sweep_sets, "template parameter key=value; repeatable");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    set_thread_count(threads);
    RunOptions opts;
    opts.cap_n = cap_n;
    Format fmt = format == "csv" ? Format::Csv : Format::Json;

    ExperimentSpec spec;
    if (!config_path.empty()) spec = ExperimentSpec::parse(read_file(config_path));

    std::vector<ResultRow> rows;
    if (sweep_app->parsed()) {
      if (!sweep_sub.empty()) {
        if (!spec.subcommand.empty() && spec.subcommand != sweep_sub)
          throw DomainError("config subcommand '" + spec.subcommand + "' differs from '" + sweep_sub + "'");
        spec.subcommand = sweep_sub;
      }
      if (spec.subcommand.empty()) throw DomainError("sweep: no subcommand given");
      if (spec.subcommand == "sweep") throw DomainError("sweep: cannot sweep a sweep");
      merge_set(spec, sweep_sets);
      rows = sweep(spec, sweep_axis, split_values(sweep_values), opts);
    } else {
      const SubcommandBinding* chosen = nullptr;
      for (const auto& b : bindings)
        if (b->app->parsed()) chosen = b.get();
      if (chosen) {
        std::string name = chosen->app->get_name();
        if (!spec.subcommand.empty() && spec.subcommand != name)
          throw DomainError("config subcommand '" + spec.subcommand + "' differs from '" + name + "'");
        spec.subcommand = name;
        for (const auto& [key, opt] : chosen->options) {
          if (opt->count() == 0) continue;
          std::string v = chosen->values.at(key);
          const ParamDef* d = schema(name).find(key);
          if (d->type == ParamType::Bool && opt->results().empty()) v = "true";
          if (d->type == ParamType::Bool && v.empty()) v = "true";
          spec.params[key] = v;
        }
      }
      if (spec.subcommand.empty()) {
        std::cerr << app.help();
        return 2;
      }
      rows = run(spec, opts);
    }

    std::string text = render(rows, fmt);
    if (out_path.empty())
      std::cout << text << std::flush;
    else
      write_atomic(out_path, text);
    return 0;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const InvariantError& e) {
    std::cerr << "internal invariant violated: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace prp::cli
