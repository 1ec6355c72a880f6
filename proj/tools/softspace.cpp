#include <exception>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "softspace/config.hpp"
#include "softspace/error.hpp"
#include "softspace/pipeline.hpp"

using namespace softspace;

namespace {

std::string kind_of(const Error& e) {
  if (dynamic_cast<const ArgumentError*>(&e)) return "argument";
  if (dynamic_cast<const ConfigError*>(&e)) return "config";
  if (dynamic_cast<const DataError*>(&e)) return "data";
  if (dynamic_cast<const FitError*>(&e)) return "fit";
  if (dynamic_cast<const InvariantError*>(&e)) return "invariant";
  return "error";
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c == '\n' ? ' ' : c);
  }
  return out + "\"";
}

int report(int code, const std::string& kind, const std::string& stage, const std::string& message) {
  std::cerr << "softspace: error: code=" << code << " kind=" << kind << " stage=" << (stage.empty() ? "-" : stage)
            << " message=" << quoted(message) << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"softspace: software-space analytics from mention records"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1, 1);

  std::string config_path;
  std::vector<std::string> sets;
  // (option, config key, value used for flags)
  std::vector<std::tuple<CLI::Option*, std::string, std::string>> overrides;
  std::vector<std::string> values(64);
  std::size_t slot = 0;

  auto value_opt = [&](const std::string& flag, const std::string& key, const std::string& help) {
    auto* o = app.add_option(flag, values.at(slot++), help);
    overrides.emplace_back(o, key, "");
  };
  auto flag_opt = [&](const std::string& flag, const std::string& key, const std::string& value,
                      const std::string& help) {
    auto* o = app.add_flag(flag, help);
    overrides.emplace_back(o, key, value);
  };

  app.add_option("-c,--config", config_path, "key = value config file");
  app.add_option("--set", sets, "override any config key (key=value); repeatable");
  value_opt("-r,--records", "records", "mention records file");
  value_opt("--aliases", "aliases", "alias table (alias, canonical)");
  value_opt("--taxonomy", "taxonomy", "discipline taxonomy file");
  value_opt("-o,--out", "output_dir", "output directory");
  value_opt("--first-year", "year_first", "first publication year kept");
  value_opt("--last-year", "year_last", "last publication year kept");
  value_opt("--percentile", "percentile", "tool popularity percentile cut");
  value_opt("--threshold", "threshold", "RCA specialization threshold");
  flag_opt("--inclusive", "inclusive", "true", "specialize on RCA >= threshold");
  value_opt("--level", "level", "discipline level: division or group");
  flag_opt("--allow-missing-doi", "require_doi", "false", "keep papers without a DOI");
  value_opt("--alpha", "alpha", "disparity filter significance level");
  flag_opt("--no-mst", "mst", "false", "omit the maximum spanning tree from the backbone");
  value_opt("--seed", "seed", "top-level random seed");
  value_opt("--restarts", "restarts", "independent block-model restarts");
  value_opt("--sweeps", "sweeps", "node-move sweeps per merge round");
  value_opt("--merge-fraction", "merge_fraction", "share of blocks merged per round");
  value_opt("--weighted-multiplicity", "multiplicity", "edge multiplicity ceil(phi * Q); 0 binarizes");
  value_opt("--window-length", "window_length", "rolling window length in years");
  value_opt("--step", "window_step", "rolling window step in years");
  value_opt("--xmin", "powerlaw_xmin", "fix the power-law cutoff (0 = select)");
  value_opt("--bootstrap", "bootstrap", "goodness-of-fit bootstrap replicates");
  flag_opt("--graphml", "graphml", "true", "also write GraphML networks");
  value_opt("--synth-tools", "synth_tools", "synthetic tools");
  value_opt("--synth-papers", "synth_papers", "synthetic papers");
  value_opt("--synth-disciplines", "synth_disciplines", "synthetic disciplines");
  value_opt("--synth-blocks", "synth_blocks", "planted tool communities (0 = none)");
  value_opt("--synth-tail", "synth_tail", "power-law exponent for tool popularity (0 = uniform)");
  value_opt("--synth-noise", "synth_noise", "share of noisy records");

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"ingest", "curate records and build the discipline x software count matrix"},
      {"rca", "revealed comparative advantage and specialization sets"},
      {"proximity", "tool proximity network"},
      {"backbone", "disparity filter plus maximum spanning tree"},
      {"communities", "degree-corrected block model communities"},
      {"portfolio", "community-level RCA and per-discipline concentration"},
      {"dynamics", "rolling-window concentration and stability"},
      {"powerlaw", "discrete power-law fit of tool popularity"},
      {"synth", "write a synthetic corpus and alias table"},
      {"all", "run every analysis stage in order"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report(2, "argument", "", e.what());
  }

  const std::string subcommand = app.get_subcommands().front()->get_name();
  try {
    PipelineConfig config = config_path.empty() ? PipelineConfig{} : PipelineConfig::load(config_path);
    for (const auto& kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ArgumentError("--set expects key=value, got '" + kv + "'");
      config.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    for (const auto& [opt, key, flag_value] : overrides) {
      if (opt->count() == 0) continue;
      config.set(key, flag_value.empty() ? opt->as<std::string>() : flag_value);
    }
    Pipeline pipeline(config);
    try {
      pipeline.run(subcommand);
    } catch (const Error& e) {
      return report(static_cast<int>(e.code()), kind_of(e), pipeline.current_stage(), e.what());
    } catch (const std::exception& e) {
      return report(4, "internal", pipeline.current_stage(), e.what());
    }
    for (const auto& [name, digest] : pipeline.outputs()) std::cout << digest.substr(0, 16) << "  " << name << "\n";
  } catch (const Error& e) {
    return report(static_cast<int>(e.code()), kind_of(e), subcommand, e.what());
  } catch (const std::exception& e) {
    return report(4, "internal", subcommand, e.what());
  }
  return 0;
}
