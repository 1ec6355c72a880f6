#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "softspace/config.hpp"

namespace softspace {

inline constexpr std::string_view kVersion = "0.3.0";

// Stages in the order `all` runs them. `synth` stands apart.
const std::vector<std::string>& pipeline_stages();
bool is_subcommand(std::string_view name);

// Runs one subcommand against a resolved config. Outputs go to
// config.output_dir through temporary files and are renamed into place;
// on any exception everything written by this run is removed before the
// exception propagates. current_stage() names the stage that was running.
class Pipeline {
 public:
  explicit Pipeline(PipelineConfig config);

  void run(std::string_view subcommand);

  const std::string& current_stage() const { return stage_; }
  // name -> sha256 of artifacts written so far by this run
  const std::map<std::string, std::string>& outputs() const { return outputs_; }

 private:
  void run_stage(const std::string& stage);
  void ingest();
  void rca();
  void proximity();
  void backbone();
  void communities();
  void portfolio();
  void dynamics();
  void powerlaw();
  void synth();

  std::filesystem::path out_path(const std::string& name) const;
  std::string read_input(const std::filesystem::path& p);
  std::string header() const;
  void write_text(const std::string& name, const std::string& body);
  void write_json(const std::string& name, const std::string& json);
  void commit(const std::string& name, const std::string& bytes);
  void write_manifest(std::string_view subcommand, std::chrono::duration<double> wall);
  void rollback() noexcept;

  PipelineConfig config_;
  std::string digest_;
  std::string stage_;
  std::map<std::string, std::string> inputs_;
  std::map<std::string, std::string> outputs_;
  std::vector<std::filesystem::path> written_;
};

}  // namespace softspace
