#include "softspace/pipeline.hpp"

#include <algorithm>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "softspace/backbone.hpp"
#include "softspace/community.hpp"
#include "softspace/corpus.hpp"
#include "softspace/delimited.hpp"
#include "softspace/dynamics.hpp"
#include "softspace/error.hpp"
#include "softspace/proximity.hpp"
#include "softspace/rng.hpp"
#include "softspace/scalefit.hpp"
#include "softspace/specialization.hpp"
#include "softspace/synthkit.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace softspace {

const std::vector<std::string>& pipeline_stages() {
  static const std::vector<std::string> s = {"ingest",      "rca",       "proximity", "backbone",
                                             "communities", "portfolio", "dynamics",  "powerlaw"};
  return s;
}

bool is_subcommand(std::string_view name) {
  if (name == "all" || name == "synth") return true;
  const auto& s = pipeline_stages();
  return std::find(s.begin(), s.end(), name) != s.end();
}

namespace {

std::string utc_timestamp() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream ss;
  ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return ss.str();
}

json parse_json(const std::string& text, const std::string& name) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw DataError(name + ": invalid JSON: " + e.what());
  }
}

template <class T>
T json_field(const json& j, const char* key, const std::string& name) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw DataError(name + ": missing or malformed field '" + key + "'");
  }
}

std::string category_name(const DisciplineTaxonomy& tax, const std::string& code) {
  if (auto c = tax.category_of(code)) return std::string(to_string(*c));
  if (const Group* g = tax.find_group(code))
    if (auto c = tax.category_of(g->parent)) return std::string(to_string(*c));
  if (code.size() >= 2)
    if (auto c = tax.category_of(code.substr(0, 2))) return std::string(to_string(*c));
  return "";
}

}  // namespace

Pipeline::Pipeline(PipelineConfig config) : config_(std::move(config)) {
  config_.validate();
  digest_ = config_.digest();
}

fs::path Pipeline::out_path(const std::string& name) const { return fs::path(config_.output_dir) / name; }

std::string Pipeline::read_input(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw DataError("missing input '" + p.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string bytes = ss.str();
  inputs_[p.string()] = sha256_hex(bytes);
  return bytes;
}

std::string Pipeline::header() const { return "# softspace " + stage_ + " config=" + digest_.substr(0, 16) + "\n"; }

void Pipeline::write_text(const std::string& name, const std::string& body) { commit(name, header() + body); }

void Pipeline::write_json(const std::string& name, const std::string& text) {
  json body = json::parse(text);
  json j;
  j["stage"] = stage_;
  j["config_digest"] = digest_;
  for (auto& [k, v] : body.items()) j[k] = v;
  commit(name, j.dump(1) + "\n");
}

void Pipeline::commit(const std::string& name, const std::string& bytes) {
  const fs::path target = out_path(name);
  const fs::path tmp = out_path("." + name + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write '" + tmp.string() + "'");
    out << bytes;
    out.close();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw DataError("failed writing '" + tmp.string() + "'");
    }
  }
  fs::rename(tmp, target);
  written_.push_back(target);
  outputs_[name] = sha256_hex(bytes);
}

void Pipeline::rollback() noexcept {
  std::error_code ec;
  for (const auto& p : written_) fs::remove(p, ec);
  written_.clear();
  outputs_.clear();
}

void Pipeline::run(std::string_view subcommand) {
  if (!is_subcommand(subcommand)) throw ArgumentError("unknown subcommand '" + std::string(subcommand) + "'");
  const auto t0 = std::chrono::steady_clock::now();
  try {
    std::error_code ec;
    fs::create_directories(config_.output_dir, ec);
    if (ec) throw DataError("cannot create output directory '" + config_.output_dir + "': " + ec.message());
    if (subcommand == "all") {
      for (const auto& s : pipeline_stages()) run_stage(s);
    } else {
      run_stage(std::string(subcommand));
    }
    stage_ = std::string(subcommand);
    commit("config.resolved", config_.save());
    write_manifest(subcommand, std::chrono::steady_clock::now() - t0);
  } catch (...) {
    rollback();
    throw;
  }
}

void Pipeline::write_manifest(std::string_view subcommand, std::chrono::duration<double> wall) {
  json j;
  j["tool"] = "softspace";
  j["version"] = std::string(kVersion);
  j["subcommand"] = std::string(subcommand);
  j["config_digest"] = digest_;
  json cfg;
  std::istringstream lines(config_.save());
  for (std::string line; std::getline(lines, line);) {
    const auto eq = line.find(" = ");
    cfg[line.substr(0, eq)] = line.substr(eq + 3);
  }
  j["config"] = std::move(cfg);
  j["inputs"] = inputs_;
  auto outs = outputs_;
  outs.erase("config.resolved");
  j["outputs"] = outs;
  j["wall_time_seconds"] = wall.count();
  j["timestamp"] = utc_timestamp();
  // The manifest is excluded from the rollback list on purpose: it is the
  // last write, so failure before it leaves nothing behind.
  const std::string name = "manifest_" + std::string(subcommand) + ".json";
  const fs::path tmp = out_path("." + name + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << j.dump(1) << "\n";
    if (!out) throw DataError("cannot write manifest");
  }
  fs::rename(tmp, out_path(name));
}

void Pipeline::run_stage(const std::string& stage) {
  stage_ = stage;
  if (stage == "ingest") ingest();
  else if (stage == "rca") rca();
  else if (stage == "proximity") proximity();
  else if (stage == "backbone") backbone();
  else if (stage == "communities") communities();
  else if (stage == "portfolio") portfolio();
  else if (stage == "dynamics") dynamics();
  else if (stage == "powerlaw") powerlaw();
  else if (stage == "synth") synth();
  else throw ArgumentError("unknown stage '" + stage + "'");
}

namespace {

DisciplineTaxonomy load_taxonomy(const PipelineConfig& c, std::map<std::string, std::string>& inputs) {
  if (c.taxonomy.empty()) return DisciplineTaxonomy::anzsrc_default();
  inputs[c.taxonomy] = sha256_file(c.taxonomy);
  return DisciplineTaxonomy::load(c.taxonomy);
}

}  // namespace

void Pipeline::ingest() {
  if (config_.records.empty()) throw ConfigError("records path not set");
  const auto tax = load_taxonomy(config_, inputs_);
  std::vector<MentionRecord> records;
  {
    std::istringstream in(read_input(config_.records));
    records = read_records(in, config_.records);
  }
  AliasTable aliases;
  if (!config_.aliases.empty()) {
    inputs_[config_.aliases] = sha256_file(config_.aliases);
    aliases = AliasTable::load(config_.aliases);
  }
  CurationStats cs;
  PaperFilterStats ps;
  BuildDiagnostics bd;
  const auto curated = curate(records, known_software_names(records), &cs);
  const auto resolved = disambiguate(curated, aliases);
  const auto kept = filter_papers(resolved, config_.years, config_.require_doi, &ps);
  const auto full = build_count_matrix(kept, tax, config_.level, config_.years, &bd);
  if (full.n_cols() == 0) throw DataError(config_.records + ": no software mentions survive preprocessing");
  const auto pf = percentile_filter(full, config_.percentile);
  if (pf.retained == 0)
    throw DataError("no tool exceeds the " + io::format_double(config_.percentile) + " popularity quantile (" +
                    std::to_string(pf.threshold) + " papers)");

  std::ostringstream recs;
  write_records(recs, kept);
  write_text("records.curated.csv", recs.str());

  std::ostringstream cm;
  write_count_matrix(cm, pf.matrix);
  write_text("counts.csv", cm.str());

  const auto mentions = full.col_totals();
  std::set<std::string> retained(pf.matrix.cols.begin(), pf.matrix.cols.end());
  std::ostringstream tot;
  io::write_row(tot, {"software", "papers", "mentions", "retained"});
  for (std::size_t c = 0; c < full.n_cols(); ++c)
    io::write_row(tot, {full.cols[c], std::to_string(full.software_papers[c]), std::to_string(mentions[c]),
                        retained.contains(full.cols[c]) ? "1" : "0"});
  write_text("software_totals.csv", tot.str());

  json j;
  j["level"] = std::string(to_string(config_.level));
  j["year_first"] = config_.years.first;
  j["year_last"] = config_.years.last;
  j["rows"] = pf.matrix.rows;
  std::vector<std::string> labels;
  for (const auto& r : pf.matrix.rows) labels.push_back(tax.label_of(r));
  j["row_labels"] = labels;
  j["cols"] = pf.matrix.cols;
  j["software_papers"] = pf.matrix.software_papers;
  j["percentile"] = config_.percentile;
  j["percentile_threshold"] = pf.threshold;
  j["tools_before_filter"] = full.n_cols();
  j["tools_retained"] = pf.retained;
  j["tools_dropped"] = pf.dropped;
  j["curation"] = {{"kept_software", cs.kept_software},
                   {"recovered_not_curated", cs.recovered_not_curated},
                   {"dropped_not_software", cs.dropped_not_software},
                   {"dropped_unclear", cs.dropped_unclear},
                   {"dropped_not_curated", cs.dropped_not_curated}};
  j["paper_filter"] = {{"papers_in", ps.papers_in},
                       {"papers_missing_doi", ps.papers_missing_doi},
                       {"papers_out_of_range", ps.papers_out_of_range},
                       {"records_dropped", ps.records_dropped}};
  j["matrix"] = {{"papers", bd.papers},
                 {"papers_without_discipline", bd.papers_without_discipline},
                 {"records_without_discipline", bd.records_without_discipline},
                 {"unknown_codes", bd.unknown_codes},
                 {"papers_with_conflicting_year", bd.papers_with_conflicting_year}};
  write_json("counts.json", j.dump());
}

namespace {

CountMatrix load_counts(const std::string& meta_text, const std::string& csv_text, const std::string& dir) {
  const std::string meta_name = (fs::path(dir) / "counts.json").string();
  const json meta = parse_json(meta_text, meta_name);
  const auto rows = json_field<std::vector<std::string>>(meta, "rows", meta_name);
  const auto cols = json_field<std::vector<std::string>>(meta, "cols", meta_name);
  auto papers = json_field<std::vector<std::int64_t>>(meta, "software_papers", meta_name);
  if (papers.size() != cols.size()) throw DataError(meta_name + ": software_papers length mismatch");
  std::istringstream in(csv_text);
  CountMatrix m = read_count_matrix(in, rows, cols, (fs::path(dir) / "counts.csv").string());
  m.software_papers = std::move(papers);
  m.year_range = {json_field<int>(meta, "year_first", meta_name), json_field<int>(meta, "year_last", meta_name)};
  return m;
}

SpecializationSet read_specialization(const std::string& text, const std::string& name, const CountMatrix& m,
                                      double threshold, Comparison cmp) {
  std::istringstream in(text);
  io::Table t = io::read_table(in, name);
  const auto c_d = t.column("discipline"), c_s = t.column("software");
  SpecializationSet s;
  s.threshold = threshold;
  s.comparison = cmp;
  s.disciplines = m.rows;
  for (const auto& d : m.rows) s.members[d];
  for (const auto& row : t.rows) {
    auto it = s.members.find(row[c_d]);
    if (it == s.members.end()) throw DataError(name + ": unknown discipline '" + row[c_d] + "'");
    if (!m.col_index(row[c_s])) throw DataError(name + ": unknown software '" + row[c_s] + "'");
    it->second.insert(row[c_s]);
  }
  return s;
}

}  // namespace

void Pipeline::rca() {
  const auto tax = load_taxonomy(config_, inputs_);
  const auto m = load_counts(read_input(out_path("counts.json")), read_input(out_path("counts.csv")),
                             config_.output_dir);
  const auto r = softspace::rca(m);
  const auto spec = specialize(r, config_.threshold, config_.inclusive ? Comparison::Inclusive : Comparison::Strict);

  std::ostringstream rc;
  write_rca(rc, r);
  write_text("rca.csv", rc.str());
  std::vector<std::string> labels;
  for (const auto& d : r.rows) labels.push_back(tax.label_of(d));
  write_json("rca_heatmap.json", rca_heatmap_json(r, labels));

  std::ostringstream sp;
  io::write_row(sp, {"discipline", "software"});
  for (const auto& d : spec.disciplines)
    for (const auto& s : spec.of(d)) io::write_row(sp, {d, s});
  write_text("specialization.csv", sp.str());
}

void Pipeline::proximity() {
  const auto m = load_counts(read_input(out_path("counts.json")), read_input(out_path("counts.csv")),
                             config_.output_dir);
  const auto spec = read_specialization(read_input(out_path("specialization.csv")),
                                        out_path("specialization.csv").string(), m, config_.threshold,
                                        config_.inclusive ? Comparison::Inclusive : Comparison::Strict);
  const auto p = softspace::proximity(spec, m.cols);
  std::map<std::string, NodeAttributes> attrs;
  for (std::size_t c = 0; c < m.n_cols(); ++c) attrs[m.cols[c]] = {m.software_papers[c], std::nullopt};
  const auto net = to_network(p, attrs);

  std::ostringstream e, n;
  write_edge_list(e, net);
  write_node_table(n, net, &p);
  write_text("proximity_edges.csv", e.str());
  write_text("proximity_nodes.csv", n.str());
  if (config_.graphml) {
    std::ostringstream g;
    write_graphml(g, net);
    commit("proximity.graphml", g.str());
  }
}

namespace {

ProximityNetwork load_network(const std::string& nodes, const std::string& edges, const std::string& dir) {
  std::istringstream ni(nodes), ei(edges);
  return read_network(ni, ei, (fs::path(dir) / "proximity_*.csv").string());
}

}  // namespace

void Pipeline::backbone() {
  const auto net = load_network(read_input(out_path("proximity_nodes.csv")),
                                read_input(out_path("proximity_edges.csv")), config_.output_dir);
  const auto bb = softspace::backbone(net, config_.alpha, config_.mst);
  std::ostringstream b;
  write_backbone(b, bb);
  write_text("backbone.csv", b.str());
  if (config_.graphml) {
    std::ostringstream g;
    write_backbone_graphml(g, net, bb);
    commit("backbone.graphml", g.str());
  }
}

void Pipeline::communities() {
  const auto tax = load_taxonomy(config_, inputs_);
  const auto net = load_network(read_input(out_path("proximity_nodes.csv")),
                                read_input(out_path("proximity_edges.csv")), config_.output_dir);
  const auto m = load_counts(read_input(out_path("counts.json")), read_input(out_path("counts.csv")),
                             config_.output_dir);
  SbmConfig sc;
  sc.multiplicity_scale = config_.multiplicity;
  sc.sweeps = config_.sweeps;
  sc.merge_fraction = config_.merge_fraction;
  sc.restarts = config_.restarts;
  const auto fit = fit_sbm_detailed(net, derive_seed(config_.seed, "communities"), sc);
  const auto summaries = describe_communities(fit.assignment, m);

  std::ostringstream a;
  write_assignment(a, fit.assignment);
  write_text("communities.csv", a.str());
  json report = json::parse(communities_report_json(fit.assignment, summaries, tax));
  json traj = json::array();
  for (const auto& [b, dl] : fit.trajectory) traj.push_back({{"blocks", b}, {"description_length_nats", dl}});
  report["trajectory"] = std::move(traj);
  write_json("communities.json", report.dump());
}

void Pipeline::portfolio() {
  const auto tax = load_taxonomy(config_, inputs_);
  const auto m = load_counts(read_input(out_path("counts.json")), read_input(out_path("counts.csv")),
                             config_.output_dir);
  CommunityAssignment a;
  {
    std::istringstream in(read_input(out_path("communities.csv")));
    a = read_assignment(in, out_path("communities.csv").string());
  }
  const auto spec = read_specialization(read_input(out_path("specialization.csv")),
                                        out_path("specialization.csv").string(), m, config_.threshold,
                                        config_.inclusive ? Comparison::Inclusive : Comparison::Strict);
  const auto cr = community_rca(m, a);
  std::ostringstream rc;
  write_rca(rc, cr.rca);
  write_text("community_rca.csv", rc.str());
  std::vector<std::string> labels;
  for (const auto& d : cr.rca.rows) labels.push_back(tax.label_of(d));
  write_json("community_rca_heatmap.json", rca_heatmap_json(cr.rca, labels));

  std::ostringstream pf;
  io::write_row(pf, {"discipline", "category", "n_specialized", "hhi", "unassigned"});
  for (const auto& d : m.rows) {
    HhiDiagnostics diag;
    const auto h = hhi(spec, a, d, &diag);
    io::write_row(pf, {d, category_name(tax, d), std::to_string(spec.of(d).size()),
                       h ? io::format_double(*h) : "NA", std::to_string(diag.unassigned_tools)});
  }
  write_text("portfolio.csv", pf.str());
}

void Pipeline::dynamics() {
  const auto tax = load_taxonomy(config_, inputs_);
  const auto m = load_counts(read_input(out_path("counts.json")), read_input(out_path("counts.csv")),
                             config_.output_dir);
  std::vector<MentionRecord> records;
  {
    std::istringstream in(read_input(out_path("records.curated.csv")));
    records = read_records(in, out_path("records.curated.csv").string());
  }
  CommunityAssignment a;
  {
    std::istringstream in(read_input(out_path("communities.csv")));
    a = read_assignment(in, out_path("communities.csv").string());
  }
  const auto windows = make_windows(config_.years, config_.window_length, config_.window_step);
  std::vector<std::string> divisions;
  for (const auto& d : tax.divisions()) divisions.push_back(d.code);
  const auto series = portfolio_series(records, windows, tax, m.cols, a, divisions);
  const auto stats = category_aggregate(series, tax);
  std::ostringstream s, c;
  write_portfolio_series(s, series);
  write_category_aggregate(c, stats);
  write_text("dynamics.csv", s.str());
  write_text("dynamics_categories.csv", c.str());
}

void Pipeline::powerlaw() {
  const std::string name = out_path("software_totals.csv").string();
  std::istringstream in(read_input(name));
  io::Table t = io::read_table(in, name);
  const auto c_p = t.column("papers");
  std::vector<std::int64_t> totals;
  for (const auto& row : t.rows) {
    const auto v = io::parse_int(row[c_p], "papers");
    if (v > 0) totals.push_back(v);
  }
  const std::optional<std::int64_t> xmin =
      config_.powerlaw_xmin > 0 ? std::optional<std::int64_t>(config_.powerlaw_xmin) : std::nullopt;
  const auto fit = fit_power_law(totals, xmin);
  std::optional<GofBootstrap> gof;
  if (config_.bootstrap > 0)
    gof = bootstrap_gof(totals, fit, static_cast<std::size_t>(config_.bootstrap), derive_seed(config_.seed, "powerlaw"));
  write_json("powerlaw.json", power_law_json(fit, totals.size(), gof));
  std::ostringstream cc;
  write_ccdf(cc, binned_ccdf(totals, fit));
  write_text("powerlaw_ccdf.csv", cc.str());
}

void Pipeline::synth() {
  synth::SynthConfig sc;
  sc.n_disciplines = config_.synth_disciplines;
  sc.n_tools = config_.synth_tools;
  sc.n_papers = config_.synth_papers;
  if (config_.synth_blocks > 0) sc.planted_blocks = config_.synth_blocks;
  if (config_.synth_tail > 0.0) sc.tail_exponent = config_.synth_tail;
  sc.noise = config_.synth_noise;
  sc.years = config_.years;
  sc.seed = derive_seed(config_.seed, "synth");
  const auto records = synth::generate_corpus(sc);
  std::ostringstream c;
  write_records(c, records);
  write_text("corpus.csv", c.str());
  std::ostringstream a;
  io::write_row(a, {"alias", "canonical"});
  for (const auto& [k, v] : synth::generate_aliases(sc)) io::write_row(a, {k, v});
  write_text("aliases.csv", a.str());
}

}  // namespace softspace
