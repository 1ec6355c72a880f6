#include "softspace/config.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <sstream>

#include "softspace/delimited.hpp"
#include "softspace/error.hpp"

namespace softspace {

namespace {

struct Field {
  bool is_path;
  std::function<std::string(const PipelineConfig&)> get;
  std::function<void(PipelineConfig&, const std::string&)> put;
};

bool parse_bool(const std::string& v, const std::string& key) {
  const auto s = io::to_lower_ascii(v);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError("config key '" + key + "': expected true/false, got '" + v + "'");
}

std::string show_bool(bool b) { return b ? "true" : "false"; }

template <class T>
T as_int(const std::string& v, const std::string& key) {
  try {
    return static_cast<T>(io::parse_int(v, key));
  } catch (const Error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

double as_double(const std::string& v, const std::string& key) {
  try {
    return io::parse_double(v, key);
  } catch (const Error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

#define SS_PATH(name)                                                                             \
  {                                                                                               \
    #name, {                                                                                      \
      true, [](const PipelineConfig& c) { return c.name; },                                       \
          [](PipelineConfig& c, const std::string& v) { c.name = v; }                             \
    }                                                                                             \
  }
#define SS_INT(name, member)                                                                      \
  {                                                                                               \
    name, {                                                                                       \
      false, [](const PipelineConfig& c) { return std::to_string(c.member); },                    \
          [](PipelineConfig& c, const std::string& v) { c.member = as_int<decltype(c.member)>(v, name); } \
    }                                                                                             \
  }
#define SS_REAL(name, member)                                                                     \
  {                                                                                               \
    name, {                                                                                       \
      false, [](const PipelineConfig& c) { return io::format_double(c.member); },                 \
          [](PipelineConfig& c, const std::string& v) { c.member = as_double(v, name); }          \
    }                                                                                             \
  }
#define SS_BOOL(name, member)                                                                     \
  {                                                                                               \
    name, {                                                                                       \
      false, [](const PipelineConfig& c) { return show_bool(c.member); },                         \
          [](PipelineConfig& c, const std::string& v) { c.member = parse_bool(v, name); }         \
    }                                                                                             \
  }

// Ordered by key; save() emits this order.
const std::map<std::string, Field>& fields() {
  static const std::map<std::string, Field> f = {
      SS_PATH(aliases),
      SS_REAL("alpha", alpha),
      SS_INT("bootstrap", bootstrap),
      SS_BOOL("graphml", graphml),
      SS_BOOL("inclusive", inclusive),
      {"level",
       {false, [](const PipelineConfig& c) { return std::string(to_string(c.level)); },
        [](PipelineConfig& c, const std::string& v) {
          try {
            c.level = parse_level(v);
          } catch (const Error& e) {
            throw ConfigError(std::string("config: ") + e.what());
          }
        }}},
      SS_REAL("merge_fraction", merge_fraction),
      SS_BOOL("mst", mst),
      SS_INT("multiplicity", multiplicity),
      SS_PATH(output_dir),
      SS_REAL("percentile", percentile),
      SS_INT("powerlaw_xmin", powerlaw_xmin),
      SS_PATH(records),
      SS_BOOL("require_doi", require_doi),
      SS_INT("restarts", restarts),
      {"seed",
       {false, [](const PipelineConfig& c) { return std::to_string(c.seed); },
        [](PipelineConfig& c, const std::string& v) {
          std::uint64_t x = 0;
          const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
          if (ec != std::errc() || end != v.data() + v.size() || v.empty())
            throw ConfigError("config: invalid seed '" + v + "'");
          c.seed = x;
        }}},
      SS_INT("sweeps", sweeps),
      SS_INT("synth_blocks", synth_blocks),
      SS_INT("synth_disciplines", synth_disciplines),
      SS_REAL("synth_noise", synth_noise),
      SS_INT("synth_papers", synth_papers),
      SS_REAL("synth_tail", synth_tail),
      SS_INT("synth_tools", synth_tools),
      SS_PATH(taxonomy),
      SS_REAL("threshold", threshold),
      SS_INT("window_length", window_length),
      SS_INT("window_step", window_step),
      SS_INT("year_first", years.first),
      SS_INT("year_last", years.last),
  };
  return f;
}

#undef SS_PATH
#undef SS_INT
#undef SS_REAL
#undef SS_BOOL

std::string render(const PipelineConfig& c, bool with_paths) {
  std::string out;
  for (const auto& [key, f] : fields()) {
    if (f.is_path && !with_paths) continue;
    out += key + " = " + f.get(c) + "\n";
  }
  return out;
}

}  // namespace

void PipelineConfig::validate() const {
  if (years.last < years.first) throw ArgumentError("year_last must be >= year_first");
  if (!(percentile > 0.0 && percentile < 1.0)) throw ArgumentError("percentile must lie in (0, 1)");
  if (!(threshold > 0.0)) throw ArgumentError("threshold must be > 0");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("alpha must lie in (0, 1)");
  if (restarts < 1) throw ArgumentError("restarts must be >= 1");
  if (sweeps < 0) throw ArgumentError("sweeps must be >= 0");
  if (!(merge_fraction > 0.0 && merge_fraction <= 0.5)) throw ArgumentError("merge_fraction must lie in (0, 0.5]");
  if (multiplicity < 0) throw ArgumentError("multiplicity must be >= 0");
  if (window_length < 1) throw ArgumentError("window_length must be >= 1");
  if (window_step < 1) throw ArgumentError("window_step must be >= 1");
  if (powerlaw_xmin < 0) throw ArgumentError("powerlaw_xmin must be >= 0");
  if (bootstrap < 0) throw ArgumentError("bootstrap must be >= 0");
  if (synth_tail != 0.0 && !(synth_tail > 1.0)) throw ArgumentError("synth_tail must be 0 (off) or > 1");
  if (!(synth_noise >= 0.0 && synth_noise <= 1.0)) throw ArgumentError("synth_noise must lie in [0, 1]");
  if (synth_blocks < 0) throw ArgumentError("synth_blocks must be >= 0");
}

void PipelineConfig::set(const std::string& key, const std::string& value) {
  auto it = fields().find(key);
  if (it == fields().end()) throw ConfigError("unknown config key '" + key + "'");
  it->second.put(*this, value);
}

PipelineConfig PipelineConfig::parse(std::istream& in, const std::string& source_name) {
  PipelineConfig c;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto body = io::trim(line);
    if (body.empty() || body[0] == '#') continue;
    auto eq = body.find('=');
    if (eq == std::string::npos)
      throw ConfigError(source_name + ":" + std::to_string(lineno) + ": expected 'key = value'");
    c.set(io::trim(body.substr(0, eq)), io::trim(body.substr(eq + 1)));
  }
  return c;
}

PipelineConfig PipelineConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  return parse(in, path);
}

std::string PipelineConfig::save() const { return render(*this, true); }

std::string PipelineConfig::digest() const { return sha256_hex(render(*this, false)); }

std::string sha256_hex(const std::string& bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 || EVP_DigestFinal_ex(ctx.get(), md, &len) != 1)
    throw InvariantError("sha256 digest failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(kHex[md[i] >> 4]);
    out.push_back(kHex[md[i] & 15]);
  }
  return out;
}

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return sha256_hex(ss.str());
}

}  // namespace softspace
