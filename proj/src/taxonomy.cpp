#include "softspace/taxonomy.hpp"

#include <set>

#include "softspace/delimited.hpp"
#include "softspace/error.hpp"

namespace softspace {

std::string_view to_string(Category c) {
  switch (c) {
    case Category::NaturalHealth: return "NaturalHealth";
    case Category::PhysicalTechnical: return "PhysicalTechnical";
    case Category::SocialHumanities: return "SocialHumanities";
  }
  return "?";
}

std::string_view display_name(Category c) {
  switch (c) {
    case Category::NaturalHealth: return "Natural & Health Sciences";
    case Category::PhysicalTechnical: return "Physical & Technical Sciences";
    case Category::SocialHumanities: return "Social Sciences & Humanities";
  }
  return "?";
}

std::optional<Category> parse_category(std::string_view s) {
  for (auto c : {Category::NaturalHealth, Category::PhysicalTechnical, Category::SocialHumanities}) {
    if (s == to_string(c) || s == display_name(c)) return c;
  }
  return std::nullopt;
}

std::string_view to_string(Level l) { return l == Level::Division ? "division" : "group"; }

Level parse_level(std::string_view s) {
  if (s == "division") return Level::Division;
  if (s == "group") return Level::Group;
  throw ArgumentError("level must be 'division' or 'group', got '" + std::string(s) + "'");
}

DisciplineTaxonomy DisciplineTaxonomy::anzsrc_default() {
  using C = Category;
  std::vector<Division> d = {
      {"30", "Agricultural, Veterinary and Food Sciences", C::NaturalHealth},
      {"31", "Biological Sciences", C::NaturalHealth},
      {"32", "Biomedical and Clinical Sciences", C::NaturalHealth},
      {"33", "Built Environment and Design", C::SocialHumanities},
      {"34", "Chemical Sciences", C::PhysicalTechnical},
      {"35", "Commerce, Management, Tourism and Services", C::SocialHumanities},
      {"36", "Creative Arts and Writing", C::SocialHumanities},
      {"37", "Earth Sciences", C::NaturalHealth},
      {"38", "Economics", C::SocialHumanities},
      {"39", "Education", C::SocialHumanities},
      {"40", "Engineering", C::PhysicalTechnical},
      {"41", "Environmental Sciences", C::NaturalHealth},
      {"42", "Health Sciences", C::NaturalHealth},
      {"43", "History, Heritage and Archaeology", C::SocialHumanities},
      {"44", "Human Society", C::SocialHumanities},
      {"46", "Information and Computing Sciences", C::PhysicalTechnical},
      {"47", "Language, Communication and Culture", C::SocialHumanities},
      {"48", "Law and Legal Studies", C::SocialHumanities},
      {"49", "Mathematical Sciences", C::PhysicalTechnical},
      {"50", "Philosophy and Religious Studies", C::SocialHumanities},
      {"51", "Physical Sciences", C::PhysicalTechnical},
      {"52", "Psychology", C::SocialHumanities},
  };
  return from_parts(std::move(d), {});
}

DisciplineTaxonomy DisciplineTaxonomy::from_parts(std::vector<Division> divisions, std::vector<Group> groups) {
  DisciplineTaxonomy t;
  t.divisions_ = std::move(divisions);
  t.groups_ = std::move(groups);
  t.reindex();
  t.validate();
  return t;
}

void DisciplineTaxonomy::reindex() {
  division_index_.clear();
  group_index_.clear();
  for (std::size_t i = 0; i < divisions_.size(); ++i) {
    if (!division_index_.emplace(divisions_[i].code, i).second) {
      throw ConfigError("taxonomy: duplicate division code '" + divisions_[i].code + "'");
    }
  }
  for (std::size_t i = 0; i < groups_.size(); ++i) {
    if (!group_index_.emplace(groups_[i].code, i).second) {
      throw ConfigError("taxonomy: duplicate group code '" + groups_[i].code + "'");
    }
  }
}

void DisciplineTaxonomy::validate() const {
  if (divisions_.empty()) throw ConfigError("taxonomy: no divisions");
  for (const auto& g : groups_) {
    if (!division_index_.contains(g.parent)) {
      throw ConfigError("taxonomy: group '" + g.code + "' has unknown parent '" + g.parent + "'");
    }
    if (division_index_.contains(g.code)) {
      throw ConfigError("taxonomy: code '" + g.code + "' is both a division and a group");
    }
  }
}

DisciplineTaxonomy DisciplineTaxonomy::load(const std::string& path) {
  io::Table table = [&] {
    try {
      return io::read_table_file(path);
    } catch (const DataError& e) {
      throw ConfigError(e.what());
    }
  }();
  auto col = [&](std::string_view name) {
    auto c = table.find_column(name);
    if (!c) throw ConfigError("taxonomy '" + path + "': missing column '" + std::string(name) + "'");
    return *c;
  };
  const auto c_code = col("code"), c_label = col("label"), c_parent = col("parent_code"),
             c_cat = col("category");
  std::vector<Division> divisions;
  std::vector<Group> groups;
  for (const auto& row : table.rows) {
    std::string code = io::trim(row[c_code]);
    std::string parent = io::trim(row[c_parent]);
    std::string cat = io::trim(row[c_cat]);
    if (code.empty()) throw ConfigError("taxonomy '" + path + "': empty code");
    if (parent.empty()) {
      auto c = parse_category(cat);
      if (!c) throw ConfigError("taxonomy: division '" + code + "' has no valid category ('" + cat + "')");
      divisions.push_back({code, row[c_label], *c});
    } else {
      if (!cat.empty()) throw ConfigError("taxonomy: group '" + code + "' must not carry a category");
      groups.push_back({code, row[c_label], parent});
    }
  }
  return from_parts(std::move(divisions), std::move(groups));
}

const Division* DisciplineTaxonomy::find_division(std::string_view code) const {
  auto it = division_index_.find(code);
  return it == division_index_.end() ? nullptr : &divisions_[it->second];
}

const Group* DisciplineTaxonomy::find_group(std::string_view code) const {
  auto it = group_index_.find(code);
  return it == group_index_.end() ? nullptr : &groups_[it->second];
}

std::optional<Category> DisciplineTaxonomy::category_of(std::string_view division_code) const {
  const Division* d = find_division(division_code);
  if (!d) return std::nullopt;
  return d->category;
}

std::string DisciplineTaxonomy::label_of(std::string_view code) const {
  if (const Division* d = find_division(code)) return d->label;
  if (const Group* g = find_group(code)) return g->label;
  return std::string(code);
}

std::optional<std::string> DisciplineTaxonomy::resolve(std::string_view raw, Level level) const {
  std::string code = io::trim(raw);
  if (code.size() < 2) return std::nullopt;
  if (level == Level::Division) {
    if (code.size() == 2) return find_division(code) ? std::optional(code) : std::nullopt;
    if (const Group* g = find_group(code.substr(0, 4))) return g->parent;
    std::string prefix = code.substr(0, 2);
    return find_division(prefix) ? std::optional(prefix) : std::nullopt;
  }
  if (code.size() < 4) return std::nullopt;
  std::string group = code.substr(0, 4);
  if (!groups_.empty()) return find_group(group) ? std::optional(group) : std::nullopt;
  return find_division(group.substr(0, 2)) ? std::optional(group) : std::nullopt;
}

}  // namespace softspace
