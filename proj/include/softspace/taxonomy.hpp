#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace softspace {

enum class Category { NaturalHealth, PhysicalTechnical, SocialHumanities };

std::string_view to_string(Category c);
// Accepts the enum spelling ("NaturalHealth") or the display label
// ("Natural & Health Sciences").
std::optional<Category> parse_category(std::string_view s);
std::string_view display_name(Category c);

enum class Level { Division, Group };
std::string_view to_string(Level l);
Level parse_level(std::string_view s);

struct Division {
  std::string code;
  std::string label;
  Category category;
};

struct Group {
  std::string code;
  std::string label;
  std::string parent;
};

// Two-level discipline classification (2-digit divisions, 4-digit groups)
// with a broad category attached to every division.
class DisciplineTaxonomy {
 public:
  // The 22 ANZSRC 2020 Fields of Research divisions used in the study and
  // their three-way category mapping. Groups are left open: any 4-digit code
  // whose prefix is a known division is accepted at group level.
  static DisciplineTaxonomy anzsrc_default();

  // Delimited file with columns code,label,parent_code,category. Division rows
  // have an empty parent and a category; group rows name their parent.
  static DisciplineTaxonomy load(const std::string& path);

  static DisciplineTaxonomy from_parts(std::vector<Division> divisions, std::vector<Group> groups);

  const std::vector<Division>& divisions() const { return divisions_; }
  const std::vector<Group>& groups() const { return groups_; }

  const Division* find_division(std::string_view code) const;
  const Group* find_group(std::string_view code) const;
  std::optional<Category> category_of(std::string_view division_code) const;
  std::string label_of(std::string_view code) const;

  // Maps a raw discipline code (2, 4 or 6 digits) to the row code used at the
  // requested level, or nullopt when the code cannot be placed.
  std::optional<std::string> resolve(std::string_view raw_code, Level level) const;

 private:
  void validate() const;
  void reindex();

  std::vector<Division> divisions_;
  std::vector<Group> groups_;
  std::map<std::string, std::size_t, std::less<>> division_index_;
  std::map<std::string, std::size_t, std::less<>> group_index_;
};

}  // namespace softspace
