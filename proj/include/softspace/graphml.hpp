#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace softspace::graphml {

enum class Domain { Node, Edge };
enum class Type { String, Int, Long, Double };

using Attributes = std::vector<std::pair<std::string, std::string>>;

// Streaming writer for an undirected GraphML document. Keys must be declared
// before begin_graph(); attribute names refer to declared keys.
class Writer {
 public:
  explicit Writer(std::ostream& out);

  void key(const std::string& name, Domain domain, Type type);
  void begin_graph();
  void node(const std::string& id, const Attributes& attrs);
  void edge(const std::string& source, const std::string& target, const Attributes& attrs);
  void end_graph();

 private:
  std::string key_id(const std::string& name, Domain domain) const;

  std::ostream& out_;
  std::vector<std::pair<std::string, Domain>> keys_;
};

std::string escape(const std::string& s);

}  // namespace softspace::graphml
