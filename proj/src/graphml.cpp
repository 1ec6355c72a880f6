#include "softspace/graphml.hpp"

#include <ostream>

#include "softspace/error.hpp"

namespace softspace::graphml {

namespace {

const char* type_name(Type t) {
  switch (t) {
    case Type::String: return "string";
    case Type::Int: return "int";
    case Type::Long: return "long";
    case Type::Double: return "double";
  }
  return "string";
}

}  // namespace

std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

Writer::Writer(std::ostream& out) : out_(out) {
  out_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\"\n"
       << "    xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\"\n"
       << "    xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns "
          "http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n";
}

void Writer::key(const std::string& name, Domain domain, Type type) {
  keys_.emplace_back(name, domain);
  out_ << "  <key id=\"" << key_id(name, domain) << "\" for=\"" << (domain == Domain::Node ? "node" : "edge")
       << "\" attr.name=\"" << escape(name) << "\" attr.type=\"" << type_name(type) << "\"/>\n";
}

std::string Writer::key_id(const std::string& name, Domain domain) const {
  for (std::size_t i = 0; i < keys_.size(); ++i)
    if (keys_[i].first == name && keys_[i].second == domain) return "d" + std::to_string(i);
  throw InvariantError("graphml: undeclared key '" + name + "'");
}

void Writer::begin_graph() { out_ << "  <graph id=\"G\" edgedefault=\"undirected\">\n"; }

void Writer::node(const std::string& id, const Attributes& attrs) {
  out_ << "    <node id=\"" << escape(id) << "\">";
  for (const auto& [k, v] : attrs) out_ << "<data key=\"" << key_id(k, Domain::Node) << "\">" << escape(v) << "</data>";
  out_ << "</node>\n";
}

void Writer::edge(const std::string& source, const std::string& target, const Attributes& attrs) {
  out_ << "    <edge source=\"" << escape(source) << "\" target=\"" << escape(target) << "\">";
  for (const auto& [k, v] : attrs) out_ << "<data key=\"" << key_id(k, Domain::Edge) << "\">" << escape(v) << "</data>";
  out_ << "</edge>\n";
}

void Writer::end_graph() { out_ << "  </graph>\n</graphml>\n"; }

}  // namespace softspace::graphml
