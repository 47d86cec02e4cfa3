#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "pmsr/error.hpp"
#include "pmsr/topology.hpp"

namespace pmsr {
namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void throw_if_invalid(const Topology& topology) {
  if (auto diagnostics = validate(topology); !diagnostics.empty()) {
    throw ValidationError(std::move(diagnostics));
  }
}

const json& require(const json& object, const char* key, const char* where) {
  auto it = object.find(key);
  if (it == object.end()) {
    throw ParseError(std::string(where) + ": missing field '" + key + "'");
  }
  return *it;
}

}  // namespace

Topology parse_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("topology JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("topology JSON: top level must be an object");
  const auto& jnodes = require(doc, "nodes", "topology JSON");
  const auto& jedges = require(doc, "edges", "topology JSON");
  if (!jnodes.is_array() || !jedges.is_array()) {
    throw ParseError("topology JSON: 'nodes' and 'edges' must be arrays");
  }

  std::vector<Node> nodes;
  std::map<std::string, NodeId> by_name;
  std::vector<std::string> problems;
  for (const auto& jn : jnodes) {
    const auto& name = require(jn, "name", "node");
    if (!name.is_string()) throw ParseError("node: 'name' must be a string");
    Node node;
    node.id = static_cast<NodeId>(nodes.size());
    node.name = name.get<std::string>();
    if (auto it = jn.find("loopback"); it != jn.end()) {
      if (!it->is_string()) throw ParseError("node: 'loopback' must be a string");
      node.loopback = Ipv4Address::parse(it->get<std::string>());
    } else {
      node.loopback = auto_loopback(node.id);
    }
    if (!by_name.emplace(node.name, node.id).second) {
      problems.push_back("duplicate node name '" + node.name + "'");
    }
    nodes.push_back(std::move(node));
  }

  std::vector<Link> links;
  for (const auto& je : jedges) {
    auto endpoint = [&](const char* key) {
      const auto& v = require(je, key, "edge");
      if (!v.is_string()) throw ParseError(std::string("edge: '") + key + "' must be a string");
      auto it = by_name.find(v.get<std::string>());
      if (it == by_name.end()) {
        throw ParseError("edge: unknown node '" + v.get<std::string>() + "'");
      }
      return it->second;
    };
    const NodeId a = endpoint("a");
    const NodeId b = endpoint("b");
    const auto& jcost = require(je, "cost", "edge");
    const auto& jcap = require(je, "capacity", "edge");
    if (!jcost.is_number_integer()) throw ParseError("edge: 'cost' must be an integer");
    if (!jcap.is_number()) throw ParseError("edge: 'capacity' must be a number");
    const auto cost = jcost.get<Cost>();
    const auto capacity = jcap.get<double>();
    links.push_back(Link{a, b, cost, capacity});
    links.push_back(Link{b, a, cost, capacity});
  }
  if (!problems.empty()) throw ValidationError(std::move(problems));

  Topology topology(std::move(nodes), std::move(links));
  throw_if_invalid(topology);
  return topology;
}

Topology load_json(const std::filesystem::path& path) {
  return parse_json(read_file(path));
}

std::string emit_json(const Topology& topology) {
  json doc;
  doc["nodes"] = json::array();
  for (const auto& node : topology.nodes()) {
    doc["nodes"].push_back({{"name", node.name}, {"loopback", node.loopback.to_string()}});
  }
  doc["edges"] = json::array();
  std::vector<bool> emitted(topology.link_count(), false);
  for (LinkId id = 0; id < topology.link_count(); ++id) {
    if (emitted[id]) continue;
    const auto& l = topology.link(id);
    auto reverse = topology.find_link(l.dst, l.src);
    if (!reverse || emitted[*reverse] || topology.link(*reverse).cost != l.cost ||
        topology.link(*reverse).capacity != l.capacity) {
      throw ValidationError({"link '" + topology.node(l.src).name + "'->'" +
                             topology.node(l.dst).name +
                             "' has no matching reverse link; JSON edges are undirected"});
    }
    emitted[id] = emitted[*reverse] = true;
    doc["edges"].push_back({{"a", topology.node(l.src).name},
                            {"b", topology.node(l.dst).name},
                            {"cost", l.cost},
                            {"capacity", l.capacity}});
  }
  return doc.dump(2) + "\n";
}

GraphmlImport parse_graphml(std::string_view text, Cost default_cost,
                            double default_capacity) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    std::istringstream in{std::string(text)};
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError(std::string("GraphML: ") + e.what());
  }
  auto root = tree.get_child_optional("graphml");
  if (!root) throw ParseError("GraphML: missing <graphml> root element");

  std::string label_key;
  for (const auto& [tag, child] : *root) {
    if (tag != "key") continue;
    if (child.get(pt::ptree::path_type("<xmlattr>/attr.name", '/'), "") == "label" &&
        child.get("<xmlattr>.for", "node") == "node") {
      label_key = child.get("<xmlattr>.id", "");
    }
  }
  auto graph = root->get_child_optional("graph");
  if (!graph) throw ParseError("GraphML: missing <graph> element");
  const bool directed = graph->get("<xmlattr>.edgedefault", "undirected") == "directed";

  GraphmlImport result;
  std::vector<Node> nodes;
  std::map<std::string, NodeId> by_xml_id;
  std::set<std::string> names;
  std::vector<std::pair<std::string, std::string>> raw_edges;
  for (const auto& [tag, child] : *graph) {
    if (tag == "node") {
      const auto xml_id = child.get("<xmlattr>.id", "");
      if (xml_id.empty()) throw ParseError("GraphML: <node> without id");
      std::string label;
      for (const auto& [dtag, data] : child) {
        if (dtag == "data" && !label_key.empty() &&
            data.get("<xmlattr>.key", "") == label_key) {
          label = data.data();
        }
      }
      std::string name = label.empty() ? xml_id : label;
      if (names.count(name)) {
        result.warnings.push_back("duplicate label '" + name + "' on node " + xml_id +
                                  "; renamed to '" + name + "#" + xml_id + "'");
        name += "#" + xml_id;
      }
      names.insert(name);
      Node node;
      node.id = static_cast<NodeId>(nodes.size());
      node.name = std::move(name);
      node.loopback = auto_loopback(node.id);
      if (!by_xml_id.emplace(xml_id, node.id).second) {
        throw ParseError("GraphML: duplicate node id '" + xml_id + "'");
      }
      nodes.push_back(std::move(node));
    } else if (tag == "edge") {
      raw_edges.emplace_back(child.get("<xmlattr>.source", ""),
                             child.get("<xmlattr>.target", ""));
    }
  }
  if (nodes.empty()) throw ParseError("GraphML: graph has no nodes");

  std::vector<Link> links;
  std::set<std::pair<NodeId, NodeId>> seen;
  for (const auto& [src_id, dst_id] : raw_edges) {
    auto s = by_xml_id.find(src_id);
    auto d = by_xml_id.find(dst_id);
    if (s == by_xml_id.end() || d == by_xml_id.end()) {
      throw ParseError("GraphML: edge references unknown node '" +
                       (s == by_xml_id.end() ? src_id : dst_id) + "'");
    }
    const NodeId a = s->second;
    const NodeId b = d->second;
    const auto edge_label = "'" + nodes[a].name + "'-'" + nodes[b].name + "'";
    if (a == b) {
      result.warnings.push_back("self-loop on '" + nodes[a].name + "' dropped");
      continue;
    }
    if (seen.count({a, b})) {
      result.warnings.push_back("parallel edge " + edge_label +
                                " collapsed into a single link");
      continue;
    }
    seen.insert({a, b});
    links.push_back(Link{a, b, default_cost, default_capacity});
    if (!directed) {
      seen.insert({b, a});
      links.push_back(Link{b, a, default_cost, default_capacity});
    }
  }

  result.topology = Topology(std::move(nodes), std::move(links));
  throw_if_invalid(result.topology);
  return result;
}

GraphmlImport load_graphml(const std::filesystem::path& path, Cost default_cost,
                           double default_capacity) {
  return parse_graphml(read_file(path), default_cost, default_capacity);
}

Topology load_topology(const std::filesystem::path& path) {
  if (path.extension() == ".graphml") return load_graphml(path, 1, 1e9).topology;
  return load_json(path);
}

}  // namespace pmsr
