#include "dtkg/partition.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "dtkg/errors.hpp"
#include "dtkg/schema.hpp"

namespace dtkg {

std::string CoverageItem::str() const {
  return "(" + target.str() + ", " +
         (quality_type ? quality_type->str() : std::string("PART-PRESENCE")) + ")";
}

std::string_view order_name(FidelityOrder order) {
  switch (order) {
    case FidelityOrder::Higher: return "Higher";
    case FidelityOrder::Lower: return "Lower";
    case FidelityOrder::Equal: return "Equal";
    case FidelityOrder::Incomparable: return "Incomparable";
  }
  return "";
}

bool is_proper_part(const Graph& graph, const Term& part, const Term& whole) {
  std::set<Term> seen;
  std::vector<Term> stack{whole};
  while (!stack.empty()) {
    Term t = stack.back();
    stack.pop_back();
    for (const auto& a : graph.find(t, vocab::hasProperContinuantPart(), std::nullopt)) {
      if (a.object == part) return true;
      if (seen.insert(a.object).second) stack.push_back(a.object);
    }
  }
  return false;
}

namespace {

void require_material(const Graph& graph, const Term& t) {
  if (!graph.mentions(t)) throw UnknownIndividual(t.str() + " does not occur in the graph");
  if (!graph.has_type(t, vocab::MaterialEntity())) {
    throw NotMaterialEntity(t.str() + " is not typed as a material entity");
  }
}

void require_proper_part(const Graph& graph, const Term& part, const Term& whole) {
  if (!is_proper_part(graph, part, whole)) {
    throw NotAProperPart(part.str() + " is not a proper part of " + whole.str());
  }
}

void visit(const Cell& cell, const std::function<void(const Cell&, const Cell*)>& fn,
           const Cell* parent = nullptr) {
  fn(cell, parent);
  for (const auto& child : cell.children) visit(child, fn, &cell);
}

Cell* find_mutable(Cell& cell, const std::string& id) {
  if (cell.id == id) return &cell;
  for (auto& child : cell.children) {
    if (Cell* found = find_mutable(child, id)) return found;
  }
  return nullptr;
}

std::set<std::string> cell_ids(const Cell& root) {
  std::set<std::string> ids;
  visit(root, [&](const Cell& c, const Cell*) { ids.insert(c.id); });
  return ids;
}

// Local name of target, suffixed -2, -3, ... while taken.
std::string fresh_id(const Term& target, const std::set<std::string>& taken) {
  std::string base = target.local();
  std::string id = base;
  for (int n = 2; taken.contains(id); ++n) id = base + "-" + std::to_string(n);
  return id;
}

void require_present(const Partition& p, const Graph& graph) {
  visit(p.root, [&](const Cell& c, const Cell*) {
    if (!graph.mentions(c.target)) {
      throw StalePartition("cell " + c.id + " projects onto " + c.target.str() +
                           ", which is no longer in the graph");
    }
  });
}

}  // namespace

const Cell* find_cell(const Partition& partition, const std::string& id) {
  return find_mutable(const_cast<Cell&>(partition.root), id);
}

Partition create_partition(const Graph& graph, const Term& root_target,
                           const std::set<Term>& tracked) {
  require_material(graph, root_target);
  return Partition{Cell{fresh_id(root_target, {}), root_target, tracked, {}}, {}};
}

Partition refine(const Partition& partition, const Graph& graph, const std::string& parent_cell_id,
                 const Term& new_target, const std::set<Term>& tracked) {
  Partition out = partition;
  Cell* parent = find_mutable(out.root, parent_cell_id);
  if (!parent) throw UnknownCell("no cell with id '" + parent_cell_id + "'");
  require_material(graph, new_target);
  require_proper_part(graph, new_target, parent->target);
  for (const auto& sibling : parent->children) {
    if (sibling.target == new_target) {
      throw DuplicateSiblingTarget("cell " + parent->id + " already has a child projecting onto " +
                                   new_target.str());
    }
  }
  parent->children.push_back(Cell{fresh_id(new_target, cell_ids(out.root)), new_target, tracked, {}});
  return out;
}

Partition extend_root(const Partition& partition, const Graph& graph, const Term& new_root_target,
                      const std::set<Term>& tracked) {
  require_material(graph, new_root_target);
  require_proper_part(graph, partition.root.target, new_root_target);
  Partition out;
  out.graph_ref = partition.graph_ref;
  out.root = Cell{fresh_id(new_root_target, cell_ids(partition.root)), new_root_target, tracked,
                  {partition.root}};
  return out;
}

void check_partition(const Partition& partition, const Graph& graph) {
  require_present(partition, graph);
  std::set<std::string> ids;
  visit(partition.root, [&](const Cell& c, const Cell* parent) {
    if (c.id.empty()) throw MalformedPartition("cell with empty id");
    if (!ids.insert(c.id).second) throw MalformedPartition("duplicate cell id '" + c.id + "'");
    require_material(graph, c.target);
    for (const auto& q : c.tracked) {
      if (!graph.has_class(q) || !graph.is_subclass_of(q, vocab::Quality())) {
        throw MalformedPartition("cell " + c.id + " tracks " + q.str() +
                                 ", which is not a quality type");
      }
    }
    if (parent) require_proper_part(graph, c.target, parent->target);
    std::set<Term> targets;
    for (const auto& child : c.children) {
      if (!targets.insert(child.target).second) {
        throw DuplicateSiblingTarget("cell " + c.id + " has two children projecting onto " +
                                     child.target.str());
      }
    }
  });
}

Coverage coverage(const Partition& partition, const Graph& graph) {
  require_present(partition, graph);
  Coverage items;
  visit(partition.root, [&](const Cell& c, const Cell*) {
    items.insert({c.target, std::nullopt});
    for (const auto& q : c.tracked) items.insert({c.target, q});
  });
  return items;
}

FidelityOrder compare_fidelity(const Partition& a, const Partition& b, const Graph& graph) {
  Coverage ca = coverage(a, graph);
  Coverage cb = coverage(b, graph);
  if (ca == cb) return FidelityOrder::Equal;
  if (std::includes(ca.begin(), ca.end(), cb.begin(), cb.end())) return FidelityOrder::Higher;
  if (std::includes(cb.begin(), cb.end(), ca.begin(), ca.end())) return FidelityOrder::Lower;
  return FidelityOrder::Incomparable;
}

namespace {

class PartitionParser {
 public:
  explicit PartitionParser(std::string_view text) : text_(text) {}

  Cell parse() {
    std::vector<Cell*> stack;  // stack[d] = last cell at depth d
    std::optional<Cell> root;
    std::set<std::string> ids;
    std::size_t number = 0;
    std::size_t start = 0;
    while (start <= text_.size()) {
      std::size_t end = text_.find('\n', start);
      if (end == std::string_view::npos) end = text_.size();
      ++number;
      line_ = text_.substr(start, end - start);
      if (!line_.empty() && line_.back() == '\r') line_.remove_suffix(1);
      line_number_ = number;
      if (auto hash = line_.find('#'); hash != std::string_view::npos) {
        line_ = line_.substr(0, hash);
      }
      if (line_.find_first_not_of(" \t") != std::string_view::npos) {
        std::size_t indent = line_.find_first_not_of(' ');
        if (line_[indent] == '\t') fail("tabs are not allowed in indentation", indent + 1);
        if (indent % 2 != 0) fail("indentation must be a multiple of two spaces", indent + 1);
        std::size_t depth = indent / 2;
        pos_ = indent;
        Cell cell = parse_cell();
        if (!ids.insert(cell.id).second) {
          throw MalformedPartition("line " + std::to_string(number) + ": duplicate cell id '" +
                                   cell.id + "'");
        }
        if (depth == 0) {
          if (root) {
            throw MalformedPartition("line " + std::to_string(number) + ": second root cell");
          }
          root = std::move(cell);
          stack = {&*root};
        } else {
          if (depth > stack.size()) fail("cell is indented more than one level", indent + 1);
          stack.resize(depth);
          Cell* parent = stack.back();
          parent->children.push_back(std::move(cell));
          stack.push_back(&parent->children.back());
        }
      }
      if (end == text_.size()) break;
      start = end + 1;
    }
    if (!root) throw MalformedPartition("partition has no cells");
    return std::move(*root);
  }

 private:
  [[noreturn]] void fail(const std::string& what, std::size_t column) const {
    throw SyntaxError(line_number_, column, what);
  }
  [[noreturn]] void fail(const std::string& what) const { fail(what, pos_ + 1); }

  void skip_spaces() {
    while (pos_ < line_.size() && (line_[pos_] == ' ' || line_[pos_] == '\t')) ++pos_;
  }

  void keyword(std::string_view word) {
    skip_spaces();
    if (line_.substr(pos_, word.size()) != word) fail("expected '" + std::string(word) + "'");
    pos_ += word.size();
  }

  std::string token() {
    skip_spaces();
    std::size_t begin = pos_;
    while (pos_ < line_.size() && line_[pos_] != ' ' && line_[pos_] != '\t' &&
           line_[pos_] != ',' && line_[pos_] != '{' && line_[pos_] != '}') {
      ++pos_;
    }
    if (pos_ == begin) fail("expected a name");
    return std::string(line_.substr(begin, pos_ - begin));
  }

  Term term() {
    skip_spaces();
    std::size_t begin = pos_;
    std::string text = token();
    try {
      return Term::parse_qname(text);
    } catch (const InvalidTerm&) {
      fail("'" + text + "' is not a prefixed name", begin + 1);
    }
  }

  Cell parse_cell() {
    Cell cell;
    keyword("cell");
    cell.id = token();
    keyword("->");
    cell.target = term();
    keyword("tracks");
    keyword("{");
    skip_spaces();
    if (pos_ < line_.size() && line_[pos_] == '}') {
      ++pos_;
    } else {
      while (true) {
        cell.tracked.insert(term());
        skip_spaces();
        if (pos_ < line_.size() && line_[pos_] == ',') {
          ++pos_;
          continue;
        }
        keyword("}");
        break;
      }
    }
    skip_spaces();
    if (pos_ != line_.size()) fail("unexpected text after cell");
    return cell;
  }

  std::string_view text_;
  std::string_view line_;
  std::size_t line_number_ = 0;
  std::size_t pos_ = 0;
};

void write_cell(const Cell& cell, int depth, std::string& out) {
  out += std::string(depth * 2, ' ') + "cell " + cell.id + " -> " + cell.target.str() + " tracks {";
  bool first = true;
  for (const auto& q : cell.tracked) {
    if (!first) out += ", ";
    out += q.str();
    first = false;
  }
  out += "}\n";
  for (const auto& child : cell.children) write_cell(child, depth + 1, out);
}

}  // namespace

Partition parse_partition(std::string_view text, std::string graph_ref) {
  return Partition{PartitionParser(text).parse(), std::move(graph_ref)};
}

std::string serialize_partition(const Partition& partition) {
  std::string out;
  write_cell(partition.root, 0, out);
  return out;
}

}  // namespace dtkg
