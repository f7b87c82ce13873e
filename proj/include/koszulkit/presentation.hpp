#pragma once

#include "koszulkit/errors.hpp"
#include "koszulkit/field.hpp"

#include <string>
#include <vector>

namespace koszulkit {

struct Arrow {
  std::string name;
  int src, tgt;  // vertex indices
  int weight;    // grading weight, >= 0
};

struct Quiver {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;

  int vertex_index(const std::string& name) const;  // -1 if unknown
  int arrow_index(const std::string& name) const;
};

/// A path written in diagrammatic order: the first listed arrow is applied
/// first. An empty arrow list is the trivial path at start_vertex.
///
/// Note on transcription: the source paper for the corpus examples writes
/// compositions in function order, so its relation "xi alpha" (alpha first)
/// becomes the diagrammatic word alpha*xi here.
struct PathWord {
  std::vector<int> arrows;  // indices into Quiver::arrows
  int start_vertex = -1;    // used when arrows is empty

  int source(const Quiver& q) const;
  int target(const Quiver& q) const;
  int weight(const Quiver& q) const;
  bool composable(const Quiver& q) const;
  std::string str(const Quiver& q) const;  // "x*y" or "e_v"
};

struct RelTerm {
  Rational coeff;
  PathWord path;
};

struct Relation {
  std::vector<RelTerm> terms;
  std::string text;  // the source string, for diagnostics
};

struct Limits {
  int weight_max = 1;        // internal degree window D
  int nilpotency_bound = 1;  // declared bound N on the A0 radical index
  int hom_max = 1;           // homological degree window n_max
  int jpower_max = 1;        // radical powers J^k computed for k <= jpower_max
};

struct Presentation {
  FieldSpec field;
  Quiver quiver;
  std::vector<Relation> relations;
  Limits limits;
  std::vector<std::string> tasks;
};

extern const std::vector<std::string> kKnownTasks;

/// Parses the sectioned text input format (header "format = 1", then
/// [field], [quiver], [relations], [limits], [tasks]).
/// Throws ParseError with line/column on malformed input.
Presentation parse_presentation(const std::string& text);

/// Inverse of parse_presentation up to whitespace: parse(serialize(p)) == p.
std::string serialize_presentation(const Presentation& p);

/// Every relation must be parallel (shared source and target) and
/// weight-homogeneous. Throws ParseError naming the offending relation.
void validate_homogeneity(const Presentation& p);

/// Reverses all arrows and all relation words; limits, field and tasks
/// carry over. opposite(opposite(p)) == p.
Presentation opposite(const Presentation& p);

bool operator==(const Presentation& a, const Presentation& b);

}  // namespace koszulkit
