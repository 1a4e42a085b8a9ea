#pragma once

#include <string>
#include <vector>

#include "vrvw/fields.hpp"

namespace vrvw {

// Field-file container.  On-disk layout:
//   magic "VRVW" | version u32 LE | header length u32 LE | UTF-8 JSON header |
//   payload of little-endian IEEE-754 float64.
// The JSON header is {"grid":{"n":...,"h":...},"fields":[{"name","kind","offset","count"},...]}
// with offset and count in units of float64 into the payload.  Per field the
// payload is site-lexicographic (x4 slowest, x1 fastest) with the component
// index innermost (mu-major Lie coordinates for 1-forms, (a,j) row-major for
// plus-forms).  Round-trips are bit-exact.

struct FieldFileEntry {
  std::string name;
  std::string kind;  ///< one of "connection", "oneform", "plusform", "scalar"
  Eigen::VectorXd values;
};

struct FieldFile {
  TorusGrid grid;
  std::vector<FieldFileEntry> entries;

  const FieldFileEntry& find(const std::string& name) const;
};

void save_fields(const std::string& path, const FieldFile& file);
FieldFile load_fields(const std::string& path);

namespace detail {
template <class Kind> struct KindTraits;
template <> struct KindTraits<ScalarLieKind> {
  static bool matches(const std::string& k) { return k == "scalar"; }
};
template <> struct KindTraits<OneFormKind> {
  static bool matches(const std::string& k) { return k == "oneform" || k == "connection"; }
};
template <> struct KindTraits<PlusFormKind> {
  static bool matches(const std::string& k) { return k == "plusform"; }
};
}  // namespace detail

template <class Kind>
void add_field(FieldFile& file, const std::string& name, const std::string& kind,
               const LatticeField<Kind>& f)
{
  if (!detail::KindTraits<Kind>::matches(kind))
    throw std::invalid_argument("add_field: kind '" + kind + "' does not match field type");
  if (!file.entries.empty() || file.grid.sites() > 0) {
    if (!(file.grid == f.grid) && !file.entries.empty())
      throw std::invalid_argument("add_field: grid mismatch within one file");
  }
  file.grid = f.grid;
  FieldFileEntry e;
  e.name = name;
  e.kind = kind;
  e.values = Eigen::Map<const Eigen::VectorXd>(f.data.data(), f.data.size());
  file.entries.push_back(std::move(e));
}

template <class Kind>
LatticeField<Kind> field_as(const FieldFile& file, const std::string& name)
{
  const FieldFileEntry& e = file.find(name);
  if (!detail::KindTraits<Kind>::matches(e.kind))
    throw std::runtime_error("field '" + name + "' has kind '" + e.kind +
                             "', incompatible with the requested type");
  LatticeField<Kind> f(file.grid);
  if (e.values.size() != f.data.size())
    throw std::runtime_error("field '" + name + "' has inconsistent size");
  Eigen::Map<Eigen::VectorXd>(f.data.data(), f.data.size()) = e.values;
  return f;
}

}  // namespace vrvw
