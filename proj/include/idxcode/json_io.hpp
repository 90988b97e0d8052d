#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "idxcode/bounds.hpp"
#include "idxcode/digraph.hpp"
#include "idxcode/errors.hpp"
#include "idxcode/field.hpp"
#include "idxcode/homsearch.hpp"
#include "idxcode/lincode.hpp"
#include "idxcode/rational.hpp"
#include "idxcode/translate.hpp"

namespace idxcode {

/// nlohmann objects keep keys in sorted order, so every dump of the same
/// value is byte-identical; all machine output goes through this alias.
using Json = nlohmann::json;

namespace detail {

inline const Json& require_member(const Json& j, const char* key) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

inline int require_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  return j.get<int>();
}

}  // namespace detail

inline Json digraph_to_json(const Digraph& g) {
  Json j;
  j["n"] = g.order();
  Json edges = Json::array();
  for (const auto& [u, v] : g.arcs()) edges.push_back(Json::array({u, v}));
  j["edges"] = std::move(edges);
  const bool labeled = std::any_of(g.labels.begin(), g.labels.end(),
                                   [](const std::string& s) { return !s.empty(); });
  if (labeled) j["labels"] = g.labels;
  return j;
}

inline Digraph digraph_from_json(const Json& j) {
  const int n = detail::require_int(detail::require_member(j, "n"), "n");
  if (n < 0) throw ParseError("n must be nonnegative");
  Digraph g(n);
  const Json& edges = detail::require_member(j, "edges");
  if (!edges.is_array()) throw ParseError("edges must be an array");
  for (const Json& e : edges) {
    if (!e.is_array() || e.size() != 2) throw ParseError("each edge must be a pair [u, v]");
    g.add_arc(detail::require_int(e[0], "edge endpoint"), detail::require_int(e[1], "edge endpoint"));
  }
  if (j.contains("labels")) {
    const Json& labels = j.at("labels");
    if (!labels.is_array() || static_cast<int>(labels.size()) != n)
      throw ParseError("labels must list one string per vertex");
    g.labels.assign(static_cast<std::size_t>(n), "");
    for (int v = 0; v < n; ++v) {
      if (!labels[static_cast<std::size_t>(v)].is_string())
        throw ParseError("labels must list one string per vertex");
      g.labels[static_cast<std::size_t>(v)] = labels[static_cast<std::size_t>(v)].get<std::string>();
    }
  }
  return g;
}

inline Json vertex_map_to_json(const VertexMap& m) {
  Json j;
  j["map"] = m.map;
  return j;
}

inline VertexMap vertex_map_from_json(const Json& j, int source_size, int target_size) {
  const Json& arr = detail::require_member(j, "map");
  if (!arr.is_array()) throw ParseError("map must be an array");
  if (static_cast<int>(arr.size()) != source_size)
    throw ParseError("map must list one target vertex per source vertex");
  VertexMap m{source_size, target_size, {}};
  m.map.reserve(arr.size());
  for (const Json& t : arr) {
    const int v = detail::require_int(t, "map entry");
    if (v < 0 || v >= target_size) throw ParseError("map entry out of range");
    m.map.push_back(v);
  }
  return m;
}

inline Json linear_code_to_json(const LinearCode& c) {
  Json j;
  j["q"] = c.field().order();
  j["l"] = c.length();
  j["m"] = c.message_count();
  Json rows = Json::array();
  for (int r = 0; r < c.length(); ++r) {
    Json row = Json::array();
    for (int col = 0; col < c.message_count(); ++col)
      row.push_back(static_cast<int>(c.encoder().at(r, col)));
    rows.push_back(std::move(row));
  }
  j["encoder"] = std::move(rows);
  if (c.decoders) {
    Json ds = Json::array();
    for (const Decoder& d : *c.decoders) {
      Json dj;
      Json alpha = Json::array();
      for (Elem a : d.alpha) alpha.push_back(static_cast<int>(a));
      dj["alpha"] = std::move(alpha);
      Json beta = Json::object();
      for (const auto& [vertex, coeff] : d.beta)
        beta[std::to_string(vertex)] = static_cast<int>(coeff);
      dj["beta"] = std::move(beta);
      ds.push_back(std::move(dj));
    }
    j["decoders"] = std::move(ds);
  }
  return j;
}

inline LinearCode linear_code_from_json(const Json& j) {
  const int q = detail::require_int(detail::require_member(j, "q"), "q");
  const int l = detail::require_int(detail::require_member(j, "l"), "l");
  const int m = detail::require_int(detail::require_member(j, "m"), "m");
  Field f = make_field(q);
  if (l < 1 || m < 1) throw ParseError("code dimensions must be positive");
  const Json& rows = detail::require_member(j, "encoder");
  if (!rows.is_array() || static_cast<int>(rows.size()) != l)
    throw ParseError("encoder must have l rows");
  FieldMatrix enc(f, l, m);
  for (int r = 0; r < l; ++r) {
    const Json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != m)
      throw ParseError("encoder rows must have m entries");
    for (int col = 0; col < m; ++col) {
      const int x = detail::require_int(row[static_cast<std::size_t>(col)], "encoder entry");
      if (x < 0 || x >= q) throw ParseError("encoder entry out of field range");
      enc.set(r, col, static_cast<Elem>(x));
    }
  }
  LinearCode code(std::move(enc));
  if (j.contains("decoders")) {
    const Json& ds = j.at("decoders");
    if (!ds.is_array() || static_cast<int>(ds.size()) != m)
      throw ParseError("decoders must list one entry per receiver");
    std::vector<Decoder> decoders;
    for (const Json& dj : ds) {
      Decoder d;
      const Json& alpha = detail::require_member(dj, "alpha");
      if (!alpha.is_array() || static_cast<int>(alpha.size()) != l)
        throw ParseError("alpha must have l entries");
      for (const Json& a : alpha) {
        const int x = detail::require_int(a, "alpha entry");
        if (x < 0 || x >= q) throw ParseError("alpha entry out of field range");
        d.alpha.push_back(static_cast<Elem>(x));
      }
      const Json& beta = detail::require_member(dj, "beta");
      if (!beta.is_object()) throw ParseError("beta must be an object");
      for (const auto& [key, value] : beta.items()) {
        int vertex = 0;
        try {
          std::size_t pos = 0;
          vertex = std::stoi(key, &pos);
          if (pos != key.size()) throw ParseError("beta key must be a vertex index");
        } catch (const ParseError&) {
          throw;
        } catch (...) {
          throw ParseError("beta key must be a vertex index");
        }
        if (vertex < 0 || vertex >= m) throw ParseError("beta key out of range");
        const int x = detail::require_int(value, "beta entry");
        if (x < 0 || x >= q) throw ParseError("beta entry out of field range");
        if (x != 0) d.beta[vertex] = static_cast<Elem>(x);
      }
      decoders.push_back(std::move(d));
    }
    code.decoders = std::move(decoders);
  }
  return code;
}

/// Group codes serialize their full tables, so this format is only sensible
/// at desk scale (the library caps tabulation well below a million cells).
inline Json group_code_to_json(const GroupCode& c) {
  Json j;
  j["alphabet"] = c.alphabet;
  j["n"] = c.n;
  j["l"] = c.length;
  j["encoder"] = c.encoder;
  j["decoders"] = c.decoders;
  return j;
}

inline GroupCode group_code_from_json(const Json& j) {
  GroupCode c;
  c.alphabet = detail::require_int(detail::require_member(j, "alphabet"), "alphabet");
  c.n = detail::require_int(detail::require_member(j, "n"), "n");
  c.length = detail::require_int(detail::require_member(j, "l"), "l");
  if (c.alphabet < 2 || c.n < 1 || c.length < 0) throw ParseError("bad group code shape");
  const Json& enc = detail::require_member(j, "encoder");
  const Json& dec = detail::require_member(j, "decoders");
  if (!enc.is_array() || !dec.is_array()) throw ParseError("encoder and decoders must be arrays");
  for (const Json& word : enc) {
    if (!word.is_array() || static_cast<int>(word.size()) != c.length)
      throw ParseError("each codeword must have l entries");
    std::vector<int> w;
    for (const Json& x : word) w.push_back(detail::require_int(x, "codeword entry"));
    c.encoder.push_back(std::move(w));
  }
  for (const Json& table : dec) {
    if (!table.is_array()) throw ParseError("each decoder must be an array");
    std::vector<int> t;
    for (const Json& x : table) t.push_back(detail::require_int(x, "decoder entry"));
    c.decoders.push_back(std::move(t));
  }
  return c;
}

inline Json field_change_to_json(int from_q, const FieldChangeResult& r) {
  Json j;
  j["from_q"] = from_q;
  j["bound"] = r.bound;
  j["k1"] = r.k1;
  j["exact_inner"] = r.exact_inner;
  return j;
}

inline Json bounds_report_to_json(const BoundsReport& rep) {
  Json j;
  if (!rep.graph_id.empty()) j["graph"] = rep.graph_id;
  j["order"] = rep.order;
  if (rep.chi_f_complement) {
    j["chi_f_complement"] = rational_string(*rep.chi_f_complement);
    j["chi_f_complement_ceil"] = rational_ceil(*rep.chi_f_complement).convert_to<long long>();
  } else {
    j["chi_f_complement"] = nullptr;
  }
  Json fields = Json::array();
  for (const QBoundEntry& e : rep.entries) {
    Json ej;
    ej["q"] = e.q;
    ej["chi_complement"] = e.chi_complement;
    ej["lower_min_k"] = e.lower_min_k;
    if (e.exact)
      ej["exact"] = *e.exact;
    else
      ej["exact"] = nullptr;
    if (e.exact_skipped) ej["exact_skipped"] = *e.exact_skipped;
    ej["coloring"] = e.coloring;
    if (e.cover_code) ej["cover_code"] = linear_code_to_json(*e.cover_code);
    Json fc = Json::array();
    for (const auto& [from_q, r] : e.field_change) fc.push_back(field_change_to_json(from_q, r));
    ej["field_change"] = std::move(fc);
    fields.push_back(std::move(ej));
  }
  j["fields"] = std::move(fields);
  return j;
}

/// Canonical dump used for all machine output: 2-space indent, sorted keys
/// (the container's natural order), trailing newline.
inline std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace idxcode
