#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "sfast/kernelize.hpp"

namespace sfast {

namespace detail {

inline std::vector<std::string> split_words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> words;
  for (std::string w; in >> w;) words.push_back(w);
  return words;
}

inline long long parse_int(const std::string& word, std::size_t line, const char* what) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(word, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != word.size() || word.empty()) throw ParseError(line, std::string("bad ") + what + " '" + word + "'");
  return v;
}

}  // namespace detail

/// Instance text format:
///   c <comment>            anywhere
///   c labels <l0> ... <ln-1>  optional external labels (kernels)
///   p sfast <n> <k>        first non-comment line
///   s <id> ...             exactly one, may be empty
///   a <u> <v>              one per unordered pair, ids in [0,n)
inline Instance parse_instance(std::istream& in) {
  std::string text;
  std::size_t line_no = 0;
  std::optional<std::size_t> n;
  int k = 0;
  std::optional<Bitset> terminals;
  std::vector<Label> labels;
  std::size_t labels_line = 0;
  std::vector<int> pair_line;  // line of the arc fixing pair {u,v}, 0 if none
  Tournament t;
  const auto vertex = [&](const std::string& w) {
    const long long v = detail::parse_int(w, line_no, "vertex id");
    if (v < 0 || static_cast<std::size_t>(v) >= *n) throw ParseError(line_no, "vertex id " + w + " out of range [0," + std::to_string(*n) + ")");
    return static_cast<Vertex>(v);
  };
  while (std::getline(in, text)) {
    ++line_no;
    const auto words = detail::split_words(text);
    if (words.empty()) continue;
    const std::string& tag = words[0];
    if (tag == "c") {
      if (words.size() >= 2 && words[1] == "labels") {
        labels.clear();
        labels_line = line_no;
        for (std::size_t i = 2; i < words.size(); ++i)
          labels.push_back(static_cast<Label>(detail::parse_int(words[i], line_no, "label")));
      }
      continue;
    }
    if (!n) {
      if (tag != "p" || words.size() != 4 || words[1] != "sfast") throw ParseError(line_no, "expected header 'p sfast <n> <k>'");
      const long long nv = detail::parse_int(words[2], line_no, "vertex count");
      if (nv < 0 || nv > 1'000'000) throw ParseError(line_no, "vertex count out of range");
      n = static_cast<std::size_t>(nv);
      k = static_cast<int>(detail::parse_int(words[3], line_no, "budget"));
      t = Tournament(*n);
      pair_line.assign(*n * *n, 0);
      continue;
    }
    if (tag == "p") throw ParseError(line_no, "second header line");
    if (tag == "s") {
      if (terminals) throw ParseError(line_no, "second terminal line");
      terminals = Bitset(*n);
      for (std::size_t i = 1; i < words.size(); ++i) {
        const Vertex v = vertex(words[i]);
        if (terminals->test(v)) throw ParseError(line_no, "terminal " + words[i] + " listed twice");
        terminals->set(v);
      }
      continue;
    }
    if (tag == "a") {
      if (words.size() != 3) throw ParseError(line_no, "expected 'a <u> <v>'");
      const Vertex u = vertex(words[1]), v = vertex(words[2]);
      if (u == v) throw ParseError(line_no, "self-loop at " + words[1]);
      const std::size_t key = static_cast<std::size_t>(std::min(u, v)) * *n + static_cast<std::size_t>(std::max(u, v));
      if (pair_line[key] != 0)
        throw ParseError(line_no, "duplicate pair {" + std::to_string(std::min(u, v)) + "," + std::to_string(std::max(u, v)) +
                                      "} (first given on line " + std::to_string(pair_line[key]) + ")");
      pair_line[key] = static_cast<int>(line_no);
      t.orient(u, v);
      continue;
    }
    throw ParseError(line_no, "unknown line type '" + tag + "'");
  }
  if (!n) throw ParseError(line_no + 1, "missing header 'p sfast <n> <k>'");
  if (!terminals) throw ParseError(line_no + 1, "missing terminal line 's ...'");
  for (Vertex u = 0; u < static_cast<Vertex>(*n); ++u)
    for (Vertex v = u + 1; v < static_cast<Vertex>(*n); ++v)
      if (pair_line[static_cast<std::size_t>(u) * *n + static_cast<std::size_t>(v)] == 0)
        throw ParseError(line_no + 1, "missing pair {" + std::to_string(u) + "," + std::to_string(v) + "}: not a tournament");
  if (labels_line != 0) {
    if (labels.size() != *n) throw ParseError(labels_line, "label count differs from vertex count");
    try {
      t.set_labels(labels);
    } catch (const std::exception& e) {
      throw ParseError(labels_line, e.what());
    }
  }
  return Instance(std::move(t), std::move(*terminals), k);
}

inline Instance parse_instance(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

inline Instance read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_instance(in);
}

inline bool identity_labels(const Tournament& t) {
  for (std::size_t v = 0; v < t.size(); ++v)
    if (t.label(static_cast<Vertex>(v)) != static_cast<Label>(v)) return false;
  return true;
}

inline void write_instance(std::ostream& out, const Instance& inst) {
  const Tournament& t = inst.tournament;
  if (!identity_labels(t)) {
    out << "c labels";
    for (Label l : t.labels()) out << ' ' << l;
    out << '\n';
  }
  out << "p sfast " << t.size() << ' ' << inst.k << '\n';
  out << 's';
  for (Vertex v : inst.terminal_list()) out << ' ' << v;
  out << '\n';
  for (const Arc& a : t.arcs()) out << "a " << a.tail << ' ' << a.head << '\n';
}

inline std::string serialize_instance(const Instance& inst) {
  std::ostringstream out;
  write_instance(out, inst);
  return out.str();
}

/// Solution files list arcs as "r <u> <v>" in vertex labels.
inline ArcSet parse_solution(std::istream& in) {
  std::vector<Arc> arcs;
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    const auto words = detail::split_words(text);
    if (words.empty() || words[0] == "c") continue;
    if (words[0] != "r" || words.size() != 3) throw ParseError(line_no, "expected 'r <u> <v>'");
    arcs.push_back({static_cast<Label>(detail::parse_int(words[1], line_no, "vertex label")),
                    static_cast<Label>(detail::parse_int(words[2], line_no, "vertex label"))});
  }
  return ArcSet(std::move(arcs));
}

inline void write_solution(std::ostream& out, const ArcSet& labelled) {
  for (const Arc& a : labelled) out << "r " << a.tail << ' ' << a.head << '\n';
}

/// Label arcs to vertex indices of t; unknown labels are invalid arcs.
inline ArcSet to_indices(const Tournament& t, const ArcSet& labelled) {
  std::vector<Arc> out;
  for (const Arc& a : labelled) {
    const auto u = t.index_of(a.tail), v = t.index_of(a.head);
    if (!u || !v) throw InvalidArcError("arc " + to_string(a) + " names a vertex that is not in the instance");
    out.push_back({*u, *v});
  }
  return ArcSet(std::move(out));
}

inline ArcSet to_labels(const Tournament& t, const ArcSet& indexed) { return detail::to_labels(t, indexed); }

}  // namespace sfast
