// Copyright 2026 The qcap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spec_file.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

#include "qcap/random.hpp"

namespace qcap::cli {

using nlohmann::json;

namespace {

constexpr int kFormatVersion = 1;

// Schema violation at a JSON pointer; converted to a SpecError with a text
// position once the pointer is resolved against the source.
struct SchemaError {
  std::string message;
  std::string pointer;
};

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t offset) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

// Minimal scanner that walks the source text to the value named by a JSON
// pointer and returns its byte offset.
class Locator {
 public:
  explicit Locator(const std::string& text) : s_(text) {}

  std::size_t find(const std::string& pointer) {
    std::vector<std::string> tokens;
    std::size_t start = 1;
    while (start <= pointer.size() && !pointer.empty()) {
      const std::size_t next = pointer.find('/', start);
      tokens.push_back(pointer.substr(start, next == std::string::npos ? std::string::npos : next - start));
      if (next == std::string::npos) break;
      start = next + 1;
    }
    pos_ = 0;
    skip_ws();
    std::size_t best = pos_;
    for (const auto& tok : tokens) {
      if (!descend(tok)) break;
      best = pos_;
    }
    return best;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::string read_string() {
    std::string out;
    ++pos_;
    while (pos_ < s_.size() && s_[pos_] != '"') {
      if (s_[pos_] == '\\') ++pos_;
      if (pos_ < s_.size()) out += s_[pos_++];
    }
    ++pos_;
    return out;
  }

  void skip_value() {
    skip_ws();
    if (pos_ >= s_.size()) return;
    const char c = s_[pos_];
    if (c == '"') {
      read_string();
    } else if (c == '{' || c == '[') {
      int depth = 0;
      while (pos_ < s_.size()) {
        const char x = s_[pos_];
        if (x == '"') {
          read_string();
          continue;
        }
        if (x == '{' || x == '[') ++depth;
        if (x == '}' || x == ']') {
          --depth;
          if (depth == 0) {
            ++pos_;
            return;
          }
        }
        ++pos_;
      }
    } else {
      while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != '}' && s_[pos_] != ']' &&
             !std::isspace(static_cast<unsigned char>(s_[pos_])))
        ++pos_;
    }
  }

  bool descend(const std::string& tok) {
    skip_ws();
    if (pos_ >= s_.size()) return false;
    if (s_[pos_] == '{') {
      ++pos_;
      while (true) {
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != '"') return false;
        const std::string key = read_string();
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != ':') return false;
        ++pos_;
        skip_ws();
        if (key == tok) return true;
        skip_value();
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != ',') return false;
        ++pos_;
      }
    }
    if (s_[pos_] == '[') {
      std::size_t index = 0;
      try {
        index = std::stoul(tok);
      } catch (const std::exception&) {
        return false;
      }
      ++pos_;
      for (std::size_t i = 0; i < index; ++i) {
        skip_value();
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != ',') return false;
        ++pos_;
      }
      skip_ws();
      return pos_ < s_.size() && s_[pos_] != ']';
    }
    return false;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

const json& field(const json& obj, const std::string& key, const std::string& ptr) {
  if (!obj.is_object()) throw SchemaError{"expected an object", ptr};
  const auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError{"missing field \"" + key + "\"", ptr};
  return *it;
}

std::size_t positive_size(const json& j, const std::string& ptr) {
  if (!j.is_number_integer() || j.get<long long>() <= 0) throw SchemaError{"expected a positive integer", ptr};
  return static_cast<std::size_t>(j.get<long long>());
}

double number(const json& j, const std::string& ptr) {
  if (!j.is_number()) throw SchemaError{"expected a number", ptr};
  return j.get<double>();
}

ComplexMatrix parse_matrix(const json& j, const std::string& ptr) {
  if (!j.is_array() || j.empty()) throw SchemaError{"expected a non-empty array of rows", ptr};
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string rp = ptr + "/" + std::to_string(i);
    if (!j[i].is_array() || j[i].empty()) throw SchemaError{"expected a non-empty row of [re, im] pairs", rp};
    if (i == 0) cols = j[i].size();
    if (j[i].size() != cols) throw SchemaError{"row length differs from the first row", rp};
  }
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k) {
      const std::string ep = ptr + "/" + std::to_string(i) + "/" + std::to_string(k);
      const json& e = j[i][k];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw SchemaError{"expected a [re, im] pair", ep};
      }
      m(i, k) = cplx(e[0].get<double>(), e[1].get<double>());
    }
  return m;
}

json params_or_empty(const json& ch) {
  const auto it = ch.find("params");
  return it == ch.end() ? json::object() : *it;
}

std::size_t param_size(const json& p, const char* key, std::size_t fallback, const std::string& ptr) {
  const auto it = p.find(key);
  if (it == p.end()) return fallback;
  return positive_size(*it, ptr + "/" + key);
}

KrausChannel catalog_at(const std::string& name, const json& p, const std::string& ptr) {
  if (!p.is_object()) throw SchemaError{"params must be an object", ptr};
  if (name == "noiseless") return catalog::noiseless(param_size(p, "d", 2, ptr));
  if (name == "dephasing") return catalog::dephasing(param_size(p, "d", 2, ptr));
  if (name == "depolarizing") {
    const double prob = number(field(p, "p", ptr), ptr + "/p");
    return catalog::depolarizing(param_size(p, "d", 2, ptr), prob);
  }
  if (name == "completely_depolarizing") return catalog::completely_depolarizing(param_size(p, "d", 2, ptr));
  if (name == "trine") return catalog::trine();
  if (name == "bsst_plus") return catalog::bsst_plus();
  if (name == "measurement") {
    const auto it = p.find("vectors");
    if (it == p.end()) return catalog::measurement_channel(catalog::trine_vectors());
    return catalog::measurement_channel(parse_matrix(*it, ptr + "/vectors"));
  }
  if (name == "qc") {
    const json& povm = field(p, "povm", ptr);
    if (!povm.is_array() || povm.empty()) throw SchemaError{"povm must be a non-empty array", ptr + "/povm"};
    std::vector<ComplexMatrix> elems;
    for (std::size_t i = 0; i < povm.size(); ++i) {
      elems.push_back(parse_matrix(povm[i], ptr + "/povm/" + std::to_string(i)));
    }
    return catalog::qc_channel(elems);
  }
  const auto seed_it = p.find("seed");
  std::uint64_t seed = 0;
  if (seed_it != p.end()) {
    if (!seed_it->is_number_unsigned()) throw SchemaError{"seed must be a non-negative integer", ptr + "/seed"};
    seed = seed_it->get<std::uint64_t>();
  }
  random::Rng rng(seed);
  if (name == "cq_random") {
    const std::size_t din = param_size(p, "d_in", 2, ptr);
    return catalog::cq_channel(random::cq_structure(rng, din, param_size(p, "d_out", din, ptr)));
  }
  if (name == "random") {
    const std::size_t din = param_size(p, "d_in", 2, ptr);
    const std::size_t dout = param_size(p, "d_out", din, ptr);
    return random::channel(rng, din, dout, param_size(p, "num_kraus", 2, ptr));
  }
  throw SchemaError{"unknown catalog channel \"" + name + "\"", ptr};
}

ChannelSpec parse_document(const json& doc) {
  if (!doc.is_object()) throw SchemaError{"top level must be an object", ""};
  const json& version = field(doc, "version", "");
  if (!version.is_number_integer() || version.get<int>() != kFormatVersion) {
    throw SchemaError{"unsupported format version", "/version"};
  }
  const json& ch = field(doc, "channel", "");
  const json& kind = field(ch, "kind", "/channel");
  if (!kind.is_string()) throw SchemaError{"kind must be a string", "/channel/kind"};
  const std::string k = kind.get<std::string>();

  std::optional<KrausChannel> channel;
  if (k == "catalog") {
    const json& name = field(ch, "name", "/channel");
    if (!name.is_string()) throw SchemaError{"name must be a string", "/channel/name"};
    channel = catalog_at(name.get<std::string>(), params_or_empty(ch), "/channel/params");
  } else if (k == "kraus") {
    const std::size_t din = positive_size(field(ch, "dim_in", "/channel"), "/channel/dim_in");
    const std::size_t dout = positive_size(field(ch, "dim_out", "/channel"), "/channel/dim_out");
    const json& ops = field(ch, "operators", "/channel");
    if (!ops.is_array() || ops.empty()) throw SchemaError{"operators must be a non-empty array", "/channel/operators"};
    std::vector<ComplexMatrix> kraus;
    for (std::size_t i = 0; i < ops.size(); ++i) {
      const std::string ptr = "/channel/operators/" + std::to_string(i);
      kraus.push_back(parse_matrix(ops[i], ptr));
      if (kraus.back().rows() != dout || kraus.back().cols() != din) {
        throw SchemaError{"operator shape must be dim_out x dim_in", ptr};
      }
    }
    channel.emplace(din, dout, std::move(kraus), kStructureTol);
  } else if (k == "choi") {
    const std::size_t din = positive_size(field(ch, "dim_in", "/channel"), "/channel/dim_in");
    const std::size_t dout = positive_size(field(ch, "dim_out", "/channel"), "/channel/dim_out");
    const ComplexMatrix m = parse_matrix(field(ch, "matrix", "/channel"), "/channel/matrix");
    if (m.rows() != din * dout || !m.square()) {
      throw SchemaError{"Choi matrix must be (dim_in*dim_out) square", "/channel/matrix"};
    }
    channel = from_choi(ChoiMatrix{din, dout, m});
  } else {
    throw SchemaError{"kind must be one of kraus, choi, catalog", "/channel/kind"};
  }

  ChannelSpec spec{*channel, std::nullopt, doc};
  if (const auto it = doc.find("constraint"); it != doc.end()) {
    ConstraintSpec c;
    c.H = parse_matrix(field(*it, "H", "/constraint"), "/constraint/H");
    c.h = number(field(*it, "h", "/constraint"), "/constraint/h");
    if (c.H.rows() != spec.channel.dim_in() || !c.H.square()) {
      throw SchemaError{"H must be dim_in x dim_in", "/constraint/H"};
    }
    spec.constraint = c;
  }
  return spec;
}

}  // namespace

ComplexMatrix matrix_from_json(const json& j) {
  try {
    return parse_matrix(j, "");
  } catch (const SchemaError& e) {
    throw SpecError(e.message + " at " + (e.pointer.empty() ? "/" : e.pointer), 0, 0);
  }
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

KrausChannel catalog_channel(const std::string& name, const json& params) {
  try {
    return catalog_at(name, params, "/params");
  } catch (const SchemaError& e) {
    throw SpecError(e.message + " at " + e.pointer, 0, 0);
  }
}

ChannelSpec parse_spec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // byte is the 1-based position of the offending character.
    const auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    throw SpecError("syntax error: " + std::string(e.what()), line, col);
  }
  try {
    return parse_document(doc);
  } catch (const SchemaError& e) {
    Locator loc(text);
    const auto [line, col] = line_col(text, loc.find(e.pointer));
    throw SpecError(e.message + " at " + (e.pointer.empty() ? "/" : e.pointer), line, col);
  }
}

ChannelSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot read " + path, 0, 0);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

}  // namespace qcap::cli
