/*
   Copyright 2026 the ringnet authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "ringnet/parser.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

namespace ringnet {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path, 0, 0);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string dir_of(const std::string& path) {
  const auto slash = path.find_last_of('/');
  return slash == std::string::npos ? std::string(".") : path.substr(0, slash);
}

std::vector<std::string> split_words(const std::string& s) {
  std::vector<std::string> words;
  std::istringstream is(s);
  std::string w;
  while (is >> w) words.push_back(w);
  return words;
}

RingPtr resolve_single_ring(const std::string& spec, const std::string& base_dir, int line) {
  if (spec.rfind("file:", 0) == 0) {
    std::string path = spec.substr(5);
    if (!path.empty() && path[0] != '/') path = base_dir + "/" + path;
    RingPtr r = read_ring(read_file(path));
    if (!verify_ring(*r).is_commutative_ring()) {
      throw ParseError("ring file does not satisfy the commutative ring axioms: " + path, line, 0);
    }
    return r;
  }
  if (spec.rfind("enum", 0) == 0) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw ParseError("expected enum<k>:<index>", line, 0);
    const int k = std::stoi(spec.substr(4, colon - 4));
    const int index = std::stoi(spec.substr(colon + 1));
    const EnumerationResult res = enumerate_rings(k);
    if (!res.complete) throw ParseError("ring enumeration budget exceeded for " + spec, line, 0);
    if (index < 1 || index > static_cast<int>(res.rings.size())) {
      throw ParseError("enumeration index out of range in " + spec + " (found " +
                           std::to_string(res.rings.size()) + " rings)",
                       line, 0);
    }
    return res.rings[static_cast<std::size_t>(index) - 1];
  }
  if (spec.rfind("Z^", 0) == 0) return z_kappa(std::stoi(spec.substr(2)));
  if (spec.rfind("Z", 0) == 0 && spec.size() > 1 && std::isdigit(static_cast<unsigned char>(spec[1]))) {
    return make_zk(std::stoi(spec.substr(1)));
  }
  throw ParseError("unknown ring spec: " + spec, line, 0);
}

RingPtr resolve_ring(const std::string& spec, const std::string& base_dir, int line) {
  if (spec.rfind("file:", 0) == 0) return resolve_single_ring(spec, base_dir, line);
  // split product components on 'x' separators
  std::vector<std::string> parts;
  std::string cur;
  for (char c : spec) {
    if (c == 'x') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  RingPtr r = resolve_single_ring(parts[0], base_dir, line);
  for (std::size_t i = 1; i < parts.size(); ++i) {
    r = product_ring(r, resolve_single_ring(parts[i], base_dir, line));
  }
  return r;
}

/// Recursive descent over a single statement's expression text.
class ExprParser {
 public:
  ExprParser(const std::string& text, int line, const FiniteRing& ring, bool crt,
             const std::vector<std::string>& states, const std::vector<std::string>& inputs)
      : text_(text), line_(line), ring_(ring), crt_(crt), states_(states), inputs_(inputs) {
    if (crt_) iso_ = crt_iso(ring_.k);
  }

  Expr parse(int start_col) {
    pos_ = static_cast<std::size_t>(start_col);
    Expr e = expression();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line_, static_cast<int>(pos_) + 1);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool consume(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  int parse_nat() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected integer");
    return std::stoi(text_.substr(start, pos_ - start));
  }

  std::string parse_ident() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    if (pos_ == start) fail("expected identifier");
    return text_.substr(start, pos_ - start);
  }

  const FiniteRing& scope_ring() const {
    return proj_factor_ ? *ring_.factors[static_cast<std::size_t>(proj_factor_) - 1] : ring_;
  }

  Expr literal(int v) {
    const FiniteRing& r = scope_ring();
    if (v < 0 || v >= r.k) fail("constant out of range [0," + std::to_string(r.k - 1) + "]");
    if (!proj_factor_ && crt_) return ex::cnst(iso_->to_product(value_to_label(r.k, v)));
    return ex::cnst(value_to_label(r.k, v));
  }

  Expr atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '-') {
      ++pos_;
      return ex::neg(atom());
    }
    if (c == '(') {
      ++pos_;
      Expr e = expression();
      if (!consume(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return literal(parse_nat());
    const std::string name = parse_ident();
    if (name == "proj") {
      if (proj_factor_) fail("nested proj is not allowed");
      if (!ring_.is_product()) fail("proj on a ring without factor structure");
      if (!consume('(')) fail("expected '(' after proj");
      const int factor = parse_nat();
      if (factor < 1 || factor > ring_.factor_count()) fail("proj factor index out of range");
      if (!consume(',')) fail("expected ',' in proj");
      proj_factor_ = factor;
      Expr inner = expression();
      proj_factor_ = 0;
      if (!consume(')')) fail("expected ')' closing proj");
      return ex::proj(factor, std::move(inner));
    }
    for (std::size_t i = 0; i < states_.size(); ++i) {
      if (states_[i] == name) return ex::var(static_cast<int>(i) + 1);
    }
    for (std::size_t i = 0; i < inputs_.size(); ++i) {
      if (inputs_[i] == name) return ex::ctrl(static_cast<int>(i) + 1);
    }
    fail("unknown identifier: " + name);
  }

  Expr factor_expr() {
    Expr e = atom();
    if (peek() == '^') {
      ++pos_;
      const int exp = parse_nat();
      if (exp < 1) fail("exponent must be >= 1");
      e = ex::pow(std::move(e), exp);
    }
    return e;
  }

  Expr term() {
    Expr e = factor_expr();
    while (peek() == '*') {
      ++pos_;
      e = ex::mul(std::move(e), factor_expr());
    }
    return e;
  }

  Expr expression() {
    Expr e = term();
    while (true) {
      const char c = peek();
      if (c == '+') {
        ++pos_;
        e = ex::add(std::move(e), term());
      } else if (c == '-') {
        ++pos_;
        e = ex::sub(std::move(e), term());
      } else {
        break;
      }
    }
    return e;
  }

  const std::string& text_;
  int line_;
  const FiniteRing& ring_;
  bool crt_;
  std::optional<CrtIso> iso_;
  const std::vector<std::string>& states_;
  const std::vector<std::string>& inputs_;
  std::size_t pos_ = 0;
  int proj_factor_ = 0;
};

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

bool blank(const std::string& s) {
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

RingPtr resolve_ring_directive(const std::string& spec, const std::string& base_dir) {
  return resolve_ring(spec, base_dir, 0);
}

Network parse_network(const std::string& text, const std::string& base_dir) {
  Network net;
  std::istringstream is(text);
  std::string raw;
  int lineno = 0;
  bool have_ring = false, have_states = false;
  std::vector<std::pair<int, std::string>> pending;  // assignment lines, parsed after declarations

  while (std::getline(is, raw)) {
    ++lineno;
    const std::string line = strip_comment(raw);
    if (blank(line)) continue;
    const auto words = split_words(line);
    const std::string& head = words[0];
    if (head == "ring") {
      if (have_ring) throw ParseError("duplicate ring directive", lineno, 1);
      if (words.size() < 2) throw ParseError("ring directive needs a spec", lineno, 1);
      net.ring = resolve_ring(words[1], base_dir, lineno);
      net.ring_directive = words[1];
      for (std::size_t i = 2; i < words.size(); ++i) {
        if (words[i] == "@crt") {
          net.crt_literals = true;
        } else {
          throw ParseError("unexpected token after ring spec: " + words[i], lineno, 1);
        }
      }
      if (net.crt_literals) crt_iso(net.ring->k);  // rejects non-squarefree early
      have_ring = true;
    } else if (head == "states") {
      if (have_states) throw ParseError("duplicate states directive", lineno, 1);
      net.state_names.assign(words.begin() + 1, words.end());
      if (net.state_names.empty()) throw ParseError("states directive needs at least one name", lineno, 1);
      have_states = true;
    } else if (head == "inputs") {
      net.input_names.assign(words.begin() + 1, words.end());
    } else if (head == "outputs") {
      net.output_names.assign(words.begin() + 1, words.end());
    } else {
      pending.emplace_back(lineno, line);
    }
  }
  if (!have_ring) throw ParseError("missing ring directive", lineno, 1);
  if (!have_states) throw ParseError("missing states directive", lineno, 1);

  {
    std::vector<std::string> all;
    all.insert(all.end(), net.state_names.begin(), net.state_names.end());
    all.insert(all.end(), net.input_names.begin(), net.input_names.end());
    all.insert(all.end(), net.output_names.begin(), net.output_names.end());
    std::sort(all.begin(), all.end());
    const auto dup = std::adjacent_find(all.begin(), all.end());
    if (dup != all.end()) throw ParseError("duplicate identifier: " + *dup, lineno, 1);
  }

  net.n = static_cast<int>(net.state_names.size());
  net.m = static_cast<int>(net.input_names.size());
  net.p = static_cast<int>(net.output_names.size());
  net.dynamics.assign(static_cast<std::size_t>(net.n), nullptr);
  net.outputs.assign(static_cast<std::size_t>(net.p), nullptr);

  for (const auto& [ln, line] : pending) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected an assignment", ln, 1);
    std::string lhs = line.substr(0, eq);
    while (!lhs.empty() && std::isspace(static_cast<unsigned char>(lhs.back()))) lhs.pop_back();
    std::size_t lstart = 0;
    while (lstart < lhs.size() && std::isspace(static_cast<unsigned char>(lhs[lstart]))) ++lstart;
    lhs = lhs.substr(lstart);
    if (lhs.empty()) throw ParseError("empty assignment target", ln, 1);

    const bool primed = lhs.back() == '\'';
    const std::string name = primed ? lhs.substr(0, lhs.size() - 1) : lhs;
    ExprParser ep(line, ln, *net.ring, net.crt_literals, net.state_names, net.input_names);
    Expr e = ep.parse(static_cast<int>(eq) + 1);
    if (primed) {
      const auto it = std::find(net.state_names.begin(), net.state_names.end(), name);
      if (it == net.state_names.end()) throw ParseError("unknown state: " + name, ln, 1);
      const auto idx = static_cast<std::size_t>(it - net.state_names.begin());
      if (net.dynamics[idx]) throw ParseError("duplicate update for state " + name, ln, 1);
      net.dynamics[idx] = std::move(e);
    } else {
      const auto it = std::find(net.output_names.begin(), net.output_names.end(), name);
      if (it == net.output_names.end()) throw ParseError("unknown output: " + name, ln, 1);
      const auto idx = static_cast<std::size_t>(it - net.output_names.begin());
      if (net.outputs[idx]) throw ParseError("duplicate assignment for output " + name, ln, 1);
      if (contains_control(e)) throw ParseError("output " + name + " must be control-free", ln, 1);
      net.outputs[idx] = std::move(e);
    }
  }
  for (int i = 0; i < net.n; ++i) {
    if (!net.dynamics[static_cast<std::size_t>(i)]) {
      throw ParseError("state " + net.state_names[static_cast<std::size_t>(i)] + " has no update equation", lineno, 1);
    }
  }
  for (int l = 0; l < net.p; ++l) {
    if (!net.outputs[static_cast<std::size_t>(l)]) {
      throw ParseError("output " + net.output_names[static_cast<std::size_t>(l)] + " has no assignment", lineno, 1);
    }
  }
  net.validate();
  return net;
}

Network parse_network_file(const std::string& path) { return parse_network(read_file(path), dir_of(path)); }

std::string print_network(const Network& net) {
  std::ostringstream os;
  os << "ring " << (net.ring_directive.empty() ? net.ring->name : net.ring_directive) << '\n';
  os << "states";
  for (const auto& s : net.state_names) os << ' ' << s;
  os << '\n';
  if (net.m > 0) {
    os << "inputs";
    for (const auto& s : net.input_names) os << ' ' << s;
    os << '\n';
  }
  if (net.p > 0) {
    os << "outputs";
    for (const auto& s : net.output_names) os << ' ' << s;
    os << '\n';
  }
  const ExprNames names{net.state_names, net.input_names};
  for (int i = 0; i < net.n; ++i) {
    os << net.state_names[static_cast<std::size_t>(i)] << "' = "
       << to_string(net.dynamics[static_cast<std::size_t>(i)], *net.ring, names) << '\n';
  }
  for (int l = 0; l < net.p; ++l) {
    os << net.output_names[static_cast<std::size_t>(l)] << " = "
       << to_string(net.outputs[static_cast<std::size_t>(l)], *net.ring, names) << '\n';
  }
  return os.str();
}

namespace {

std::vector<std::vector<int>> parse_matrix_rows(const std::string& body, int lineno) {
  std::vector<std::vector<int>> rows;
  std::size_t i = 0;
  auto fail = [&](const std::string& msg) { throw ParseError(msg, lineno, static_cast<int>(i) + 1); };
  auto skip = [&] {
    while (i < body.size() && (std::isspace(static_cast<unsigned char>(body[i])) || body[i] == ',')) ++i;
  };
  skip();
  if (i >= body.size() || body[i] != '[') fail("expected '['");
  ++i;
  while (true) {
    skip();
    if (i < body.size() && body[i] == ']') {
      ++i;
      break;
    }
    if (i >= body.size() || body[i] != '[') fail("expected '[' starting a row");
    ++i;
    std::vector<int> row;
    while (true) {
      skip();
      if (i < body.size() && body[i] == ']') {
        ++i;
        break;
      }
      bool negative = false;
      if (i < body.size() && body[i] == '-') {
        negative = true;
        ++i;
      }
      std::size_t start = i;
      while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) ++i;
      if (i == start) fail("expected integer entry");
      int v = std::stoi(body.substr(start, i - start));
      row.push_back(negative ? -v : v);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

LinearNetwork parse_linear(const std::string& text, const std::string& base_dir) {
  LinearNetwork lin;
  std::istringstream is(text);
  std::string raw;
  int lineno = 0;
  bool have_header = false;
  std::optional<CrtIso> iso;

  auto to_labels = [&](std::vector<std::vector<int>> values, int rows, int cols,
                       const char* what) -> std::vector<std::vector<int>> {
    if (static_cast<int>(values.size()) != rows) {
      throw ParseError(std::string(what) + ": expected " + std::to_string(rows) + " rows", lineno, 1);
    }
    for (auto& row : values) {
      if (static_cast<int>(row.size()) != cols) {
        throw ParseError(std::string(what) + ": expected " + std::to_string(cols) + " columns", lineno, 1);
      }
      for (auto& v : row) {
        if (v < 0 || v >= lin.ring->k) throw ParseError(std::string(what) + ": entry out of range", lineno, 1);
        const int label = value_to_label(lin.ring->k, v);
        v = lin.residue_naming ? iso->to_product(label) : label;
      }
    }
    return values;
  };

  while (std::getline(is, raw)) {
    ++lineno;
    const std::string line = strip_comment(raw);
    if (blank(line)) continue;
    const auto words = split_words(line);
    if (!have_header) {
      if (words[0] != "linear") throw ParseError("expected 'linear' header", lineno, 1);
      for (std::size_t i = 1; i < words.size(); ++i) {
        const std::string& w = words[i];
        if (w.rfind("ring=", 0) == 0) {
          lin.ring_directive = w.substr(5);
          lin.ring = resolve_ring(lin.ring_directive, base_dir, lineno);
        } else if (w == "@crt") {
          lin.residue_naming = true;
        } else if (w.rfind("n=", 0) == 0) {
          lin.n = std::stoi(w.substr(2));
        } else if (w.rfind("m=", 0) == 0) {
          lin.m = std::stoi(w.substr(2));
        } else if (w.rfind("p=", 0) == 0) {
          lin.p = std::stoi(w.substr(2));
        } else {
          throw ParseError("unknown header token: " + w, lineno, 1);
        }
      }
      if (!lin.ring) throw ParseError("linear header needs ring=<spec>", lineno, 1);
      if (lin.n < 1) throw ParseError("linear header needs n >= 1", lineno, 1);
      if (lin.residue_naming) iso = crt_iso(lin.ring->k);
      have_header = true;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected '<name> = [[...]]'", lineno, 1);
    std::string name;
    for (char c : line.substr(0, eq))
      if (!std::isspace(static_cast<unsigned char>(c))) name += c;
    const auto rows = parse_matrix_rows(line.substr(eq + 1), lineno);
    if (name == "A") lin.A = to_labels(rows, lin.n, lin.n, "A");
    else if (name == "B") lin.B = to_labels(rows, lin.n, lin.m, "B");
    else if (name == "C") lin.C = to_labels(rows, lin.p, lin.n, "C");
    else throw ParseError("unknown matrix name: " + name, lineno, 1);
  }
  if (!have_header) throw ParseError("missing 'linear' header", lineno, 1);
  if (lin.A.empty()) throw ParseError("missing A matrix", lineno, 1);
  if (lin.m > 0 && lin.B.empty()) throw ParseError("missing B matrix", lineno, 1);
  if (lin.p > 0 && lin.C.empty()) throw ParseError("missing C matrix", lineno, 1);
  return lin;
}

LinearNetwork parse_linear_file(const std::string& path) { return parse_linear(read_file(path), dir_of(path)); }

std::string print_linear(const LinearNetwork& lin) {
  std::ostringstream os;
  std::optional<CrtIso> iso;
  if (lin.residue_naming) iso = crt_iso(lin.ring->k);
  os << "linear ring=" << (lin.ring_directive.empty() ? lin.ring->name : lin.ring_directive);
  if (lin.residue_naming) os << " @crt";
  os << " n=" << lin.n << " m=" << lin.m << " p=" << lin.p << '\n';
  auto emit = [&](const char* name, const std::vector<std::vector<int>>& m) {
    if (m.empty()) return;
    os << name << " = [";
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i) os << ',';
      os << '[';
      for (std::size_t j = 0; j < m[i].size(); ++j) {
        if (j) os << ',';
        const int label = lin.residue_naming ? iso->to_residue(m[i][j]) : m[i][j];
        os << label_to_value(lin.ring->k, label);
      }
      os << ']';
    }
    os << "]\n";
  };
  emit("A", lin.A);
  emit("B", lin.B);
  emit("C", lin.C);
  return os.str();
}

}  // namespace ringnet
