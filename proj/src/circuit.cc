// Copyright 2026 The slicesim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "slicesim/circuit.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <numbers>
#include <sstream>

#include "slicesim/errors.h"
#include "slicesim/rng.h"

namespace slicesim {

// ---------------------------------------------------------------- VertexSet

VertexSet::VertexSet(std::initializer_list<VertexId> ids) : VertexSet(std::vector<VertexId>(ids)) {}

VertexSet::VertexSet(std::vector<VertexId> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

bool VertexSet::contains(VertexId v) const {
  return std::binary_search(ids_.begin(), ids_.end(), v);
}

void VertexSet::insert(VertexId v) {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
  if (it == ids_.end() || *it != v) ids_.insert(it, v);
}

void VertexSet::erase(VertexId v) {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
  if (it != ids_.end() && *it == v) ids_.erase(it);
}

VertexSet VertexSet::united(const VertexSet& other) const {
  std::vector<VertexId> out;
  std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                 std::back_inserter(out));
  VertexSet result;
  result.ids_ = std::move(out);
  return result;
}

VertexSet VertexSet::minus(const VertexSet& other) const {
  std::vector<VertexId> out;
  std::set_difference(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                      std::back_inserter(out));
  VertexSet result;
  result.ids_ = std::move(out);
  return result;
}

// ------------------------------------------------------------------ Circuit

Circuit::Circuit(int num_qubits, std::vector<Gate> gates)
    : num_qubits_(num_qubits), gates_(std::move(gates)) {
  if (num_qubits_ < 0) throw InputError("negative qubit count");
  wire_length_.assign(num_qubits_, 0);
  wire_gates_.assign(num_qubits_, {});
  slot_.resize(gates_.size());
  for (std::size_t g = 0; g < gates_.size(); ++g) {
    Gate& gate = gates_[g];
    gate.index = g;
    for (int q : gate.qubits) {
      if (q < 0 || q >= num_qubits_) {
        throw InputError("gate " + std::to_string(g) + ": qubit index " + std::to_string(q) +
                         " out of range");
      }
      slot_[g].push_back(wire_length_[q]++);
      wire_gates_[q].push_back(g);
    }
  }
  row_offset_.resize(num_qubits_ + 1, 0);
  for (int q = 0; q < num_qubits_; ++q) {
    row_offset_[q + 1] = row_offset_[q] + static_cast<std::uint32_t>(wire_length_[q] + 1);
  }
  num_vertices_ = row_offset_[num_qubits_];
}

VertexId Circuit::vertex(int qubit, int slot) const {
  if (qubit < 0 || qubit >= num_qubits_ || slot < 0 || slot > wire_length_[qubit]) {
    throw InputError("no vertex at qubit " + std::to_string(qubit) + ", slot " +
                     std::to_string(slot));
  }
  return VertexId{row_offset_[qubit] + static_cast<std::uint32_t>(slot)};
}

VertexCoords Circuit::coords(VertexId v) const {
  if (!has_vertex(v)) throw InputError("unknown vertex id " + std::to_string(v.value));
  auto it = std::upper_bound(row_offset_.begin(), row_offset_.end(), v.value);
  const int q = static_cast<int>(it - row_offset_.begin()) - 1;
  return {q, static_cast<int>(v.value - row_offset_[q])};
}

bool Circuit::is_output(VertexId v) const {
  const auto c = coords(v);
  return c.slot == wire_length_[c.qubit];
}

VertexSet Circuit::outputs() const {
  std::vector<VertexId> ids;
  for (int q = 0; q < num_qubits_; ++q) ids.push_back(output_vertex(q));
  return VertexSet(std::move(ids));
}

std::optional<std::size_t> Circuit::producer(VertexId v) const {
  const auto c = coords(v);
  if (c.slot == 0) return std::nullopt;
  return wire_gates_[c.qubit][c.slot - 1];
}

std::optional<std::size_t> Circuit::consumer(VertexId v) const {
  const auto c = coords(v);
  if (c.slot == wire_length_[c.qubit]) return std::nullopt;
  return wire_gates_[c.qubit][c.slot];
}

std::vector<VertexId> Circuit::gate_inputs(std::size_t g) const {
  std::vector<VertexId> out;
  const Gate& gate = gates_.at(g);
  for (std::size_t k = 0; k < gate.qubits.size(); ++k) {
    out.push_back(vertex(gate.qubits[k], slot_[g][k]));
  }
  return out;
}

std::vector<VertexId> Circuit::gate_outputs(std::size_t g) const {
  std::vector<VertexId> out;
  const Gate& gate = gates_.at(g);
  for (std::size_t k = 0; k < gate.qubits.size(); ++k) {
    out.push_back(vertex(gate.qubits[k], slot_[g][k] + 1));
  }
  return out;
}

std::size_t Circuit::num_moments() const {
  int m = -1;
  for (const auto& g : gates_) m = std::max(m, g.moment);
  return static_cast<std::size_t>(m + 1);
}

// ------------------------------------------------------------------ parsing

namespace {

class LineCursor {
 public:
  LineCursor(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_space();
    return pos_ >= text_.size();
  }
  std::size_t column() const { return pos_ + 1; }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void advance() { ++pos_; }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, column(), what); }

  long read_integer(const char* what) {
    skip_space();
    long value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
    if (ec != std::errc() || !at_token_end(ptr)) fail(std::string("expected ") + what);
    pos_ = ptr - text_.data();
    return value;
  }

  double read_real() {
    skip_space();
    double value = 0;
    const char* first = text_.data() + pos_;
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, text_.data() + text_.size(), value);
    if (ec != std::errc()) fail("expected a decimal number");
    pos_ = ptr - text_.data();
    return value;
  }

  std::string read_name() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    if (pos_ == start) fail("expected a gate name");
    return std::string(text_.substr(start, pos_ - start));
  }

 private:
  bool at_token_end(const char* ptr) const {
    return ptr == text_.data() + text_.size() || std::isspace(static_cast<unsigned char>(*ptr));
  }

  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

std::string_view strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

constexpr double kUnitarityTolerance = 1e-12;

}  // namespace

Circuit parse_circuit(std::string_view text) {
  std::optional<int> num_qubits;
  std::vector<Gate> gates;
  std::vector<std::size_t> gate_lines;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = strip_comment(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (is_blank(line)) continue;
    LineCursor cur(line, line_no);

    if (!num_qubits) {
      const long n = cur.read_integer("qubit count");
      if (n <= 0 || n > 62) throw ParseError(line_no, 1, "qubit count must be in [1, 62]");
      if (!cur.done()) cur.fail("unexpected text after qubit count");
      num_qubits = static_cast<int>(n);
      continue;
    }

    Gate gate;
    const long moment = cur.read_integer("moment index");
    if (moment < 0) cur.fail("moment index must be non-negative");
    gate.moment = static_cast<int>(moment);

    cur.skip_space();
    const std::size_t name_col = cur.column();
    const std::string name = cur.read_name();
    const GateInfo* info = find_gate(name);
    if (info == nullptr) throw ParseError(line_no, name_col, "unknown gate kind '" + name + "'");
    gate.kind = info->kind;

    if (cur.peek() == '(') {
      cur.advance();
      while (true) {
        gate.params.push_back(cur.read_real());
        cur.skip_space();
        if (cur.peek() == ',') {
          cur.advance();
          continue;
        }
        if (cur.peek() == ')') {
          cur.advance();
          break;
        }
        cur.fail("expected ',' or ')' in parameter list");
      }
    }
    if (static_cast<int>(gate.params.size()) != info->num_params) {
      throw ParseError(line_no, name_col,
                       "gate '" + name + "' takes " + std::to_string(info->num_params) +
                           " parameters, got " + std::to_string(gate.params.size()));
    }

    while (!cur.done()) {
      const std::size_t col = cur.column();
      const long q = cur.read_integer("qubit index");
      if (q < 0 || q >= *num_qubits) {
        throw ParseError(line_no, col, "qubit index " + std::to_string(q) + " out of range");
      }
      if (std::find(gate.qubits.begin(), gate.qubits.end(), q) != gate.qubits.end()) {
        throw ParseError(line_no, col, "repeated qubit " + std::to_string(q));
      }
      gate.qubits.push_back(static_cast<int>(q));
    }
    if (gate.arity() != info->arity) {
      throw ParseError(line_no, name_col,
                       "gate '" + name + "' acts on " + std::to_string(info->arity) +
                           " qubit(s), got " + std::to_string(gate.qubits.size()));
    }

    gate.matrix = gate_matrix(gate.kind, gate.params);
    if (unitarity_error(gate.matrix, gate.dim()) >= kUnitarityTolerance) {
      throw ParseError(line_no, name_col, "explicit matrix is not unitary");
    }
    gates.push_back(std::move(gate));
    gate_lines.push_back(line_no);
  }
  if (!num_qubits) throw ParseError(line_no, 1, "missing qubit count");

  std::vector<std::size_t> order(gates.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return gates[a].moment < gates[b].moment; });

  std::vector<Gate> sorted;
  std::vector<int> last_moment(*num_qubits, -1);
  for (std::size_t k : order) {
    for (int q : gates[k].qubits) {
      if (last_moment[q] == gates[k].moment) {
        throw ParseError(gate_lines[k], 1,
                         "qubit " + std::to_string(q) + " used twice in moment " +
                             std::to_string(gates[k].moment));
      }
      last_moment[q] = gates[k].moment;
    }
    sorted.push_back(std::move(gates[k]));
  }
  return Circuit(*num_qubits, std::move(sorted));
}

Circuit read_circuit_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open circuit file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_circuit(ss.str());
}

std::string format_circuit(const Circuit& c) {
  std::string out = std::to_string(c.num_qubits()) + "\n";
  char buf[64];
  for (const Gate& g : c.gates()) {
    out += std::to_string(g.moment) + " " + std::string(gate_info(g.kind).name);
    if (!g.params.empty()) {
      out += "(";
      for (std::size_t k = 0; k < g.params.size(); ++k) {
        if (k) out += ",";
        auto res = std::to_chars(buf, buf + sizeof(buf), g.params[k]);
        out.append(buf, res.ptr);
      }
      out += ")";
    }
    for (int q : g.qubits) out += " " + std::to_string(q);
    out += "\n";
  }
  return out;
}

// ------------------------------------------------------------ lightcones

GateSet lightcone(const Circuit& c, const VertexSet& s) {
  std::vector<char> in_cone(c.gates().size(), 0);
  std::vector<VertexId> stack;
  for (VertexId v : s) {
    if (!c.has_vertex(v)) throw InputError("unknown vertex id " + std::to_string(v.value));
    stack.push_back(v);
  }
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    const auto g = c.producer(v);
    if (!g || in_cone[*g]) continue;
    in_cone[*g] = 1;
    for (VertexId in : c.gate_inputs(*g)) stack.push_back(in);
  }
  GateSet out;
  for (std::size_t g = 0; g < in_cone.size(); ++g) {
    if (in_cone[g]) out.push_back(g);
  }
  return out;
}

VertexSet lightcone_inputs(const Circuit& c, const VertexSet& s) {
  std::vector<VertexId> ids;
  for (std::size_t g : lightcone(c, s)) {
    for (VertexId in : c.gate_inputs(g)) ids.push_back(in);
  }
  return VertexSet(std::move(ids));
}

Circuit subcircuit(const Circuit& c, const GateSet& gates) {
  std::vector<char> chosen(c.gates().size(), 0);
  for (std::size_t g : gates) {
    if (g >= c.gates().size()) throw InputError("gate index " + std::to_string(g) + " out of range");
    chosen[g] = 1;
  }
  std::vector<Gate> kept;
  for (std::size_t g = 0; g < chosen.size(); ++g) {
    if (!chosen[g]) continue;
    for (VertexId in : c.gate_inputs(g)) {
      const auto p = c.producer(in);
      if (p && !chosen[*p]) {
        throw InputError("gate set is not dependency-closed: gate " + std::to_string(g) +
                         " needs gate " + std::to_string(*p));
      }
    }
    kept.push_back(c.gate(g));
  }
  return Circuit(c.num_qubits(), std::move(kept));
}

// ----------------------------------------------------------- random circuits

Circuit make_random_circuit(const RandomCircuitOptions& options) {
  const int rows = options.rows;
  const int cols = options.cols;
  if (rows <= 0 || cols <= 0 || rows * cols > 62) throw InputError("bad grid size");
  if (options.cycles < 0) throw InputError("negative cycle count");
  const int n = rows * cols;
  auto rng = make_rng(options.seed, RngStream::kCircuitGeneration);

  constexpr GateKind kSingles[] = {GateKind::kX12, GateKind::kY12, GateKind::kHz12};
  std::vector<int> previous(n, -1);
  std::vector<Gate> gates;
  int moment = 0;

  auto single_layer = [&]() {
    for (int q = 0; q < n; ++q) {
      int pick;
      do {
        pick = static_cast<int>(rng.below(3));
      } while (pick == previous[q]);
      previous[q] = pick;
      Gate g;
      g.moment = moment;
      g.kind = kSingles[pick];
      g.qubits = {q};
      g.matrix = gate_matrix(g.kind, g.params);
      gates.push_back(std::move(g));
    }
    ++moment;
  };

  // Coupler patterns: 0/1 horizontal (even/odd column), 2/3 vertical (even/odd row).
  constexpr int kSequence[] = {0, 1, 2, 3, 2, 3, 0, 1};
  auto coupler_layer = [&](int pattern) {
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        int r2 = r, c2 = c;
        if (pattern < 2) {
          if (c % 2 != pattern) continue;
          c2 = c + 1;
        } else {
          if (r % 2 != pattern - 2) continue;
          r2 = r + 1;
        }
        if (r2 >= rows || c2 >= cols) continue;
        Gate g;
        g.moment = moment;
        if (options.use_fsim) {
          g.kind = GateKind::kFsim;
          g.params = {std::numbers::pi / 2, std::numbers::pi / 6};
        } else {
          g.kind = GateKind::kCz;
        }
        g.qubits = {r * cols + c, r2 * cols + c2};
        g.matrix = gate_matrix(g.kind, g.params);
        gates.push_back(std::move(g));
      }
    }
    ++moment;
  };

  for (int cycle = 0; cycle < options.cycles; ++cycle) {
    single_layer();
    coupler_layer(kSequence[cycle % 8]);
  }
  single_layer();
  return Circuit(n, std::move(gates));
}

}  // namespace slicesim
