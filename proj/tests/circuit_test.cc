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

#include <gtest/gtest.h>

#include <cmath>

#include "slicesim/circuit.h"
#include "slicesim/errors.h"
#include "slicesim/gates.h"
#include "test_util.h"

namespace slicesim {
namespace {

TEST(Gates, AllFixedGatesAreUnitary) {
  for (GateKind k : {GateKind::kH, GateKind::kX, GateKind::kX12, GateKind::kY12, GateKind::kHz12,
                     GateKind::kCz}) {
    const GateInfo& info = gate_info(k);
    EXPECT_LT(unitarity_error(gate_matrix(k, {}), 1 << info.arity), 1e-14) << info.name;
  }
  EXPECT_LT(unitarity_error(gate_matrix(GateKind::kFsim, {0.3, 1.1}), 4), 1e-14);
  EXPECT_LT(unitarity_error(gate_matrix(GateKind::kRz, {0.7}), 2), 1e-14);
}

TEST(Gates, SqrtXSquaresToX) {
  const auto m = gate_matrix(GateKind::kX12, {});
  const Complex a = m[0] * m[0] + m[1] * m[2];
  const Complex b = m[0] * m[1] + m[1] * m[3];
  EXPECT_NEAR(std::abs(a), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(b - Complex(1.0)), 0.0, 1e-14);
}

TEST(Gates, Diagonality) {
  EXPECT_TRUE(is_diagonal(gate_matrix(GateKind::kCz, {}), 4));
  EXPECT_TRUE(is_diagonal(gate_matrix(GateKind::kRz, {0.2}), 2));
  EXPECT_FALSE(is_diagonal(gate_matrix(GateKind::kFsim, {1.0, 0.5}), 4));
  EXPECT_TRUE(is_diagonal(gate_matrix(GateKind::kFsim, {0.0, 0.5}), 4));
}

TEST(Parse, BasicCircuit) {
  const Circuit c = parse_circuit(
      "# comment\n"
      "3\n"
      "0 h 0\n"
      "0 x 1\n"
      "1 cz 0 1   # trailing\n"
      "2 fsim(1.5707963267948966, 0.5235987755982988) 1 2\n");
  EXPECT_EQ(c.num_qubits(), 3);
  ASSERT_EQ(c.gates().size(), 4u);
  EXPECT_EQ(c.wire_length(0), 2);
  EXPECT_EQ(c.wire_length(1), 3);
  EXPECT_EQ(c.wire_length(2), 1);
  EXPECT_EQ(c.num_vertices(), 3u + 2 + 3 + 1);
  EXPECT_EQ(c.num_moments(), 3u);
}

TEST(Parse, SortsByMomentStably) {
  const Circuit c = parse_circuit("2\n1 x 0\n0 h 0\n0 h 1\n");
  EXPECT_EQ(c.gate(0).kind, GateKind::kH);
  EXPECT_EQ(c.gate(0).qubits[0], 0);
  EXPECT_EQ(c.gate(1).qubits[0], 1);
  EXPECT_EQ(c.gate(2).kind, GateKind::kX);
}

void expect_parse_error(const std::string& text, std::size_t line, std::size_t col) {
  try {
    parse_circuit(text);
    ADD_FAILURE() << "no error for: " << text;
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
    EXPECT_EQ(e.column(), col) << e.what();
  }
}

TEST(Parse, ErrorsCarryPositions) {
  expect_parse_error("2\n0 foo 0\n", 2, 3);
  expect_parse_error("2\n0 h 5\n", 2, 5);
  expect_parse_error("2\n0 cz 0 0\n", 2, 8);
  expect_parse_error("2\n0 cz 0\n", 2, 3);
  expect_parse_error("2\n0 rz 0\n", 2, 3);
  expect_parse_error("2\n0 h 0\n0 x 0\n", 3, 1);
  expect_parse_error("0\n", 1, 1);
  expect_parse_error("# only a comment\n", 2, 1);
}

TEST(Parse, RejectsNonUnitaryMatrix) {
  EXPECT_THROW(parse_circuit("1\n0 u1(1,0, 0,0, 0,0, 2,0) 0\n"), ParseError);
  EXPECT_NO_THROW(parse_circuit("1\n0 u1(0,0, 1,0, 1,0, 0,0) 0\n"));
}

TEST(Parse, RoundTripsThroughFormat) {
  const Circuit c = make_random_circuit({3, 3, 5, 42, true});
  const Circuit d = parse_circuit(format_circuit(c));
  EXPECT_EQ(format_circuit(d), format_circuit(c));
  ASSERT_EQ(d.gates().size(), c.gates().size());
  for (std::size_t g = 0; g < c.gates().size(); ++g) {
    for (std::size_t e = 0; e < c.gate(g).matrix.size(); ++e) {
      EXPECT_EQ(c.gate(g).matrix[e], d.gate(g).matrix[e]);
    }
  }
}

TEST(Vertices, CoordinatesRoundTrip) {
  const Circuit c = make_random_circuit({2, 3, 4, 7, true});
  for (std::uint32_t v = 0; v < c.num_vertices(); ++v) {
    const VertexCoords at = c.coords(VertexId{v});
    EXPECT_EQ(c.vertex(at.qubit, at.slot).value, v);
  }
  for (const Gate& g : c.gates()) {
    const auto ins = c.gate_inputs(g.index);
    const auto outs = c.gate_outputs(g.index);
    for (std::size_t k = 0; k < ins.size(); ++k) {
      EXPECT_EQ(*c.consumer(ins[k]), g.index);
      EXPECT_EQ(*c.producer(outs[k]), g.index);
      EXPECT_EQ(c.coords(outs[k]).slot, c.coords(ins[k]).slot + 1);
    }
  }
  EXPECT_EQ(c.outputs().size(), 6u);
}

TEST(Lightcone, MatchesReference) {
  for (const Circuit& c : testing::corpus(6)) {
    for (std::uint32_t v = 0; v < c.num_vertices(); v += 7) {
      const VertexSet s{VertexId{v}, VertexId{(v * 13) % static_cast<std::uint32_t>(c.num_vertices())}};
      EXPECT_EQ(lightcone(c, s), testing::reference_lightcone(c, s));
      EXPECT_EQ(lightcone_inputs(c, s), testing::reference_lightcone_inputs(c, s));
    }
  }
}

TEST(Lightcone, InputVertexHasEmptyCone) {
  const Circuit c = make_random_circuit({2, 2, 3, 1, true});
  EXPECT_TRUE(lightcone(c, VertexSet{c.input_vertex(0)}).empty());
  EXPECT_EQ(lightcone(c, c.outputs()).size(), c.gates().size());
}

TEST(Subcircuit, RequiresClosure) {
  const Circuit c = parse_circuit("1\n0 h 0\n1 x 0\n");
  EXPECT_THROW(subcircuit(c, {1}), InputError);
  EXPECT_EQ(subcircuit(c, {0}).gates().size(), 1u);
}

TEST(RandomCircuit, DeterministicAndWellFormed) {
  const RandomCircuitOptions o{3, 4, 8, 99, true};
  EXPECT_EQ(format_circuit(make_random_circuit(o)), format_circuit(make_random_circuit(o)));
  RandomCircuitOptions o2 = o;
  o2.seed = 100;
  EXPECT_NE(format_circuit(make_random_circuit(o)), format_circuit(make_random_circuit(o2)));
  const Circuit c = make_random_circuit(o);
  EXPECT_EQ(c.num_qubits(), 12);
  // No single-qubit gate repeats on a wire across consecutive layers.
  std::vector<int> last(12, -1);
  for (const Gate& g : c.gates()) {
    if (g.arity() != 1) continue;
    EXPECT_NE(static_cast<int>(g.kind), last[g.qubits[0]]);
    last[g.qubits[0]] = static_cast<int>(g.kind);
  }
}

TEST(VertexSetOps, SetAlgebra) {
  VertexSet a{VertexId{5}, VertexId{1}, VertexId{3}, VertexId{1}};
  EXPECT_EQ(a.size(), 3u);
  EXPECT_EQ(a[0].value, 1u);
  const VertexSet b{VertexId{3}, VertexId{4}};
  EXPECT_EQ(a.united(b).size(), 4u);
  EXPECT_EQ(a.minus(b), (VertexSet{VertexId{1}, VertexId{5}}));
  a.erase(VertexId{5});
  EXPECT_FALSE(a.contains(VertexId{5}));
}

}  // namespace
}  // namespace slicesim
