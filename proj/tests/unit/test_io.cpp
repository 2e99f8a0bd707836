// Copyright 2026 The qseq Authors
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

#include <filesystem>

#include <gtest/gtest.h>

#include "qseq/io.hpp"

namespace qseq {
namespace {

using io::Json;

TEST(MatrixJsonTest, PauliXEncoding) {
  const Json expected = Json::parse("[[[0,0],[1,0]],[[1,0],[0,0]]]");
  EXPECT_EQ(io::matrix_to_json(pauli_x()), expected);
  EXPECT_EQ(io::matrix_from_json(expected), pauli_x());
  EXPECT_EQ(io::matrix_from_json(io::matrix_to_json(pauli_y())), pauli_y());
}

TEST(MatrixJsonTest, SchemaErrorsCarryPointers) {
  try {
    io::matrix_from_json(Json::parse("[[[0,0],[1,0]],[[1,0]]]"), "/m");
    FAIL();
  } catch (const io::SchemaError& e) {
    EXPECT_EQ(e.pointer(), "/m/1");
  }
  try {
    io::matrix_from_json(Json::parse("[[[0,0],[1,\"x\"]]]"));
    FAIL();
  } catch (const io::SchemaError& e) {
    EXPECT_EQ(e.pointer(), "/0/1/1");
  }
}

TEST(PovmJsonTest, RoundTrip) {
  const Povm c = observable_C(0.8);
  const Json j = io::povm_to_json(c);
  EXPECT_EQ(j["dim"], 2);
  const Povm back = io::povm_from_json(j);
  EXPECT_EQ(back.labels(), c.labels());
  EXPECT_EQ(max_effect_distance(back, c), 0.0);
}

TEST(PovmJsonTest, ProductArityRoundTrip) {
  const ProductLabeledPovm m(observable_C(0.8), {1, 1});
  const Json j = io::povm_to_json(m);
  EXPECT_EQ(j["factor_arity"], Json::parse("[1,1]"));
  const ProductLabeledPovm back = io::product_povm_from_json(j);
  EXPECT_EQ(back.arities(), m.arities());
  EXPECT_THROW(io::product_povm_from_json(io::povm_to_json(observable_C(0.8))),
               io::SchemaError);
}

TEST(PovmJsonTest, Errors) {
  Json j = io::povm_to_json(qubit_binary(0.8, xz_axis(0.0)));
  j["outcomes"][1]["label"] = "one";
  try {
    io::povm_from_json(j);
    FAIL();
  } catch (const io::SchemaError& e) {
    EXPECT_EQ(e.pointer(), "/outcomes/1/label");
  }
  Json dup = io::povm_to_json(qubit_binary(0.8, xz_axis(0.0)));
  dup["outcomes"][1]["label"] = dup["outcomes"][0]["label"];
  EXPECT_THROW(io::povm_from_json(dup), io::SchemaError);
  Json wrong_dim = io::povm_to_json(qubit_binary(0.8, xz_axis(0.0)));
  wrong_dim["dim"] = 3;
  try {
    io::povm_from_json(wrong_dim);
    FAIL();
  } catch (const io::SchemaError& e) {
    EXPECT_EQ(e.pointer(), "/outcomes/0/matrix");
  }
  EXPECT_THROW(io::povm_from_json(Json::parse("{\"dim\": 2}")), io::SchemaError);
}

TEST(ChannelJsonTest, RoundTripWithPartition) {
  const KrausChannel lud = luders(observable_C(0.6));
  const Json j = io::channel_to_json(lud);
  EXPECT_TRUE(j["partition"].contains("1,-1"));
  const KrausChannel back = io::channel_from_json(j);
  ASSERT_TRUE(back.has_partition());
  EXPECT_EQ(back.kraus().size(), lud.kraus().size());
  EXPECT_EQ(back.branch(Label{-1, 1}).kraus_indices, lud.branch(Label{-1, 1}).kraus_indices);
  EXPECT_EQ(frobenius_distance(choi(back).matrix, choi(lud).matrix), 0.0);
}

TEST(ChannelJsonTest, BadPartitionKey) {
  Json j = io::channel_to_json(luders(qubit_binary(0.8, xz_axis(0.0))));
  j["partition"]["x"] = Json::array({0});
  EXPECT_THROW(io::channel_from_json(j), io::SchemaError);
  EXPECT_EQ(io::parse_partition_key("3,-2"), (Label{3, -2}));
  EXPECT_THROW(io::parse_partition_key("3,"), io::SchemaError);
  EXPECT_THROW(io::parse_partition_key("1.5"), io::SchemaError);
}

TEST(ChannelJsonTest, KrausShapeError) {
  Json j = io::channel_to_json(identity_channel(2));
  j["dim_out"] = 3;
  try {
    io::channel_from_json(j);
    FAIL();
  } catch (const io::SchemaError& e) {
    EXPECT_EQ(e.pointer(), "/kraus/0");
  }
}

TEST(DilationJsonTest, RoundTrip) {
  const NaimarkDilation d = naimark_minimal(observable_C(0.8));
  const NaimarkDilation back = io::dilation_from_json(io::dilation_to_json(d));
  EXPECT_EQ(back.dim_k, d.dim_k);
  EXPECT_EQ(back.v, d.v);
  EXPECT_TRUE(verify_dilation(observable_C(0.8), back));
}

TEST(OutcomeJsonTest, Fields) {
  FeasibilityOutcome o;
  o.status = FeasibilityStatus::kFeasible;
  o.residual = 1e-9;
  o.iterations = 12;
  o.witness = std::vector<ComplexMatrix>{identity(2)};
  const Json j = io::outcome_to_json(o);
  EXPECT_EQ(j["status"], "feasible");
  EXPECT_EQ(j["iterations"], 12);
  EXPECT_EQ(j["witness"].size(), 1u);
  EXPECT_FALSE(io::outcome_to_json(o, false).contains("witness"));
}

TEST(DocumentKindTest, Detection) {
  EXPECT_TRUE(io::is_channel_document(io::channel_to_json(identity_channel(2))));
  EXPECT_FALSE(io::is_channel_document(io::povm_to_json(trivial_povm(2))));
  EXPECT_THROW(io::is_channel_document(Json::parse("{\"x\":1}")), io::SchemaError);
}

TEST(FileTest, WriteReadRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "qseq_io_test";
  const auto path = dir / "nested" / "a.json";
  io::write_json(path, io::povm_to_json(observable_C(0.3)));
  EXPECT_EQ(io::povm_from_json(io::read_json(path)).size(), 4u);
  std::filesystem::remove_all(dir);
  EXPECT_THROW(io::read_json(dir / "missing.json"), Error);
}

}  // namespace
}  // namespace qseq
