// Copyright 2026 The qstack Authors
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

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "qstack/qstack.h"

namespace {

std::string csv(const qs_table* t) {
  char* text = nullptr;
  REQUIRE(qs_table_to_csv(t, &text) == QS_OK);
  std::string out(text);
  qs_string_free(text);
  return out;
}

}  // namespace

TEST_CASE("status codes and last error") {
  double v = 0.0;
  CHECK(qs_bandwidth(150, 0.5, 2, 120e-9, &v) == QS_OK);
  CHECK(v == 1.25e9);
  CHECK(qs_bandwidth(150, 2.0, 2, 120e-9, &v) == QS_ERR_VALIDATION);
  CHECK(std::string(qs_last_error()).find("utilisation") != std::string::npos);
  CHECK(qs_sqv(100, 1e-6, nullptr) == QS_ERR_VALIDATION);
  CHECK(qs_sqv(100, 1e-6, &v) == QS_OK);
  CHECK(v == 1e8);
  CHECK(std::string(qs_version()) == "0.1.0");
}

TEST_CASE("tables round trip through csv") {
  const char* names[] = {"a", "b"};
  qs_table* t = nullptr;
  REQUIRE(qs_table_create(names, 2, &t) == QS_OK);
  const double row[] = {0.1, 1.25e9};
  CHECK(qs_table_add_row(t, row, 2) == QS_OK);
  CHECK(qs_table_add_row(t, row, 1) == QS_ERR_VALIDATION);
  CHECK(qs_table_row_count(t) == 1);
  CHECK(qs_table_column_count(t) == 2);
  CHECK(std::string(qs_table_column_name(t, 1)) == "b");
  CHECK(qs_table_cell_is_number(t, 0, 0) == 1);
  double x = 0.0;
  CHECK(qs_table_number(t, 0, 0, &x) == QS_OK);
  CHECK(x == 0.1);
  CHECK(qs_table_number(t, 3, 0, &x) == QS_ERR_VALIDATION);
  CHECK(csv(t) == "a,b\n0.1,1.25e9\n");
  const std::string path = "c_api_table.csv";
  CHECK(qs_table_write_csv(t, path.c_str()) == QS_OK);
  std::FILE* f = std::fopen(path.c_str(), "r");
  REQUIRE(f);
  char buf[64] = {};
  const std::size_t n = std::fread(buf, 1, sizeof buf - 1, f);
  std::fclose(f);
  std::remove(path.c_str());
  CHECK(std::string(buf, n) == "a,b\n0.1,1.25e9\n");
  qs_table_free(t);
  qs_table_free(nullptr);
}

TEST_CASE("noisy shots and closed forms") {
  char bits[3] = {};
  CHECK(qs_run_noisy(2, "x 1", qs_noise{0.0, 0.0}, 1, bits, sizeof bits) == QS_OK);
  CHECK(std::string(bits) == "01");
  CHECK(qs_run_noisy(2, "x 1", qs_noise{0.0, 0.0}, 1, bits, 2) == QS_ERR_VALIDATION);
  CHECK(qs_run_noisy(2, "bogus 0", qs_noise{0.0, 0.0}, 1, bits, sizeof bits) == QS_ERR_VALIDATION);
  double v = 0.0;
  CHECK(qs_n_measurements(0.1, 0.0, &v) == QS_OK);
  CHECK(v == doctest::Approx(198.0).epsilon(1e-14));
  CHECK(qs_var_scheme2(0.5, 0.0, 2500, 1, &v) == QS_OK);
  CHECK(v == doctest::Approx(1e-4));
  uint64_t shots = 0;
  int feasible = 0;
  CHECK(qs_samples_required(0.5, 0.0, 1, 0.01, 0, &shots, &feasible) == QS_OK);
  CHECK(shots == 2500);
  CHECK(feasible == 1);
}

TEST_CASE("runs are reproducible through the handle api") {
  qs_avqe_params p;
  qs_avqe_params_init(&p);
  p.precision = 0.05;
  p.seed = 3;
  qs_avqe_result a{}, b{};
  qs_table* history = nullptr;
  REQUIRE(qs_avqe_run(&p, 0.7, 0, &a, &history) == QS_OK);
  REQUIRE(qs_avqe_run(&p, 0.7, 0, &b, nullptr) == QS_OK);
  CHECK(a.mu == b.mu);
  CHECK(a.iterations == b.iterations);
  CHECK(qs_table_row_count(history) == static_cast<size_t>(a.iterations));
  CHECK(std::string(qs_table_column_name(history, 0)) == "iter");
  qs_table_free(history);
  p.alpha = 2.0;
  CHECK(qs_avqe_run(&p, 0.7, 0, &a, nullptr) == QS_ERR_VALIDATION);

  qs_rb_params rb;
  qs_rb_params_init(&rb);
  rb.sequences_per_depth = 5;
  qs_table *s1 = nullptr, *f1 = nullptr, *s2 = nullptr, *f2 = nullptr;
  REQUIRE(qs_rb_run(&rb, &s1, &f1) == QS_OK);
  rb.threads = 3;
  REQUIRE(qs_rb_run(&rb, &s2, &f2) == QS_OK);
  CHECK(csv(s1) == csv(s2));
  CHECK(csv(f1) == csv(f2));
  for (qs_table* t : {s1, f1, s2, f2}) qs_table_free(t);
}

TEST_CASE("decoder handle") {
  qs_decoder* d = nullptr;
  CHECK(qs_decoder_create(4, 1, &d) == QS_ERR_VALIDATION);
  REQUIRE(qs_decoder_create(5, 5, &d) == QS_OK);
  CHECK(qs_decoder_vertex_count(d) == 5 * 20 + 1);
  size_t hot_count = 0, err_count = 0;
  REQUIRE(qs_decoder_sample(d, 0.02, 0.02, 8, nullptr, 0, &hot_count, nullptr, 0, &err_count) == QS_OK);
  std::vector<int> hot(hot_count), errors(err_count);
  REQUIRE(qs_decoder_sample(d, 0.02, 0.02, 8, hot.data(), hot.size(), &hot_count, errors.data(), errors.size(),
                            &err_count) == QS_OK);
  std::vector<int> correction(qs_decoder_edge_count(d));
  size_t corr_count = 0;
  uint64_t work = 0;
  REQUIRE(qs_decoder_decode(d, hot.data(), hot.size(), correction.data(), correction.size(), &corr_count, &work) ==
          QS_OK);
  std::vector<int> again(qs_decoder_vertex_count(d));
  size_t again_count = 0;
  REQUIRE(qs_decoder_syndrome(d, correction.data(), corr_count, again.data(), again.size(), &again_count) == QS_OK);
  again.resize(again_count);
  CHECK(again == hot);
  int flipped = -1;
  CHECK(qs_decoder_logical_flip(d, errors.data(), errors.size(), correction.data(), corr_count, &flipped) == QS_OK);
  CHECK((flipped == 0 || flipped == 1));
  const int bad = 100000;
  CHECK(qs_decoder_syndrome(d, &bad, 1, again.data(), again.size(), &again_count) == QS_ERR_VALIDATION);
  qs_decoder_free(d);

  qs_table* t = nullptr;
  REQUIRE(qs_qec_timeout(3, 0.01, -1, 200, 1, 1, &t, nullptr) == QS_OK);
  CHECK(csv(t).rfind("d,p,W_max,p_toe,inequality_holds\n3,0.01,inf,0,1\n", 0) == 0);
  qs_table_free(t);
}
