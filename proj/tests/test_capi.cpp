#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include <json.hpp>

#include "bgc.h"

namespace {

using nlohmann::json;

const char* kIdentityChannel = R"({
  "modes_in": 1, "modes_out": 1, "variant": "covariant",
  "K": [[{"re": 1.0, "im": 0.0}]],
  "mu": [[{"re": 0.0, "im": 0.0}]]
})";

const char* kAmplifierSqrt2 = R"({
  "modes_in": 1, "modes_out": 1, "variant": "covariant",
  "K": [[{"re": 1.4142135623730951, "im": 0.0}]],
  "mu": [[{"re": 0.5, "im": 0.0}]]
})";

struct Channel {
  bgc_channel* ptr = nullptr;
  ~Channel() { bgc_channel_free(ptr); }
};

struct State {
  bgc_state* ptr = nullptr;
  ~State() { bgc_state_free(ptr); }
};

std::string take(char* text) {
  std::string out = text ? text : "";
  bgc_string_free(text);
  return out;
}

}  // namespace

TEST_CASE("channel round-trips through JSON") {
  Channel ch;
  REQUIRE(bgc_channel_from_json(kAmplifierSqrt2, &ch.ptr) == BGC_OK);
  char* text = nullptr;
  REQUIRE(bgc_channel_to_json(ch.ptr, &text) == BGC_OK);
  json j = json::parse(take(text));
  CHECK(j["modes_in"] == 1);
  CHECK(j["variant"] == "covariant");

  Channel again;
  REQUIRE(bgc_channel_from_json(j.dump().c_str(), &again.ptr) == BGC_OK);
  char* text2 = nullptr;
  REQUIRE(bgc_channel_to_json(again.ptr, &text2) == BGC_OK);
  CHECK(json::parse(take(text2)) == j);
}

TEST_CASE("state round-trips through JSON") {
  State vac;
  REQUIRE(bgc_state_vacuum(2, &vac.ptr) == BGC_OK);
  char* text = nullptr;
  REQUIRE(bgc_state_to_json(vac.ptr, &text) == BGC_OK);
  json j = json::parse(take(text));
  State again;
  REQUIRE(bgc_state_from_json(j.dump().c_str(), &again.ptr) == BGC_OK);
  char* text2 = nullptr;
  REQUIRE(bgc_state_to_json(again.ptr, &text2) == BGC_OK);
  CHECK(json::parse(take(text2)) == j);
}

TEST_CASE("validation and scalar functionals") {
  Channel id;
  REQUIRE(bgc_channel_from_json(kIdentityChannel, &id.ptr) == BGC_OK);
  int valid = 0, extreme = 0;
  CHECK(bgc_channel_validate(id.ptr, 1e-9, &valid, &extreme) == BGC_OK);
  CHECK(valid == 1);
  CHECK(extreme == 1);

  Channel amp;
  REQUIRE(bgc_channel_from_json(kAmplifierSqrt2, &amp.ptr) == BGC_OK);
  double entropy = 0;
  CHECK(bgc_channel_min_output_entropy(amp.ptr, &entropy) == BGC_OK);
  CHECK(entropy == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));

  double norm = 0;
  CHECK(bgc_channel_one_to_p_norm(amp.ptr, 2.0, &norm) == BGC_OK);
  CHECK(norm == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));

  CHECK(bgc_channel_one_to_p_norm(amp.ptr, 0.5, &norm) == BGC_ERR_BAD_ORDER);
  CHECK(std::string(bgc_last_error()).size() > 0);
}

TEST_CASE("apply and state functionals") {
  Channel amp;
  REQUIRE(bgc_channel_from_json(kAmplifierSqrt2, &amp.ptr) == BGC_OK);
  State vac, out;
  REQUIRE(bgc_state_vacuum(1, &vac.ptr) == BGC_OK);
  REQUIRE(bgc_channel_apply(amp.ptr, vac.ptr, &out.ptr) == BGC_OK);

  double entropy = 0;
  CHECK(bgc_state_von_neumann_entropy(out.ptr, &entropy) == BGC_OK);
  CHECK(entropy == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));

  double spec[3] = {0, 0, 0};
  CHECK(bgc_state_spectrum(out.ptr, 3, spec) == BGC_OK);
  CHECK(spec[0] == doctest::Approx(0.5));
  CHECK(spec[1] == doctest::Approx(0.25));
  CHECK(spec[2] == doctest::Approx(0.125));
}

TEST_CASE("decompose, complement, diagonalize") {
  Channel amp;
  REQUIRE(bgc_channel_from_json(kAmplifierSqrt2, &amp.ptr) == BGC_OK);

  Channel att, second;
  CHECK(bgc_channel_decompose(amp.ptr, &att.ptr, &second.ptr) == BGC_OK);
  char* att_text = nullptr;
  CHECK(bgc_channel_to_json(att.ptr, &att_text) == BGC_OK);
  json att_json = json::parse(take(att_text));
  CHECK(att_json["K"][0][0]["re"].get<double>() == doctest::Approx(1.0));

  Channel comp;
  CHECK(bgc_channel_complement(amp.ptr, &comp.ptr) == BGC_OK);
  char* comp_text = nullptr;
  CHECK(bgc_channel_to_json(comp.ptr, &comp_text) == BGC_OK);
  json comp_json = json::parse(take(comp_text));
  CHECK(comp_json["variant"] == "contravariant");
  CHECK(comp_json["K"][0][0]["re"].get<double>() == doctest::Approx(1.0));

  char* diag_text = nullptr;
  CHECK(bgc_channel_diagonalize(amp.ptr, &diag_text) == BGC_OK);
  json diag = json::parse(take(diag_text));
  CHECK(diag["factors"].size() == 1);
  CHECK(diag["factors"][0]["k"].get<double>() ==
        doctest::Approx(std::sqrt(2.0)));

  Channel ident;
  REQUIRE(bgc_channel_from_json(kIdentityChannel, &ident.ptr) == BGC_OK);
  Channel ident_comp;
  CHECK(bgc_channel_complement(ident.ptr, &ident_comp.ptr) == BGC_OK);
}

TEST_CASE("capacity through the C surface") {
  Channel id;
  REQUIRE(bgc_channel_from_json(kIdentityChannel, &id.ptr) == BGC_OK);
  const char* constraint = R"({"epsilon": [[{"re": 1.0, "im": 0.0}]], "E": 1.0})";
  char* text = nullptr;
  REQUIRE(bgc_channel_capacity(id.ptr, constraint, &text) == BGC_OK);
  json sol = json::parse(take(text));
  CHECK(sol["capacity_nats"].get<double>() ==
        doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-9));
  CHECK(sol["path"] == "water_filling");
}

TEST_CASE("witness and wehrl through the C surface") {
  const char* factor = R"({"k": 1.4142135623730951, "mu": 0.5})";
  char* text = nullptr;
  REQUIRE(bgc_witness_optimizer(factor, "neg_x_sq", 20, 99, 12, &text) ==
          BGC_OK);
  json rep = json::parse(take(text));
  CHECK(rep["pass"].get<bool>());
  CHECK(rep["vacuum_value"].get<double>() ==
        doctest::Approx(-1.0 / 3.0).epsilon(1e-6));

  const char* coherent_state = R"({
    "modes": 1,
    "mean": [{"re": 0.5, "im": 0.0}],
    "corr": [[{"re": 0.5, "im": 0.0}]]
  })";
  double value = 0;
  REQUIRE(bgc_wehrl(coherent_state, "neg_x_log_x", 30, 64, 64, &value) ==
          BGC_OK);
  CHECK(value == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("error paths set statuses and messages") {
  bgc_channel* ch = nullptr;
  CHECK(bgc_channel_from_json("not json", &ch) == BGC_ERR_PARSE);
  CHECK(bgc_channel_from_json(nullptr, &ch) == BGC_ERR_BAD_ARGUMENT);
  CHECK(std::string(bgc_status_name(BGC_ERR_PARSE)) == "parse_error");

  const char* bad_channel = R"({
    "modes_in": 1, "modes_out": 1, "variant": "covariant",
    "K": [[{"re": 1.4142135623730951, "im": 0.0}]],
    "mu": [[{"re": 0.3, "im": 0.0}]]
  })";
  Channel invalid;
  REQUIRE(bgc_channel_from_json(bad_channel, &invalid.ptr) == BGC_OK);
  int valid = 1, extreme = 1;
  CHECK(bgc_channel_validate(invalid.ptr, 1e-9, &valid, &extreme) == BGC_OK);
  CHECK(valid == 0);

  State vac, out;
  REQUIRE(bgc_state_vacuum(1, &vac.ptr) == BGC_OK);
  CHECK(bgc_channel_apply(invalid.ptr, vac.ptr, &out.ptr) ==
        BGC_ERR_INVALID_CHANNEL);
}
