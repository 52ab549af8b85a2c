#include <gtest/gtest.h>

#include <fstream>

#include "padet/counting.hpp"
#include "padet/json_io.hpp"

using namespace padet;

TEST(Json, ModelRoundTrip) {
  auto f = FunctionModel::polynomial({Rational(1), fraction(-2, 3), Rational(0), Rational(5)}, 2);
  auto j = io::model(f);
  EXPECT_EQ(j.at("kind"), "polynomial");
  auto g = io::model_from(j, 2);
  EXPECT_EQ(g.coefficients(), f.coefficients());

  poly::Coeffs c{Rational(1), Rational(2), Rational(4)};
  auto s = FunctionModel::series(c, 2, 1, 2);
  auto back = io::model_from(io::model(s), 2);
  EXPECT_FALSE(back.is_polynomial());
  EXPECT_EQ(back.coefficients(), s.coefficients());
}

TEST(Json, RejectsMalformedModels) {
  EXPECT_THROW(io::model_from(nlohmann::json{{"kind", "polynomial"}}, 2), std::exception);
  EXPECT_THROW(io::model_from(nlohmann::json{{"kind", "polynomial"}, {"coeffs", {"1/0"}}}, 2), std::exception);
  EXPECT_THROW(io::model_from(nlohmann::json{{"kind", "polynomial"}, {"coeffs", {"1/2"}}}, 2), DomainError);
}

TEST(Json, CertificateKeys) {
  auto f = FunctionModel::polynomial({Rational(0), Rational(0), Rational(1)}, 2);
  auto j = io::certificate(count_points(f, Rational(0), Integer(1), 1, 2));
  for (const char* key : {"schema", "input", "catch", "per_curve", "count", "oracle_count", "oracle_match",
                          "curve_count", "bound_cprime", "ok", "centre_point"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j.at("schema"), "v1");
  EXPECT_EQ(j.at("count"), 3);
  EXPECT_FALSE(j.contains("pipeline_points"));
}

TEST(Json, ScalingCsv) {
  auto f = FunctionModel::polynomial({Rational(0), Rational(0), Rational(1)}, 2);
  std::vector<long> hs{1, 2};
  auto rows = scaling_table(f, Rational(0), Integer(1), 1, hs);
  auto csv = io::scaling_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "H,count,bound,ratio");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  EXPECT_EQ(io::scaling(rows).size(), 2u);
}

TEST(Json, ShippedModelsLoad) {
  const std::string dir = PADET_MODELS_DIR;
  EXPECT_EQ(io::load_model(dir + "/x2.json", 2).degree(), 2);
  EXPECT_EQ(io::load_model(dir + "/x3.json", 3).degree(), 3);
  EXPECT_NO_THROW(io::load_model(dir + "/cubic.json", 3));
  EXPECT_THROW(io::load_model(dir + "/cubic.json", 2), DomainError);
  EXPECT_FALSE(io::load_model(dir + "/geometric_p2.json", 2).is_polynomial());
}
