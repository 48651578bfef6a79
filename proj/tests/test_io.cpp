#include <gtest/gtest.h>

#include <clocale>
#include <cstring>
#include <random>

#include "ddd/error.hpp"
#include "ddd/io.hpp"
#include "test_support.hpp"

namespace ddd::io {
namespace {

template <typename F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected ddd::Error";
  return ErrorKind::kUsage;
}

std::string random_label(std::mt19937_64& rng) {
  static const std::string kAlphabet = "abcXYZ_09 ,\"-";
  std::uniform_int_distribution<std::size_t> len(1, 8), pick(0, kAlphabet.size() - 1);
  std::string s;
  for (std::size_t k = len(rng); k > 0; --k) s.push_back(kAlphabet[pick(rng)]);
  return s;
}

EmbeddingDataset random_embeddings(std::mt19937_64& rng, bool float_exact) {
  std::uniform_int_distribution<std::size_t> dim(1, 6), count(1, 12), cls(0, 3);
  std::uniform_real_distribution<double> coord(-1e3, 1e3);
  const std::size_t d = dim(rng);
  std::vector<EmbeddingRecord> records;
  for (std::size_t k = count(rng); k > 0; --k) {
    EmbeddingRecord rec{"id-" + std::to_string(k) + random_label(rng), "class" + std::to_string(cls(rng)),
                        random_label(rng), std::vector<double>(d)};
    for (double& x : rec.vector) {
      x = coord(rng);
      if (float_exact) x = static_cast<float>(x);
    }
    records.push_back(std::move(rec));
  }
  return EmbeddingDataset(DatasetRole::kTrain, d, std::move(records));
}

// --- embeddings --------------------------------------------------------------

TEST(EmbeddingCsv, MinimalFile) {
  const auto ds = parse_embeddings_csv("id,class,domain,e0,e1\ns1,A,d1,1.0,0.0", DatasetRole::kTest);
  EXPECT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds.dimension(), 2u);
  EXPECT_EQ(ds.class_count(), 1u);
  EXPECT_EQ(ds.records()[0], (EmbeddingRecord{"s1", "A", "d1", {1.0, 0.0}}));
}

TEST(EmbeddingCsv, CrlfBomAndEmptyDomain) {
  const auto ds = parse_embeddings_csv("\xEF\xBB\xBFid,class,domain,e0\r\nb,A,,2.5\r\na,B,x,-1e-3\r\n",
                                       DatasetRole::kTrain);
  EXPECT_EQ(ds.records()[0].sample_id, "a");
  EXPECT_EQ(ds.records()[1].domain_label, "");
  EXPECT_EQ(ds.records()[0].vector[0], -1e-3);
}

TEST(EmbeddingCsv, Errors) {
  EXPECT_EQ(kind_of([] {
              parse_embeddings_csv("id,class,domain,e0,e1\ns1,A,d,1,2,3", DatasetRole::kTrain);
            }),
            ErrorKind::kRaggedRow);
  EXPECT_EQ(kind_of([] { parse_embeddings_csv("id,class,domain,e0\ns1,A,d,abc", DatasetRole::kTrain); }),
            ErrorKind::kParseError);
  EXPECT_EQ(kind_of([] { parse_embeddings_csv("id,class,domain,e0\ns1,A,d,1,5", DatasetRole::kTrain); }),
            ErrorKind::kRaggedRow);
  EXPECT_EQ(kind_of([] { parse_embeddings_csv("id,class,domain,e0\ns1,A,d,inf", DatasetRole::kTrain); }),
            ErrorKind::kNonFiniteValue);
  EXPECT_EQ(kind_of([] { parse_embeddings_csv("id,class,domain,e0\ns1,A,d,nan", DatasetRole::kTrain); }),
            ErrorKind::kNonFiniteValue);
  EXPECT_EQ(kind_of([] {
              parse_embeddings_csv("id,class,domain,e0\ns1,A,d,1\ns1,B,d,2", DatasetRole::kTrain);
            }),
            ErrorKind::kDuplicateSampleId);
  EXPECT_EQ(kind_of([] { parse_embeddings_csv("id,label,domain,e0\ns1,A,d,1", DatasetRole::kTrain); }),
            ErrorKind::kParseError);
  EXPECT_EQ(kind_of([] { parse_embeddings_csv("id,class,domain,e1\ns1,A,d,1", DatasetRole::kTrain); }),
            ErrorKind::kParseError);
  EXPECT_EQ(kind_of([] { parse_embeddings_csv("id,class,domain\ns1,A,d", DatasetRole::kTrain); }),
            ErrorKind::kParseError);
  EXPECT_EQ(kind_of([] { parse_embeddings_csv("id,class,domain,e0\n", DatasetRole::kTrain); }),
            ErrorKind::kEmptyDataset);
}

TEST(EmbeddingCsv, ErrorMessagesCarryLineNumbers) {
  try {
    parse_embeddings_csv("id,class,domain,e0\ns1,A,d,1\ns2,A,d,x", DatasetRole::kTrain);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(EmbeddingBinary, LayoutIsExact) {
  const EmbeddingDataset ds(DatasetRole::kTrain, 2, {{"s", "A", "", {1.5f, -2.0f}}});
  const std::string bytes = format_embeddings_binary(ds);
  // magic, dim, count, 3 strings (2 + len bytes each), 2 floats
  ASSERT_EQ(bytes.size(), 4u + 4 + 4 + (2 + 1) + (2 + 1) + (2 + 0) + 8);
  EXPECT_EQ(bytes.substr(0, 4), "DDD1");
  EXPECT_EQ(bytes.substr(4, 8), std::string("\x02\x00\x00\x00\x01\x00\x00\x00", 8));
  EXPECT_EQ(bytes.substr(12, 3), std::string("\x01\x00s", 3));
  float v;
  std::memcpy(&v, bytes.data() + bytes.size() - 8, 4);
  EXPECT_EQ(v, 1.5f);
}

TEST(EmbeddingBinary, Errors) {
  const EmbeddingDataset ds(DatasetRole::kTrain, 1, {{"s", "A", "", {1.0}}});
  const std::string good = format_embeddings_binary(ds);
  EXPECT_EQ(kind_of([&] { parse_embeddings_binary(good.substr(0, good.size() - 1), DatasetRole::kTrain); }),
            ErrorKind::kParseError);
  EXPECT_EQ(kind_of([&] { parse_embeddings_binary(good + "x", DatasetRole::kTrain); }),
            ErrorKind::kParseError);
  EXPECT_EQ(kind_of([&] { parse_embeddings_binary("DDD2" + good.substr(4), DatasetRole::kTrain); }),
            ErrorKind::kParseError);
  std::string nan_payload = good;
  const float nan = std::numeric_limits<float>::quiet_NaN();
  std::memcpy(nan_payload.data() + nan_payload.size() - 4, &nan, 4);
  EXPECT_EQ(kind_of([&] { parse_embeddings_binary(nan_payload, DatasetRole::kTrain); }),
            ErrorKind::kNonFiniteValue);
}

TEST(EmbeddingRoundTrip, RandomDatasetsBothFormats) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const auto csv_ds = random_embeddings(rng, false);
    EXPECT_EQ(parse_embeddings_csv(format_embeddings_csv(csv_ds), DatasetRole::kTrain), csv_ds);
    const auto bin_ds = random_embeddings(rng, true);
    EXPECT_EQ(parse_embeddings_binary(format_embeddings_binary(bin_ds), DatasetRole::kTrain), bin_ds);
  }
}

TEST(EmbeddingFiles, ReadDetectsFormat) {
  const auto dir = testing::scratch_dir("io_detect");
  const EmbeddingDataset ds(DatasetRole::kTest, 2, {{"a", "A", "d", {0.25, 4.0}}});
  write_embeddings(ds, dir / "x.bin", EmbeddingFormat::kBinary);
  write_embeddings(ds, dir / "x.csv", EmbeddingFormat::kCsv);
  EXPECT_EQ(read_embeddings(dir / "x.bin", DatasetRole::kTest), ds);
  EXPECT_EQ(read_embeddings(dir / "x.csv", DatasetRole::kTest), ds);
  EXPECT_EQ(kind_of([&] { read_embeddings(dir / "missing.csv", DatasetRole::kTest); }),
            ErrorKind::kIoError);
}

TEST(Parsing, LocaleIndependent) {
  const char* old = std::setlocale(LC_ALL, nullptr);
  const std::string saved = old ? old : "C";
  if (!std::setlocale(LC_ALL, "de_DE.UTF-8") && !std::setlocale(LC_ALL, "fr_FR.UTF-8")) {
    GTEST_SKIP() << "no comma-decimal locale installed";
  }
  const auto ds = parse_embeddings_csv("id,class,domain,e0\ns,A,,0.5", DatasetRole::kTrain);
  const std::string text = format_double(0.5);
  std::setlocale(LC_ALL, saved.c_str());
  EXPECT_EQ(ds.records()[0].vector[0], 0.5);
  EXPECT_EQ(text, "0.5");
}

TEST(FormatDouble, SeventeenSignificantDigits) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(format_double(-2.5e-300), "-2.5e-300");
}

// --- predictions ---------------------------------------------------------------

TEST(Predictions, HardAndSoftMinimal) {
  const auto hard = parse_predictions_csv("id,true,pred\ns1,A,A");
  ASSERT_EQ(hard.size(), 1u);
  EXPECT_EQ(hard[0], (PredictionRecord{"s1", "A", std::string("A")}));

  const auto soft = parse_predictions_csv("id,true,p_A,p_B\ns1,A,0.9,0.1");
  ASSERT_EQ(soft.size(), 1u);
  EXPECT_EQ(soft[0], (PredictionRecord{"s1", "A", ProbabilityMap{{"A", 0.9}, {"B", 0.1}}}));
}

TEST(Predictions, Errors) {
  EXPECT_EQ(kind_of([] { parse_predictions_csv("id,true,p_A,p_B\ns1,A,0.7,0.1"); }),
            ErrorKind::kRowSumOutOfTolerance);
  EXPECT_EQ(kind_of([] { parse_predictions_csv("id,true,p_A,p_B\ns1,A,1.1,-0.1"); }),
            ErrorKind::kNegativeProbability);
  EXPECT_EQ(kind_of([] { parse_predictions_csv("id,true,guess\ns1,A,A"); }), ErrorKind::kParseError);
  EXPECT_EQ(kind_of([] { parse_predictions_csv("id,true,p_A,p_A\ns1,A,0.5,0.5"); }),
            ErrorKind::kParseError);
  EXPECT_EQ(kind_of([] { parse_predictions_csv("id,true,pred\ns1,A"); }), ErrorKind::kRaggedRow);
  EXPECT_EQ(kind_of([] { parse_predictions_csv("id,true,pred\ns1,A,A\ns1,A,B"); }),
            ErrorKind::kDuplicateSampleId);
  EXPECT_EQ(kind_of([] { parse_predictions_csv("id,true,pred\n"); }), ErrorKind::kEmptyInput);
}

TEST(Predictions, SumToleranceBoundary) {
  EXPECT_NO_THROW(parse_predictions_csv("id,true,p_A,p_B\ns1,A,0.5000005,0.5"));
  EXPECT_THROW(parse_predictions_csv("id,true,p_A,p_B\ns1,A,0.500002,0.5"), Error);
}

TEST(Predictions, RoundTrip) {
  const std::vector<PredictionRecord> hard = {{"1", "a,b", std::string("c")}, {"2", "c", std::string("a,b")}};
  EXPECT_EQ(parse_predictions_csv(format_predictions_csv(hard)), hard);
  const std::vector<PredictionRecord> soft = {
      {"1", "a", ProbabilityMap{{"a", 0.25}, {"b", 0.75}}},
      {"2", "b", ProbabilityMap{{"a", 0.1}, {"b", 0.9}}}};
  EXPECT_EQ(parse_predictions_csv(format_predictions_csv(soft)), soft);
}

// --- matrices ------------------------------------------------------------------

LabeledMatrix random_labeled(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> n(1, 5), kind(0, 3);
  std::uniform_real_distribution<double> value(-10.0, 10.0);
  static const char* kKinds[] = {"distance", "similarity", "confusion", "matrix"};
  LabeledMatrix m;
  m.kind = kKinds[kind(rng)];
  if (m.kind == std::string("similarity")) m.alpha = std::exp(value(rng));
  const std::size_t rows = n(rng), cols = n(rng);
  for (std::size_t r = 0; r < rows; ++r) m.row_labels.push_back(random_label(rng));
  for (std::size_t c = 0; c < cols; ++c) m.col_labels.push_back(random_label(rng));
  m.values = testing::random_matrix(rng, rows, cols, -10.0, 10.0);
  m.values(0, 0) = value(rng) * 1e-200;
  return m;
}

TEST(Matrices, CsvShapeAndHeaders) {
  SimilarityMatrix s{1.0, {"a", "b"}, {"x", "y"}, Matrix{{0.75, 0.5}, {0.25, 0.5}}};
  const std::string csv = format_matrix(to_labeled(s), TableFormat::kCsv);
  EXPECT_EQ(csv, "similarity alpha=1,x,y\na,0.75,0.5\nb,0.25,0.5\n");
}

TEST(Matrices, RoundTripBothFormats) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = random_labeled(rng);
    EXPECT_EQ(parse_matrix(format_matrix(m, TableFormat::kCsv)), m);
    EXPECT_EQ(parse_matrix(format_matrix(m, TableFormat::kJson)), m);
  }
}

TEST(Matrices, JsonFloatsUseSeventeenDigits) {
  LabeledMatrix m{"distance", std::nullopt, {"a"}, {"b"}, Matrix{{0.1}}};
  EXPECT_NE(format_matrix(m, TableFormat::kJson).find("0.10000000000000001"), std::string::npos);
}

TEST(Matrices, Errors) {
  EXPECT_EQ(kind_of([] { parse_matrix("distance,x,y\na,1\n"); }), ErrorKind::kRaggedRow);
  EXPECT_EQ(kind_of([] { parse_matrix("distance,x\na,zz\n"); }), ErrorKind::kParseError);
  EXPECT_EQ(kind_of([] { parse_matrix("{\"row_labels\": [\"a\"]}"); }), ErrorKind::kParseError);
  EXPECT_EQ(kind_of([] { parse_matrix("   "); }), ErrorKind::kParseError);
  EXPECT_EQ(kind_of([] { parse_table_format("xml"); }), ErrorKind::kUsage);
}

// --- reports -------------------------------------------------------------------

CorrelationReport random_report(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> n(0, 4);
  CorrelationReport r;
  r.aggregate_r = u(rng);
  r.alpha = std::exp(10.0 * (u(rng) - 0.5));
  r.pairing = u(rng) < 0.5 ? Pairing::kLiteral : Pairing::kTranspose;
  for (int k = n(rng); k > 0; --k) r.per_class[random_label(rng)] = u(rng);
  for (int k = n(rng); k > 0; --k) r.excluded.push_back({random_label(rng), "reason, \"quoted\""});
  for (int k = n(rng); k > 0; --k) r.warnings.push_back("warn " + random_label(rng));
  return r;
}

TEST(Reports, RoundTripBothFormatsBitExact) {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 100; ++trial) {
    const auto r = random_report(rng);
    EXPECT_EQ(parse_report(format_report(r, TableFormat::kCsv)), r);
    EXPECT_EQ(parse_report(format_report(r, TableFormat::kJson)), r);
  }
}

TEST(Reports, JsonCarriesRequiredFields) {
  CorrelationReport r;
  r.aggregate_r = 0.5;
  r.excluded.push_back({"x", "absent"});
  const std::string json = format_report(r, TableFormat::kJson);
  for (const char* key : {"\"aggregate_R\"", "\"alpha\"", "\"pairing\"", "\"per_class\"",
                          "\"excluded_classes\""}) {
    EXPECT_NE(json.find(key), std::string::npos) << key;
  }
}

TEST(Reports, FileRoundTrip) {
  const auto dir = testing::scratch_dir("io_report");
  std::mt19937_64 rng(5);
  const auto r = random_report(rng);
  write_report(r, dir / "r.json", TableFormat::kJson);
  write_report(r, dir / "r.csv", TableFormat::kCsv);
  EXPECT_EQ(read_report(dir / "r.json"), r);
  EXPECT_EQ(read_report(dir / "r.csv"), r);
}

}  // namespace
}  // namespace ddd::io
