#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "permuframe/ranked.hpp"

using permuframe::EigenspaceFramePolicy;
using permuframe::GroupOrdering;
using permuframe::Partition;
using permuframe::Permutation;

namespace {

permuframe::RankingParse parse(const std::string& text, int n) {
  std::istringstream in(text);
  return permuframe::parse_rankings(in, n);
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("permuframe_ranked_" + name);
  std::ofstream(path) << content;
  return path;
}

permuframe::Frame onb_frame(int n) {
  return permuframe::build_compatible_frame(n, permuframe::parse_genset(n, "adjacent"),
                                            EigenspaceFramePolicy::onb());
}

}  // namespace

TEST(Ingest, SingleRow) {
  const auto ord = GroupOrdering::paper_s3();
  const auto path = temp_file("single.csv", "ranking,count\n\"2,1,3\",5\n");
  const auto got = permuframe::ingest_rankings(path.string(), 3, ord);
  Eigen::VectorXd expected = Eigen::VectorXd::Zero(6);
  expected(1) = 5.0;  // (12) is second in this ordering
  EXPECT_EQ(got.signal, expected);
  EXPECT_TRUE(got.warnings.empty());
  std::filesystem::remove(path);
}

TEST(Ingest, EmptyFileIsZeroSignal) {
  const auto path = temp_file("empty.csv", "");
  const auto got = permuframe::ingest_rankings(path.string(), 3, GroupOrdering::lex(3));
  EXPECT_EQ(got.signal, Eigen::VectorXd::Zero(6));
  std::filesystem::remove(path);
  EXPECT_THROW(permuframe::ingest_rankings("/nonexistent/ballots.csv", 3, GroupOrdering::lex(3)),
               permuframe::ValidationError);
}

TEST(Ingest, UniformBallotsHitOnlyTrivialAtom) {
  std::string text = "ranking,count\n";
  for (const auto& p : GroupOrdering::lex(3)) text += "\"" + p.to_string() + "\",1\n";
  const auto data = parse(text, 3).dataset;
  const auto frame = onb_frame(3);
  const auto f = permuframe::to_signal(data, *frame.ordering);
  EXPECT_EQ(f, Eigen::VectorXd::Ones(6));
  for (const auto& c : permuframe::analysis(frame, f)) {
    if (c.shape == Partition({3})) {
      EXPECT_NEAR(c.value, std::sqrt(6.0), 1e-12);
      EXPECT_EQ(c.eigenvalue, 2.0);
    } else {
      EXPECT_NEAR(c.value, 0.0, 1e-12);
    }
  }
}

TEST(Ingest, UnquotedRowsLabelsAndWeights) {
  const auto got = parse("# candidates: Ada, Bo, Cy\nranking,count\n3,1,2,0.25\n\n1,2,3,2\n", 3);
  EXPECT_EQ(got.dataset.labels, (std::vector<std::string>{"Ada", "Bo", "Cy"}));
  EXPECT_EQ(got.dataset.counts.at(Permutation({3, 1, 2})), 0.25);
  EXPECT_EQ(got.dataset.counts.at(Permutation({1, 2, 3})), 2.0);
  EXPECT_EQ(got.dataset.counts.size(), 2u);
}

TEST(Ingest, DuplicatesAreSummedWithWarning) {
  const auto got = parse("ranking,count\n\"1,3,2\",2\n\"1,3,2\",3\n", 3);
  EXPECT_EQ(got.dataset.counts.at(Permutation({1, 3, 2})), 5.0);
  ASSERT_EQ(got.warnings.size(), 1u);
  EXPECT_NE(got.warnings[0].find("duplicate"), std::string::npos);
}

TEST(Ingest, Rejections) {
  using permuframe::ValidationError;
  EXPECT_THROW(parse("\"1,1,2\",1\n", 3), ValidationError);    // not a permutation
  EXPECT_THROW(parse("\"1,2\",1\n", 3), ValidationError);      // wrong n
  EXPECT_THROW(parse("\"1,2,3\"\n", 3), ValidationError);      // no count
  EXPECT_THROW(parse("\"1,2,3\",-1\n", 3), ValidationError);   // negative
  EXPECT_THROW(parse("\"1,2,3\",abc\n", 3), ValidationError);
  EXPECT_THROW(parse("\"1,2,3,1\n", 3), ValidationError);      // unterminated quote
  EXPECT_THROW(parse("# candidates: A,B\n", 3), ValidationError);
}

TEST(Ingest, ExportRoundTrip) {
  std::mt19937 rng(2);
  std::uniform_int_distribution<int> count(0, 4);
  const auto ord = GroupOrdering::lex(4);
  for (int t = 0; t < 20; ++t) {
    Eigen::VectorXd f(24);
    for (auto& v : f) v = count(rng);
    const auto text = permuframe::export_rankings(f, ord);
    const auto back = permuframe::to_signal(parse(text, 4).dataset, ord);
    EXPECT_EQ(back, f);
    EXPECT_EQ(permuframe::export_rankings(back, ord), text);
  }
  Eigen::VectorXd half = Eigen::VectorXd::Zero(6);
  half(4) = 0.1;
  const auto s3 = GroupOrdering::lex(3);
  EXPECT_EQ(permuframe::to_signal(parse(permuframe::export_rankings(half, s3), 3).dataset, s3), half);
}

TEST(Report, EnergyBookkeepingOnS4) {
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> count(0, 50);
  const auto frame = onb_frame(4);
  for (int t = 0; t < 50; ++t) {
    Eigen::VectorXd f(24);
    for (auto& v : f) v = count(rng);
    const auto report = permuframe::coefficient_report(frame, f);
    EXPECT_TRUE(report.parseval);
    EXPECT_LT(std::abs(report.total_energy - f.squaredNorm()), 1e-8);
    EXPECT_EQ(report.signal_energy, f.squaredNorm());
    std::size_t atoms = 0;
    for (const auto& g : report.groups) atoms += g.atoms.size();
    EXPECT_EQ(atoms, frame.atoms.size());
  }
}

TEST(Report, ZeroAndSingleGroupSignals) {
  const auto frame = onb_frame(3);
  const auto zero = permuframe::coefficient_report(frame, Eigen::VectorXd::Zero(6));
  for (const auto& g : zero.groups) EXPECT_EQ(g.energy, 0.0);
  EXPECT_EQ(zero.total_energy, 0.0);

  const auto& atom = frame.atoms[2];
  const auto report = permuframe::coefficient_report(frame, 3.0 * atom.signal);
  int nonzero = 0;
  for (const auto& g : report.groups)
    if (g.energy > 1e-20) {
      ++nonzero;
      EXPECT_EQ(g.shape, atom.shape);
      EXPECT_NEAR(g.eigenvalue, atom.eigenvalue, 1e-12);
      EXPECT_NEAR(g.energy, 9.0, 1e-12);
    }
  EXPECT_EQ(nonzero, 1);
  EXPECT_THROW(permuframe::coefficient_report(frame, Eigen::VectorXd::Zero(5)),
               permuframe::ValidationError);
}

TEST(Report, GroupsMergeRowsIndexI) {
  const auto frame = onb_frame(3);
  const auto report = permuframe::coefficient_report(frame, Eigen::VectorXd::Ones(6));
  // (3) at 2, (2,1) at -1 and 1, (1,1,1) at -2
  ASSERT_EQ(report.groups.size(), 4u);
  EXPECT_EQ(report.groups[1].atoms.size(), 2u);
  EXPECT_LT(report.groups[1].eigenvalue, report.groups[2].eigenvalue);
}

TEST(Report, CsvLayout) {
  const auto frame = onb_frame(3);
  Eigen::VectorXd f = Eigen::VectorXd::Zero(6);
  f(0) = 1.0;
  std::ostringstream out;
  permuframe::write_report_csv(out, permuframe::coefficient_report(frame, f));
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "partition,lambda,i,atom,coefficient");
  int rows = 0;
  while (std::getline(in, line) && !line.empty()) {
    EXPECT_EQ(permuframe::csv::split_line(line).size(), 5u) << line;
    ++rows;
  }
  EXPECT_EQ(rows, 6);
  std::getline(in, line);
  EXPECT_EQ(line, "partition,lambda,energy");
  std::string last, total;
  while (std::getline(in, line)) {
    total = last;
    last = line;
  }
  EXPECT_TRUE(total.starts_with("total,,"));
  EXPECT_NEAR(std::stod(total.substr(7)), 1.0, 1e-12);
  EXPECT_EQ(last, "signal_norm_squared,,1");
}
