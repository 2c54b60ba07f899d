#include <gtest/gtest.h>

#include <json.hpp>

#include <filesystem>
#include <sstream>

#include "cli.hpp"

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = genprob::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> v;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) v.push_back(line);
    return v;
}

}  // namespace

TEST(Cli, EstimateCsvColumns) {
    const auto r = run({"estimate", "--n", "100", "--x", "1", "--xp", "1", "--samples", "200", "--seed", "9"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto v = lines(r.out);
    ASSERT_EQ(v.size(), 2u);
    EXPECT_EQ(v[0], "event,n,samples,estimate,ci_low,ci_high,limit,seed");
    EXPECT_EQ(v[1].rfind("transitive,100,200,", 0), 0u);
    EXPECT_NE(v[1].find(",0.367879441171,9"), std::string::npos) << v[1];
}

TEST(Cli, EstimateJsonMirrorsCsv) {
    const std::vector<std::string> base{"estimate", "--n", "60", "--y", "0.5", "--yp", "0.5", "--samples", "300",
                                        "--seed", "4"};
    auto json_args = base;
    json_args.insert(json_args.end(), {"--format", "json"});
    const auto csv = run(base);
    const auto js = run(json_args);
    ASSERT_EQ(js.code, 0) << js.err;
    const auto j = nlohmann::json::parse(js.out);
    for (const char* key : {"event", "n", "samples", "estimate", "ci_low", "ci_high", "limit", "seed"})
        EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_EQ(j["samples"], 300);
    EXPECT_LE(j["ci_low"].get<double>(), j["estimate"].get<double>());
    EXPECT_LE(j["estimate"].get<double>(), j["ci_high"].get<double>());
    const auto row = lines(csv.out).at(1);
    std::ostringstream est;
    est << "," << j["estimate"].get<double>();
    EXPECT_NE(row.find(est.str()), std::string::npos) << row;
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({"estimate", "--n", "10", "--x", "10", "--samples", "5"}).code, 2);
    EXPECT_EQ(run({"limit", "--x", "0", "--y", "0.3", "--xp", "inf", "--yp", "0.5"}).code, 2);
    EXPECT_EQ(run({"estimate", "--n", "10", "--type", "1^9", "--samples", "5"}).code, 2);
    EXPECT_EQ(run({"exact", "--n", "40", "--type", "1^10 3^10", "--type2", "1^10 3^10", "--kmax", "20"}).code, 3);
    EXPECT_EQ(run({"exact", "--n", "40", "--type", "2^20", "--type2", "2^20", "--kmax", "20"}).code, 0);
    EXPECT_NE(run({"nonsense"}).code, 0);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, LimitAcceptsInfinity) {
    const auto r = run({"limit", "--x", "inf", "--xp", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(lines(r.out).at(1), "inf,0,1,0,inf,0");
    const auto e = run({"limit", "--x", "1", "--xp", "1", "--format", "json"});
    EXPECT_NEAR(nlohmann::json::parse(e.out)["limit"].get<double>(), 0.36787944117, 1e-10);
}

TEST(Cli, ConstantsToSixDecimals) {
    const auto r = run({"constants"});
    ASSERT_EQ(r.code, 0);
    const auto v = lines(r.out);
    EXPECT_EQ(v.at(1), "transitive_random_class,0.688904");
    EXPECT_EQ(v.at(2), "alternating,0.172226");
    EXPECT_EQ(v.at(3), "symmetric,0.516678");
    EXPECT_EQ(v.at(4), "a,0.144338");
}

TEST(Cli, ExactReportRows) {
    const auto r = run({"exact", "--n", "4", "--type", "2^2", "--type2", "2^2", "--kmax", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto v = lines(r.out);
    EXPECT_EQ(v.at(2).rfind("2,2/3,", 0), 0u);
    EXPECT_EQ(v.at(3).rfind("total,2/3,", 0), 0u);
    EXPECT_EQ(v.at(4).rfind("prediction,,0.513417119", 0), 0u);
    EXPECT_EQ(v.at(5).rfind("exact_transitive,2/3,", 0), 0u);
}

TEST(Cli, ExactWritesPTable) {
    const auto path = std::filesystem::temp_directory_path() / "genprob_cli_ptable.txt";
    std::filesystem::remove(path);
    const auto r = run({"exact", "--n", "6", "--type", "2^3", "--type2", "3^2", "--kmax", "3", "--ptable",
                        path.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(std::filesystem::exists(path));
    EXPECT_EQ(run({"exact", "--n", "6", "--type", "2^3", "--type2", "3^2", "--kmax", "3", "--ptable",
                   path.string()})
                  .out,
              r.out);
    std::filesystem::remove(path);
}

TEST(Cli, PartitionModes) {
    EXPECT_EQ(run({"partition", "--n", "100", "--count"}).out, "190569292\n");
    const auto s = run({"partition", "--n", "12", "--sample", "5", "--seed", "2"});
    EXPECT_EQ(lines(s.out).size(), 5u);
    const auto t = run({"partition", "--n", "400", "--tail", "1", "0", "--samples", "100"});
    ASSERT_EQ(t.code, 0) << t.err;
    EXPECT_EQ(lines(t.out).at(1).rfind("tail,400,100,", 0), 0u);
    EXPECT_EQ(run({"partition", "--n", "5"}).code, 2);
}

TEST(Cli, RandomClassRows) {
    const auto r = run({"random-class", "--n", "20", "--samples", "100", "--seed", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto v = lines(r.out);
    ASSERT_EQ(v.size(), 5u);
    EXPECT_EQ(v[4].rfind("symmetric,20,100,", 0), 0u);
    const auto t = run({"random-class", "--n", "20", "--samples", "100", "--event", "transitive"});
    EXPECT_EQ(lines(t.out).size(), 2u);
}

TEST(Cli, CompareEmitsBothEvents) {
    const auto r = run({"estimate", "--n", "50", "--x", "1", "--xp", "1", "--samples", "100", "--compare"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto v = lines(r.out);
    ASSERT_EQ(v.size(), 3u);
    EXPECT_EQ(v[1].rfind("transitive,", 0), 0u);
    EXPECT_EQ(v[2].rfind("alternating,", 0), 0u);
}
