#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "aiblock/io.hpp"
#include "cli.hpp"

using namespace aiblock;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int status;
    std::string out, err;
};

CliResult invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "aiblock");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int status = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {status, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("aiblock_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

    fs::path dir_;
};

}  // namespace

TEST(Io, FormatDoubleRoundTrips) {
    EXPECT_EQ(io::format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(io::format_double(1.0), "1");
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> unif(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double x = unif(gen);
        EXPECT_EQ(std::stod(io::format_double(x)), x);
    }
}

TEST(Io, ReadSeriesCsv) {
    std::istringstream in("a, b\r\n1,2\n3.5,-4e-1\n\n");
    const SeriesMatrix s = io::read_series_csv(in);
    EXPECT_EQ(s.names(), (std::vector<std::string>{"a", "b"}));
    EXPECT_EQ(s.values()(1, 1), -0.4);
    std::istringstream bad("a,b\n1,x\n");
    EXPECT_THROW(io::read_series_csv(bad), InputError);
    std::istringstream ragged("a,b\n1\n");
    EXPECT_THROW(io::read_series_csv(ragged), InputError);
    std::istringstream empty("a,b\n");
    EXPECT_THROW(io::read_series_csv(empty), InputError);
}

TEST(Io, PartitionJsonRoundTrip) {
    const std::vector<std::string> names = {"x", "y", "z"};
    const Partition p = canonicalize({{2, 0}, {1}}, 3);
    const auto doc = io::partition_to_json(p, names);
    EXPECT_EQ(doc.dump(), R"({"clusters":[["x","z"],["y"]]})");
    EXPECT_EQ(io::partition_from_json(doc, names), p);
    EXPECT_THROW(io::partition_from_json(nlohmann::json::parse(R"({"clusters":[["x","q"]]})"), names),
                 InputError);
    EXPECT_THROW(io::partition_from_json(nlohmann::json::parse(R"({"clusters":[["x","y"]]})"), names),
                 CoverageError);
}

TEST(Io, ChiAndScanCsv) {
    Matrix m = Matrix::Identity(2, 2);
    m(0, 1) = m(1, 0) = -0.25;
    std::ostringstream raw, clipped;
    io::write_chi_csv(raw, ChiMatrix(m), {"a", "b"});
    io::write_chi_csv(clipped, ChiMatrix(m), {"a", "b"}, true);
    EXPECT_EQ(raw.str(), "a,b\n1,-0.25\n-0.25,1\n");
    EXPECT_EQ(clipped.str(), "a,b\n1,0\n0,1\n");
}

TEST_F(CliTest, ClusterComonotone) {
    std::string csv = "v0,v1\n";
    for (int i = 0; i < 50; ++i) csv += std::to_string((i * 37) % 50) + "," + std::to_string((i * 37) % 50 * 2) + "\n";
    write("como.csv", csv);
    const auto r = invoke({"cluster", path("como.csv"), "--block-size", "5", "--tau", "0.5"});
    EXPECT_EQ(r.status, 0) << r.err;
    EXPECT_EQ(r.out, "{\"clusters\":[[\"v0\",\"v1\"]]}\n");
}

TEST_F(CliTest, ClusterIndependentNoise) {
    Rng a(1), b(2);
    std::string csv = "v0,v1\n";
    for (int i = 0; i < 4000; ++i) csv += io::format_double(uniform_open(a)) + "," + io::format_double(uniform_open(b)) + "\n";
    write("noise.csv", csv);
    const auto r = invoke({"cluster", path("noise.csv"), "-m", "20", "--tau", "0.5",
                           "--out-partition", path("p.json"), "--out-chi", path("chi.csv")});
    EXPECT_EQ(r.status, 0) << r.err;
    EXPECT_EQ(slurp(path("p.json")), "{\"clusters\":[[\"v0\"],[\"v1\"]]}\n");
    std::ifstream chi(path("chi.csv"));
    std::string header;
    std::getline(chi, header);
    EXPECT_EQ(header, "v0,v1");
}

TEST_F(CliTest, FlagErrorsExitTwo) {
    write("x.csv", "a,b\n1,2\n3,4\n");
    auto r = invoke({"cluster", path("x.csv"), "--tau", "0.5"});
    EXPECT_EQ(r.status, 2);
    EXPECT_FALSE(r.err.empty());
    EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
    r = invoke({"cluster", path("x.csv"), "-m", "1", "--tau", "0.5", "--auto-tau"});
    EXPECT_EQ(r.status, 2);
    write("bad.csv", "a,b\n1,oops\n");
    r = invoke({"cluster", path("bad.csv"), "-m", "1", "--tau", "0.5"});
    EXPECT_EQ(r.status, 2);
    r = invoke({"cluster", path("missing.csv"), "-m", "1"});
    EXPECT_EQ(r.status, 2);
    r = invoke({"cluster", path("x.csv"), "-m", "5"});
    EXPECT_EQ(r.status, 2);  // block longer than the series
    r = invoke({"simulate", "--experiment", "E9", "--d", "8", "--out", path("s.csv")});
    EXPECT_EQ(r.status, 2);
    r = invoke({"simulate", "--experiment", "E1", "--d", "7", "--out", path("s.csv")});
    EXPECT_EQ(r.status, 2);
    r = invoke({"experiment", "--experiment", "E1", "--framework", "F1", "--reps", "0"});
    EXPECT_EQ(r.status, 2);
    r = invoke({});
    EXPECT_EQ(r.status, 2);
}

TEST_F(CliTest, SimulateIsDeterministicAndWritesSidecar) {
    const std::vector<std::string> base = {"simulate", "--experiment", "E1", "--d", "8", "--n", "1000",
                                           "--p", "1.0", "--seed", "7"};
    auto first = base, second = base;
    first.insert(first.end(), {"--out", path("a.csv")});
    second.insert(second.end(), {"--out", path("b.csv")});
    ASSERT_EQ(invoke(first).status, 0);
    ASSERT_EQ(invoke(second).status, 0);
    EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
    const auto sidecar = nlohmann::json::parse(slurp(path("a.json")));
    EXPECT_EQ(sidecar["clusters"].size(), 2u);
    EXPECT_EQ(sidecar["clusters"][0][0], "v0");
    EXPECT_EQ(sidecar["seed"], 7);
    EXPECT_EQ(sidecar["group_sizes"], nlohmann::json::parse("[4,4]"));
}

TEST_F(CliTest, SecoOfWholePartitionIsZero) {
    ASSERT_EQ(invoke({"simulate", "--experiment", "E1", "--d", "4", "--n", "400", "--seed", "1",
                      "--out", path("s.csv")}).status, 0);
    write("whole.json", R"({"clusters":[["v0","v1","v2","v3"]]})");
    const auto r = invoke({"seco", path("s.csv"), "-m", "4", "--partition", path("whole.json")});
    EXPECT_EQ(r.status, 0) << r.err;
    EXPECT_EQ(r.out, "0\n");
    const auto truth = invoke({"seco", path("s.csv"), "-m", "4", "--partition", path("s.json")});
    EXPECT_EQ(truth.status, 0);
    EXPECT_NE(truth.out, "0\n");
}

TEST_F(CliTest, SimulateThenClusterRecoversTruth) {
    ASSERT_EQ(invoke({"simulate", "--experiment", "E1", "--d", "8", "--n", "10000", "--p", "1",
                      "--seed", "11", "--out", path("e1.csv")}).status, 0);
    const auto r = invoke({"cluster", path("e1.csv"), "-m", "20", "--tau",
                           io::format_double(tau_theory(20, 8, 500))});
    ASSERT_EQ(r.status, 0) << r.err;
    const auto truth = nlohmann::json::parse(slurp(path("e1.json")));
    EXPECT_EQ(nlohmann::json::parse(r.out)["clusters"], truth["clusters"]);

    const auto scan = invoke({"cluster", path("e1.csv"), "-m", "20", "--auto-tau", "--out-scan", path("scan.csv")});
    ASSERT_EQ(scan.status, 0) << scan.err;
    EXPECT_EQ(nlohmann::json::parse(scan.out)["clusters"], truth["clusters"]);
    std::ifstream in(path("scan.csv"));
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "tau,seco,n_clusters,selected");
    int rows = 0, selected = 0;
    while (std::getline(in, line)) {
        ++rows;
        selected += line.back() == '1' ? 1 : 0;
    }
    EXPECT_EQ(rows, 41);
    EXPECT_EQ(selected, 1);
}

TEST_F(CliTest, ExperimentF3Csv) {
    const auto r = invoke({"experiment", "--experiment", "E1", "--framework", "F3", "--d", "8", "--m", "10",
                           "--k", "100", "--reps", "3", "--tau-grid", "0.1,0.2,0.3", "--seed", "2"});
    ASSERT_EQ(r.status, 0) << r.err;
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "experiment,framework,grid_param,grid_value,algorithm,recovery_rate,mean_seco");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        EXPECT_EQ(line.rfind("E1,F3,tau,", 0), 0u);
    }
    EXPECT_EQ(rows, 3);
}
