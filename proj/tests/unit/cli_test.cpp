// Copyright 2026 The aggsig Authors
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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

struct Result {
    int code = -1;
    std::string out;
};

Result run_cli(const std::string& args) {
    fs::path out = fs::temp_directory_path() / ("aggsig_cli_" + std::to_string(::getpid()) + ".txt");
    std::string cmd = std::string(AGGSIG_CLI_PATH) + " " + args + " > " + out.string() + " 2>&1";
    int status = std::system(cmd.c_str());
    Result r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    fs::remove(out);
    return r;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

class Cli : public ::testing::Test {
  protected:
    fs::path dir;
    void SetUp() override {
        dir = fs::temp_directory_path() /
              ("aggsig_cli_test_" + std::to_string(::getpid()) + "_" +
               ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }
    fs::path write(const std::string& name, const std::string& text) {
        fs::path p = dir / name;
        std::ofstream(p) << text;
        return p;
    }
};

TEST_F(Cli, RunConverges) {
    Result r = run_cli("run --n 4 --degree 3 --byz 0.0");
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("convergence round: 1"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("max entry: 1\n"), std::string::npos) << r.out;
}

TEST_F(Cli, RunWritesJson) {
    fs::path out = dir / "run.json";
    Result r = run_cli("run --n 50 --degree 6 --byz 10% --behavior fake --seed 3 --out " + out.string());
    EXPECT_EQ(r.code, 0) << r.out;
    std::string json = read_file(out);
    EXPECT_NE(json.find("\"convergence_round\""), std::string::npos);
    EXPECT_NE(json.find("\"behavior\": \"fake\""), std::string::npos);
}

TEST_F(Cli, ExitCodes) {
    EXPECT_EQ(run_cli("run --n 2 --degree 5").code, 1);
    EXPECT_EQ(run_cli("run --n 100 --byz 0.5").code, 1);
    EXPECT_EQ(run_cli("run --n 100 --degree 10 --behavior teleport --byz 0.1").code, 1);
    EXPECT_EQ(run_cli("run --bogus").code, 1);
    EXPECT_EQ(run_cli("").code, 1);
    EXPECT_EQ(run_cli("run --n 100 --degree 10 --iterations 1").code, 2);
    EXPECT_EQ(run_cli("run --n 30 --degree 4 --byz 0.3333333333").code, 2);
    EXPECT_EQ(run_cli("--help").code, 0);
}

TEST_F(Cli, FlagsOverrideConfigFile) {
    fs::path cfg = write("run.cfg", "# pinned\nn = 60\ndegree = 5\nbyz = 20%\nbehavior = fake\nseed = 4\n");
    Result file_only = run_cli("run --config " + cfg.string());
    EXPECT_EQ(file_only.code, 0) << file_only.out;
    EXPECT_NE(file_only.out.find("n=60 degree=5"), std::string::npos) << file_only.out;
    EXPECT_NE(file_only.out.find("byz=12 fake"), std::string::npos) << file_only.out;
    Result overridden = run_cli("run --config " + cfg.string() + " --degree 7 --byz 0");
    EXPECT_NE(overridden.out.find("n=60 degree=7"), std::string::npos) << overridden.out;
    EXPECT_NE(overridden.out.find("byz=0"), std::string::npos) << overridden.out;
    EXPECT_EQ(run_cli("run --config " + (dir / "missing.cfg").string()).code, 1);
    fs::path broken = write("broken.cfg", "n 60\n");
    EXPECT_EQ(run_cli("run --config " + broken.string()).code, 1);
}

TEST_F(Cli, GridRowsAndMedian) {
    fs::path grid = write("one.grid", "cell = 100 6 0% silent 10\n");
    fs::path csv = dir / "out.csv";
    Result r = run_cli("grid --grid " + grid.string() + " --out " + csv.string());
    EXPECT_EQ(r.code, 0) << r.out;
    auto rows = lines(read_file(csv));
    ASSERT_EQ(rows.size(), 13u);  // comment, header, 10 seeds, median
    EXPECT_EQ(rows[0][0], '#');
    EXPECT_EQ(rows[1], "n,degree,byz_pct,behavior,seed,convergence_round,max_entry,msgs_per_node,bytes_per_node");
    EXPECT_EQ(rows[2].rfind("100,6,0,silent,1,", 0), 0u) << rows[2];
    EXPECT_EQ(rows[12].rfind("100,6,0,silent,median,", 0), 0u) << rows[12];

    fs::path again = dir / "again.csv";
    run_cli("grid --grid " + grid.string() + " --out " + again.string());
    EXPECT_EQ(read_file(csv), read_file(again));
}

TEST_F(Cli, EmptyGridIsHeaderOnly) {
    fs::path grid = write("empty.grid", "# nothing here\n");
    Result r = run_cli("grid --grid " + grid.string());
    EXPECT_EQ(r.code, 0);
    auto rows = lines(r.out);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0][0], '#');
    EXPECT_EQ(rows[1].rfind("n,degree,", 0), 0u);
}

TEST_F(Cli, GridErrors) {
    fs::path grid = write("g.grid", "cell = 100 6 0 silent 1\n");
    EXPECT_EQ(run_cli("grid --grid " + grid.string() + " --out " + (dir / "no/such/dir.csv").string()).code, 1);
    fs::path bad = write("bad.grid", "cell = 100 6 50% silent\n");
    EXPECT_EQ(run_cli("grid --grid " + bad.string()).code, 1);
    fs::path short_cell = write("short.grid", "cell = 100 6\n");
    EXPECT_EQ(run_cli("grid --grid " + short_cell.string()).code, 1);
    EXPECT_EQ(run_cli("grid --preset table9").code, 1);
}

TEST_F(Cli, Suites) {
    Result ok = run_cli("suites oracle");
    EXPECT_EQ(ok.code, 0) << ok.out;
    EXPECT_NE(ok.out.find("PASS oracle"), std::string::npos);
    EXPECT_EQ(run_cli("suites nonsense").code, 1);
}

TEST_F(Cli, TopologyExport) {
    Result r = run_cli("topology --n 4 --degree 3 --seed 2");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "# n=4 edges=6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    fs::path out = dir / "edges.txt";
    EXPECT_EQ(run_cli("topology --n 50 --degree 4 --out " + out.string()).code, 0);
    EXPECT_EQ(lines(read_file(out)).size(), 101u);
    EXPECT_EQ(run_cli("topology --n 5 --degree 9").code, 1);
}

}  // namespace
