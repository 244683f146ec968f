#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "forge_commands.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run forge_run(std::vector<std::string> args) {
    args.insert(args.begin(), "lrc_forge");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = forge::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("lrc_forge_test_" + std::to_string(::getpid()) + "_" +
                                            ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

}  // namespace

TEST_F(Cli, ConstructThenVerify) {
    const auto c = forge_run({"construct", "concat(spc(4,gf(2)),ext_rs(gf(8),9,7))", "-o", path("t6")});
    ASSERT_EQ(c.code, 0) << c.err;
    EXPECT_NE(c.out.find("[36,21,6;3]_2"), std::string::npos) << c.out;
    EXPECT_NE(c.out.find("dimension-optimal: yes"), std::string::npos);
    ASSERT_TRUE(fs::exists(path("t6.code.json")));
    ASSERT_TRUE(fs::exists(path("t6.cert.json")));
    const auto v = forge_run({"verify", "--code", path("t6.code.json"), "--cert", path("t6.cert.json"), "--distance-exact",
                              "--locality", "--optimal"});
    EXPECT_EQ(v.code, 0) << v.out << v.err;
    const auto j = lrc::parse_json(v.out);
    EXPECT_EQ(j["result"], "pass");
    EXPECT_EQ(j["distance"]["lower"], 6);
    EXPECT_EQ(j["distance"]["upper"], 6);
    EXPECT_EQ(j["optimal"]["azd_bound"], 21);
}

TEST_F(Cli, TamperedCertificateIsRejected) {
    ASSERT_EQ(forge_run({"construct", "spc(5,gf(2))", "-o", path("s")}).code, 0);
    auto cert = lrc::parse_json(lrc::read_file(path("s.cert.json")));
    cert["words"][0][0] = 0;
    lrc::write_file(path("bad.cert.json"), cert.dump());
    const auto v = forge_run({"verify", "--code", path("s.code.json"), "--cert", path("bad.cert.json"), "--locality"});
    EXPECT_EQ(v.code, 5);
    EXPECT_EQ(lrc::parse_json(v.out)["result"], "invalid-certificate");
    const auto r = forge_run({"repair", "--code", path("s.code.json"), "--cert", path("bad.cert.json"), "--word", "1 1 0 ? 0"});
    EXPECT_EQ(r.code, 5);
}

TEST_F(Cli, StoredDistanceIsNotTrusted) {
    ASSERT_EQ(forge_run({"construct", "spc(5,gf(2))", "-o", path("s")}).code, 0);
    auto code = lrc::parse_json(lrc::read_file(path("s.code.json")));
    code["distance"]["lower"] = 4;
    code["distance"]["upper"] = 4;
    lrc::write_file(path("s.code.json"), code.dump());
    const auto v = forge_run({"verify", "--code", path("s.code.json"), "--distance-exact"});
    EXPECT_EQ(v.code, 0);
    EXPECT_EQ(lrc::parse_json(v.out)["distance"]["lower"], 2);
}

TEST_F(Cli, DistanceInconclusiveUnderBudget) {
    const auto c = forge_run({"--budget-subsets", "100000", "--budget-hunt", "1000", "construct",
                              "puncture(lengthen_hamming(9,2))", "-o", path("h")});
    ASSERT_EQ(c.code, 0) << c.err;
    EXPECT_NE(c.out.find("n = 767, k = 501"), std::string::npos) << c.out;
    const auto v = forge_run({"--budget-subsets", "100000", "--budget-hunt", "1000", "verify", "--code", path("h.code.json"),
                              "--cert", path("h.cert.json"), "--distance-exact", "--locality"});
    EXPECT_EQ(v.code, 4) << v.out << v.err;
    const auto j = lrc::parse_json(v.out);
    EXPECT_EQ(j["distance"]["status"], "inconclusive");
    EXPECT_EQ(j["locality"]["status"], "pass");
}

TEST_F(Cli, Repair) {
    ASSERT_EQ(forge_run({"construct", "spc(5,gf(2))", "-o", path("s")}).code, 0);
    const auto a = forge_run({"repair", "--code", path("s.code.json"), "--cert", path("s.cert.json"), "--word", "1 1 0 ? 0"});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_NE(a.out.find("recovered symbol: 0"), std::string::npos);
    EXPECT_NE(a.out.find("recovery set: 0 1 2 3 4"), std::string::npos) << a.out;
    lrc::write_file(path("w.txt"), "1 0 0 ? 0\n");
    const auto b = forge_run({"repair", "--code", path("s.code.json"), "--cert", path("s.cert.json"), "--word-file", path("w.txt")});
    EXPECT_NE(b.out.find("recovered symbol: 1"), std::string::npos);
    ASSERT_EQ(forge_run({"construct", "repetition(3,gf(7))", "-o", path("rep")}).code, 0);
    const auto c = forge_run({"repair", "--code", path("rep.code.json"), "--cert", path("rep.cert.json"), "--word", "? 4 3"});
    EXPECT_EQ(c.code, 6);
    const auto d = forge_run({"repair", "--code", path("rep.code.json"), "--cert", path("rep.cert.json"), "--word", "? 4"});
    EXPECT_EQ(d.code, 2);
    const auto e = forge_run({"repair", "--code", path("rep.code.json"), "--cert", path("rep.cert.json"), "--word", "? 4 ?"});
    EXPECT_EQ(e.code, 2);
}

TEST_F(Cli, ExitCodes) {
    EXPECT_EQ(forge_run({}).code, 2);
    EXPECT_EQ(forge_run({"frobnicate"}).code, 2);
    EXPECT_EQ(forge_run({"--help"}).code, 0);
    EXPECT_EQ(forge_run({"construct", "spc(5,gf(2)", "-o", path("x")}).code, 2);
    EXPECT_EQ(forge_run({"construct", "lengthen_rs(gf(7),6,2,3)", "-o", path("x")}).code, 3);
    EXPECT_EQ(forge_run({"construct", "spc(5,gf(6))", "-o", path("x")}).code, 3);
    EXPECT_EQ(forge_run({"verify", "--code", path("missing.json")}).code, 2);
    EXPECT_EQ(forge_run({"bounds", "nonsense"}).code, 2);
    EXPECT_EQ(forge_run({"bounds", "azd", "--n", "10", "--r", "4"}).code, 3);
    EXPECT_EQ(forge_run({"tables", "IV"}).code, 2);
    EXPECT_EQ(forge_run({"--workers", "0", "tables", "I"}).code, 2);
    EXPECT_EQ(forge_run({"curve", "--kind", "tvz", "--q", "8"}).code, 3);
}

TEST_F(Cli, Bounds) {
    EXPECT_EQ(forge_run({"bounds", "azd", "--n", "85", "--r", "4"}).out, "60\n");
    EXPECT_EQ(forge_run({"bounds", "azd", "--n", "84", "--r", "4"}).out, "59\n");
    EXPECT_EQ(forge_run({"bounds", "singleton", "--n", "69", "--k", "56", "--r", "11"}).out, "9\n");
    EXPECT_EQ(forge_run({"bounds", "cm", "--n", "85", "--d", "6", "--r", "4"}).out, "65\n");
    EXPECT_EQ(forge_run({"bounds", "entropy", "--x", "0.5"}).out, "1\n");
    EXPECT_EQ(forge_run({"bounds", "rate", "--kind", "prop38", "--r", "3", "--delta", "0"}).out,
              "0.333333333333 (raw 0.333333333333)\n");
    EXPECT_EQ(forge_run({"bounds", "gv", "--r", "3", "--delta", "0"}).out, "0.75\n");
}

TEST_F(Cli, CurveOutputIsDeterministic) {
    const std::vector<std::string> base = {"curve", "--kind", "gv_lrc", "--r", "3", "--q", "4", "--to", "0.5", "--step", "0.01"};
    auto a = forge_run(base);
    auto w = base;
    w.insert(w.begin(), {"--workers", "4"});
    auto b = forge_run(w);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out.substr(0, a.out.find('\n')), "delta,rate_raw,rate,kind,params");
    EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 52);
    auto f = base;
    f.insert(f.end(), {"-o", path("c.csv")});
    ASSERT_EQ(forge_run(f).code, 0);
    EXPECT_EQ(lrc::read_file(path("c.csv")), a.out);
}

TEST_F(Cli, TablesRerunIsByteIdentical) {
    const auto a = forge_run({"tables", "I"});
    const auto b = forge_run({"--workers", "3", "tables", "I"});
    EXPECT_EQ(a.code, 0) << a.out;
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out.find("6/6 rows pass"), std::string::npos);
    const auto r = forge_run({"tables", "remark"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("azd_bound(84,4) = 59"), std::string::npos);
}

TEST_F(Cli, ExportFormats) {
    const auto g = forge_run({"export", "spc(3,gf(2))", "--format", "G"});
    ASSERT_EQ(g.code, 0) << g.err;
    const auto G = lrc::parse_matrix_text(g.out);
    EXPECT_EQ(G.rows(), 2u);
    EXPECT_EQ(G.cols(), 3u);
    const auto h = forge_run({"export", "spc(3,gf(2))", "--format", "H", "-o", path("h.txt")});
    ASSERT_EQ(h.code, 0);
    EXPECT_EQ(lrc::parse_matrix_text(lrc::read_file(path("h.txt"))).rows(), 1u);
    ASSERT_EQ(forge_run({"export", "rs_locality(gf(8),7,3)", "--format", "code", "-o", path("c.json")}).code, 0);
    EXPECT_EQ(forge_run({"export", path("c.json"), "--format", "H"}).code, 0);
    EXPECT_EQ(forge_run({"export", path("c.json"), "--format", "cert"}).code, 3);
    EXPECT_EQ(forge_run({"export", "spc(3,gf(2))", "--format", "png"}).code, 2);
    const auto c = forge_run({"export", "spc(3,gf(2))", "--format", "cert"});
    EXPECT_EQ(lrc::certificate_from_json(lrc::parse_json(c.out)).r, 2u);
}

TEST_F(Cli, RecipeFileInput) {
    lrc::write_file(path("r.json"), R"j({"op":"rs_locality","field":"gf(8)","m":7,"t":3})j");
    const auto c = forge_run({"construct", "-f", path("r.json"), "-o", path("r")});
    ASSERT_EQ(c.code, 0) << c.err;
    EXPECT_NE(c.out.find("[7,4,4;4]_8"), std::string::npos) << c.out;
    EXPECT_EQ(forge_run({"construct", "-o", path("r")}).code, 2);
}

TEST(CliEnv, WorkersFromEnvironment) {
    ::setenv("LRC_FORGE_WORKERS", "6", 1);
    EXPECT_EQ(forge::default_workers(), 6u);
    ::setenv("LRC_FORGE_WORKERS", "zero", 1);
    EXPECT_EQ(forge::default_workers(), 1u);
    ::setenv("LRC_FORGE_WORKERS", "0", 1);
    EXPECT_EQ(forge::default_workers(), 1u);
    ::unsetenv("LRC_FORGE_WORKERS");
    EXPECT_EQ(forge::default_workers(), 1u);
}
