#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fsq/bytes.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kBinary = FSQ_CLI_PATH;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("fsq-cli-test-" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args) {
    int status = std::system((kBinary + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Report text with the wall-clock field blanked, for byte comparisons.
std::string strip_wall_clock(std::string text) {
    auto pos = text.find("\"wall_clock_ms\"");
    if (pos == std::string::npos) return text;
    auto end = text.find('\n', pos);
    text.erase(pos, end - pos);
    return text;
}

}  // namespace

TEST_CASE("keygen/sign/verify exit-code contract") {
    TempDir dir;
    std::string key = dir.file("key.json");
    std::string sig = dir.file("sig.bin");
    CHECK(run("keygen --scheme schnorr-seq --reps 2 --seed 7 --out " + key) == 0);
    CHECK(run("sign --key " + key + " --message hello --seed 3 --out " + sig) == 0);
    CHECK(run("verify --key " + key + " --message hello --signature " + sig) == 0);
    CHECK(run("verify --key " + key + " --message other --signature " + sig) == 1);
    CHECK(run("verify --key " + key + " --message hello --signature " + dir.file("nope.bin")) == 2);
    CHECK(run("sign --key " + dir.file("nokey.json") + " --message x --seed 1 --out " + sig) == 2);
    CHECK(run("bogus-subcommand") != 0);

    // flipped signature byte: exit 1
    auto bytes = fsq::to_bytes(slurp(sig));
    bytes[bytes.size() - 3] ^= 1;
    std::ofstream(dir.file("bad.bin"), std::ios::binary)
        .write(reinterpret_cast<const char*>(bytes.data()), static_cast<long>(bytes.size()));
    CHECK(run("verify --key " + key + " --message hello --signature " + dir.file("bad.bin")) == 1);
}

TEST_CASE("fs-prove/fs-verify and or-prove/or-verify round trips") {
    TempDir dir;
    std::string key = dir.file("key.json");
    CHECK(run("keygen --scheme mq --seed 2 --out " + key) == 0);
    CHECK(run("fs-prove --key " + key + " --seed 5 --out " + dir.file("proof.bin")) == 0);
    CHECK(run("fs-verify --key " + key + " --proof " + dir.file("proof.bin")) == 0);

    std::string k0 = dir.file("k0.json"), k1 = dir.file("k1.json");
    CHECK(run("keygen --scheme schnorr --seed 8 --out " + k0) == 0);
    CHECK(run("keygen --scheme schnorr --seed 9 --out " + k1) == 0);
    std::string orproof = dir.file("or.bin");
    CHECK(run("or-prove --key0 " + k0 + " --key1 " + k1 + " --branch 1 --seed 2 --out " + orproof) == 0);
    CHECK(run("or-verify --key0 " + k0 + " --key1 " + k1 + " --proof " + orproof) == 0);

    // truncated file: exit 2
    std::string text = slurp(orproof);
    std::ofstream(dir.file("trunc.bin"), std::ios::binary).write(text.data(), 20);
    CHECK(run("or-verify --key0 " + k0 + " --key1 " + k1 + " --proof " + dir.file("trunc.bin")) == 2);
}

TEST_CASE("experiment reports are byte-identical for identical seeds") {
    TempDir dir;
    std::string a = dir.file("a.json"), b = dir.file("b.json"), c = dir.file("c.json");
    std::string args = "exp theorem1 --q 1 --trials 2 --seed 9 --out ";
    CHECK(run(args + a) == 0);
    CHECK(run(args + b) == 0);
    CHECK(strip_wall_clock(slurp(a)) == strip_wall_clock(slurp(b)));
    CHECK(run("exp theorem1 --q 1 --trials 2 --seed 10 --out " + c) == 0);
    CHECK(strip_wall_clock(slurp(a)) != strip_wall_clock(slurp(c)));
}

TEST_CASE("experiment runners emit the documented schemas") {
    TempDir dir;
    std::string csv = dir.file("grover.csv");
    CHECK(run("exp grover --C 16 --gamma 4 --q 1 --samples 10 --seed 3 --format csv --out " + csv) == 0);
    std::string text = slurp(csv);
    CHECK(text.rfind("kind,q,n,C,gamma,samples,mean_p1,mean_p2,bound,precond_ok,seed\n", 0) == 0);

    CHECK(run("exp grover-circuit --n-max 8 --q-max 3 --seed 0 --out " + dir.file("gc.json")) == 0);
    CHECK(run("exp lemma1 --q 1 --X 2 --Y 2 --trials 2 --seed 5 --out " + dir.file("l1.json")) == 0);
    CHECK(slurp(dir.file("l1.json")).find("\"min_margin\"") != std::string::npos);

    // randomized experiments demand a seed
    CHECK(run("exp lemma1 --q 1 --trials 2") == 2);
    // --help is not an error
    CHECK(run("--help") == 0);
}
